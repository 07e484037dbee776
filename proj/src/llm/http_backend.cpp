// Copyright 2026 The Agentopic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "llm/http_backend.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

namespace agentopic::llm {

using nlohmann::json;

struct HttpBackend::Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path below the origin, no trailing slash
};

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)), endpoint_(std::make_unique<Endpoint>()) {
  const auto& url = config_.base_url;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw InvalidArgument("base url lacks a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  endpoint_->origin = url.substr(0, path_start);
  endpoint_->prefix = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!endpoint_->prefix.empty() && endpoint_->prefix.back() == '/') endpoint_->prefix.pop_back();
}

HttpBackend::~HttpBackend() = default;

namespace {

json post(const std::string& origin, const std::string& path, const std::string& api_key,
          int timeout_seconds, const json& body) {
  httplib::Client client(origin);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_write_timeout(timeout_seconds, 0);
  httplib::Headers headers;
  if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) throw TransportFailure("request to " + origin + path + " failed: " + httplib::to_string(res.error()), true);
  if (res->status == 429) throw TransportFailure("HTTP 429 from " + path, true, true);
  if (res->status >= 500) throw TransportFailure("HTTP " + std::to_string(res->status) + " from " + path, true);
  if (res->status < 200 || res->status >= 300)
    throw TransportFailure("HTTP " + std::to_string(res->status) + " from " + path + ": " + res->body, false);
  auto j = json::parse(res->body, nullptr, false);
  if (j.is_discarded()) throw TransportFailure("malformed response body from " + path, true);
  return j;
}

}  // namespace

std::string HttpBackend::chat(const PromptRequest& request, std::string_view prompt) {
  json body = {{"model", config_.chat_model},
               {"messages", json::array({{{"role", "user"}, {"content", std::string(prompt)}}})},
               {"temperature", request.temperature},
               {"max_tokens", request.max_output_tokens}};
  auto j = post(endpoint_->origin, endpoint_->prefix + "/chat/completions", config_.api_key,
                config_.timeout_seconds, body);
  try {
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw TransportFailure(std::string("unexpected chat response shape: ") + e.what(), true);
  }
}

std::vector<double> HttpBackend::embed(std::string_view t) {
  json body = {{"model", config_.embedding_model}, {"input", std::string(t)}};
  auto j = post(endpoint_->origin, endpoint_->prefix + "/embeddings", config_.api_key,
                config_.timeout_seconds, body);
  try {
    return j.at("data").at(0).at("embedding").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw TransportFailure(std::string("unexpected embedding response shape: ") + e.what(), true);
  }
}

}  // namespace agentopic::llm
