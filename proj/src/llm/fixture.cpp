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

#include "llm/fixture.hpp"

#include "common/text.hpp"

namespace agentopic::llm {

using nlohmann::json;

FixtureRecord make_chat_record(const PromptRequest& request, const std::string& reply) {
  json vars(json::value_t::object);
  for (const auto& [k, v] : request.variables) vars[k] = v;
  return {request_digest(request), "chat",
          json{{"template_id", request.template_id},
               {"variables", vars},
               {"response_schema_id", request.response_schema_id}},
          reply};
}

FixtureRecord make_embed_record(std::string_view t, const std::vector<double>& vector) {
  return {embedding_digest(t), "embed", json{{"text", std::string(t)}}, vector};
}

std::string format_record(const FixtureRecord& r) {
  return json{{"digest", r.digest}, {"kind", r.kind}, {"request", r.request}, {"reply", r.reply}}
      .dump();
}

FixtureWriter::FixtureWriter(const std::string& path) : out_(path, std::ios::app | std::ios::binary) {
  if (!out_) throw IoError("cannot open fixture sink for appending: " + path);
}

void FixtureWriter::append(const FixtureRecord& record) {
  std::lock_guard lock(mu_);
  if (!written_.insert(record.kind + ":" + record.digest).second) return;
  out_ << format_record(record) << '\n';
  out_.flush();
  if (!out_) throw IoError("fixture append failed");
}

std::shared_ptr<ReplayBackend> ReplayBackend::from_file(const std::string& path) {
  return from_text(text::read_file(path));
}

std::shared_ptr<ReplayBackend> ReplayBackend::from_text(const std::string& content) {
  auto backend = std::make_shared<ReplayBackend>();
  auto lines = text::split(content, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = text::trim(lines[i]);
    if (line.empty()) continue;
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("digest") || !j.contains("kind") ||
        !j.contains("reply") || !j["digest"].is_string() || !j["kind"].is_string())
      throw ParseError(i + 1, "invalid fixture record");
    FixtureRecord r{j["digest"].get<std::string>(), j["kind"].get<std::string>(),
                    j.value("request", json()), j["reply"]};
    if (r.kind == "chat" && !r.reply.is_string()) throw ParseError(i + 1, "chat reply must be a string");
    if (r.kind == "embed" && !r.reply.is_array()) throw ParseError(i + 1, "embed reply must be an array");
    backend->records_.emplace(r.kind + ":" + r.digest, std::move(r));
  }
  return backend;
}

std::string ReplayBackend::chat(const PromptRequest& request, std::string_view) {
  auto digest = request_digest(request);
  auto it = records_.find("chat:" + digest);
  if (it == records_.end()) throw FixtureMiss(digest);
  return it->second.reply.get<std::string>();
}

std::vector<double> ReplayBackend::embed(std::string_view t) {
  auto digest = embedding_digest(t);
  auto it = records_.find("embed:" + digest);
  if (it == records_.end()) throw FixtureMiss(digest);
  return it->second.reply.get<std::vector<double>>();
}

RecordingBackend::RecordingBackend(std::shared_ptr<ProviderBackend> inner, const std::string& sink_path)
    : inner_(std::move(inner)), writer_(sink_path) {}

std::string RecordingBackend::chat(const PromptRequest& request, std::string_view prompt) {
  auto reply = inner_->chat(request, prompt);
  writer_.append(make_chat_record(request, reply));
  return reply;
}

std::vector<double> RecordingBackend::embed(std::string_view t) {
  auto v = inner_->embed(t);
  writer_.append(make_embed_record(t, v));
  return v;
}

}  // namespace agentopic::llm
