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

#include "llm/prompt.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "common/errors.hpp"
#include "common/resources.hpp"
#include "common/text.hpp"

namespace agentopic::llm {

namespace {

constexpr const char* kBundledTemplates[] = {
    "identify_seeded", "identify_generative", "review_topics", "group_topics", "build_hierarchy",
};

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::kInternal, "sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

std::string request_digest(const PromptRequest& r) {
  nlohmann::json vars(nlohmann::json::value_t::object);
  for (const auto& [k, v] : r.variables) vars[k] = v;
  nlohmann::json canonical = nlohmann::json::array({r.template_id, vars, r.response_schema_id});
  return sha256_hex(canonical.dump());
}

std::string embedding_digest(std::string_view t) {
  return sha256_hex(nlohmann::json::array({"embed", std::string(t)}).dump());
}

std::vector<std::string> placeholders(std::string_view tmpl) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = tmpl.find("{{", pos)) != std::string_view::npos) {
    auto end = tmpl.find("}}", pos + 2);
    if (end == std::string_view::npos) break;
    auto name = text::trim(tmpl.substr(pos + 2, end - pos - 2));
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
    pos = end + 2;
  }
  return out;
}

TemplateStore TemplateStore::bundled() {
  TemplateStore s;
  for (const char* id : kBundledTemplates) {
    auto body = bundled_resource(std::string("prompts/") + id + ".txt");
    if (!body) throw Error(ErrorCode::kInternal, std::string("missing bundled template ") + id);
    s.set(id, std::string(*body));
  }
  return s;
}

TemplateStore TemplateStore::with_overrides(const std::string& dir) {
  namespace fs = std::filesystem;
  TemplateStore s = bundled();
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw FileNotFound(dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    s.set(entry.path().stem().string(), text::read_file(entry.path().string()));
  }
  return s;
}

void TemplateStore::set(std::string id, std::string body) { templates_[std::move(id)] = std::move(body); }

const std::string& TemplateStore::get(const std::string& id) const {
  auto it = templates_.find(id);
  if (it == templates_.end()) throw InvalidArgument("unknown prompt template: " + id);
  return it->second;
}

std::string TemplateStore::render(const PromptRequest& request) const {
  const std::string& tmpl = get(request.template_id);
  std::string out;
  std::size_t pos = 0;
  while (true) {
    auto open = tmpl.find("{{", pos);
    if (open == std::string::npos) break;
    auto close = tmpl.find("}}", open + 2);
    if (close == std::string::npos) break;
    out.append(tmpl, pos, open - pos);
    auto name = text::trim(std::string_view(tmpl).substr(open + 2, close - open - 2));
    auto it = request.variables.find(name);
    if (it == request.variables.end())
      throw InvalidArgument("unbound placeholder in " + request.template_id + ": " + name);
    out += it->second;
    pos = close + 2;
  }
  out.append(tmpl, pos, std::string::npos);
  return out;
}

}  // namespace agentopic::llm
