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

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace agentopic::llm {

struct PromptRequest {
  std::string template_id;
  std::map<std::string, std::string> variables;  // placeholder -> text
  std::string response_schema_id;
  double temperature = 0.0;
  int max_output_tokens = 1024;
};

// Stable replay key: SHA-256 over (template_id, variables sorted by name,
// schema id). Temperature and token limits are not part of the key.
std::string sha256_hex(std::string_view data);
std::string request_digest(const PromptRequest& request);
std::string embedding_digest(std::string_view text);

// Placeholders are written {{name}}. Each name is listed once, in order of
// first appearance.
std::vector<std::string> placeholders(std::string_view tmpl);

class TemplateStore {
 public:
  // The templates compiled into the library.
  static TemplateStore bundled();
  // Bundled templates overridden by every <id>.txt found in `dir`.
  static TemplateStore with_overrides(const std::string& dir);

  void set(std::string id, std::string body);
  bool contains(const std::string& id) const { return templates_.count(id) != 0; }
  const std::string& get(const std::string& id) const;

  // Throws InvalidArgument on an unknown template or an unbound placeholder.
  std::string render(const PromptRequest& request) const;

 private:
  std::map<std::string, std::string> templates_;
};

}  // namespace agentopic::llm
