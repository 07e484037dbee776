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

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agentopic::llm {

// Known reply shapes.
inline constexpr const char* kAssignmentSchema = "assignment";
inline constexpr const char* kGroupingSchema = "grouping";
inline constexpr const char* kHierarchySchema = "hierarchy";
inline constexpr const char* kRelevanceSchema = "relevance";

struct StructuredReply {
  std::string raw_text;
  std::optional<nlohmann::json> parsed;
  std::vector<std::string> format_errors;

  bool ok() const noexcept { return parsed.has_value(); }
};

// Returns the payload of the first fenced block that is well-formed JSON.
// Falls back to the whole text, then to the outermost {...} span.
std::optional<nlohmann::json> extract_json_block(std::string_view text);

// Checks required keys, value types and enum membership. Empty when valid.
std::vector<std::string> validate_schema(const std::string& schema_id, const nlohmann::json& value);

StructuredReply parse_reply(std::string raw_text, const std::string& schema_id);

}  // namespace agentopic::llm
