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

#include "llm/schema.hpp"

#include "common/errors.hpp"

namespace agentopic::llm {

using nlohmann::json;

namespace {

std::optional<json> try_parse(std::string_view s) {
  auto j = json::parse(s.begin(), s.end(), nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  return j;
}

enum class Kind { kString, kArray, kBool, kStringOrNull, kObject };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::kString: return "string";
    case Kind::kArray: return "array";
    case Kind::kBool: return "boolean";
    case Kind::kStringOrNull: return "string or null";
    case Kind::kObject: return "object";
  }
  return "?";
}

bool matches(const json& v, Kind k) {
  switch (k) {
    case Kind::kString: return v.is_string();
    case Kind::kArray: return v.is_array();
    case Kind::kBool: return v.is_boolean();
    case Kind::kStringOrNull: return v.is_string() || v.is_null();
    case Kind::kObject: return v.is_object();
  }
  return false;
}

class Checker {
 public:
  std::vector<std::string> errors;

  // Returns the value when present and well-typed.
  const json* require(const json& obj, const std::string& path, const char* key, Kind kind) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      errors.push_back(prefix(path) + "missing key: " + key);
      return nullptr;
    }
    if (!matches(*it, kind)) {
      errors.push_back(prefix(path) + "wrong type for key " + key + ": expected " + kind_name(kind));
      return nullptr;
    }
    return &*it;
  }

  void string_array(const json& arr, const std::string& path) {
    for (std::size_t i = 0; i < arr.size(); ++i)
      if (!arr[i].is_string())
        errors.push_back(path + "[" + std::to_string(i) + "]: expected string");
  }

  template <typename Fn>
  void object_array(const json& arr, const std::string& path, Fn&& each) {
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = path + "[" + std::to_string(i) + "]";
      if (!arr[i].is_object()) {
        errors.push_back(p + ": expected object");
        continue;
      }
      each(arr[i], p);
    }
  }

 private:
  static std::string prefix(const std::string& path) { return path.empty() ? "" : path + ": "; }
};

}  // namespace

std::optional<json> extract_json_block(std::string_view text) {
  std::size_t pos = 0;
  while (true) {
    auto open = text.find("```", pos);
    if (open == std::string_view::npos) break;
    auto body = text.find('\n', open + 3);
    if (body == std::string_view::npos) break;
    auto close = text.find("```", body + 1);
    if (close == std::string_view::npos) break;
    if (auto j = try_parse(text.substr(body + 1, close - body - 1))) return j;
    pos = close + 3;
  }
  if (auto j = try_parse(text)) return j;
  auto b = text.find('{');
  auto e = text.rfind('}');
  if (b != std::string_view::npos && e != std::string_view::npos && e > b)
    return try_parse(text.substr(b, e - b + 1));
  return std::nullopt;
}

std::vector<std::string> validate_schema(const std::string& schema_id, const json& v) {
  Checker c;
  if (!v.is_object()) return {"reply is not an object"};

  if (schema_id == kAssignmentSchema) {
    c.require(v, "", "doc_id", Kind::kString);
    if (auto topics = c.require(v, "", "topics", Kind::kArray))
      c.object_array(*topics, "topics", [&](const json& t, const std::string& p) {
        c.require(t, p, "name", Kind::kString);
        c.require(t, p, "explanation", Kind::kString);
      });
  } else if (schema_id == kGroupingSchema) {
    if (auto groups = c.require(v, "", "groups", Kind::kArray))
      c.object_array(*groups, "groups", [&](const json& g, const std::string& p) {
        c.require(g, p, "name", Kind::kString);
        c.require(g, p, "description", Kind::kString);
        if (auto m = c.require(g, p, "members", Kind::kArray)) c.string_array(*m, p + ".members");
      });
  } else if (schema_id == kHierarchySchema) {
    if (auto nodes = c.require(v, "", "nodes", Kind::kArray))
      c.object_array(*nodes, "nodes", [&](const json& n, const std::string& p) {
        c.require(n, p, "name", Kind::kString);
        c.require(n, p, "description", Kind::kString);
        c.require(n, p, "parent", Kind::kStringOrNull);
        if (auto l = c.require(n, p, "leaves", Kind::kArray)) c.string_array(*l, p + ".leaves");
      });
  } else if (schema_id == kRelevanceSchema) {
    if (auto verdict = c.require(v, "", "verdict", Kind::kString)) {
      auto s = verdict->get<std::string>();
      if (s != "ok" && s != "reject")
        c.errors.push_back("invalid value for key verdict: expected one of ok|reject");
    }
    if (auto e = c.require(v, "", "errors", Kind::kArray)) c.string_array(*e, "errors");
  } else {
    throw InvalidArgument("unknown response schema: " + schema_id);
  }
  return c.errors;
}

StructuredReply parse_reply(std::string raw_text, const std::string& schema_id) {
  StructuredReply reply;
  reply.raw_text = std::move(raw_text);
  auto block = extract_json_block(reply.raw_text);
  if (!block) {
    reply.format_errors.push_back("no well-formed json block found");
    return reply;
  }
  reply.format_errors = validate_schema(schema_id, *block);
  if (reply.format_errors.empty()) reply.parsed = std::move(*block);
  return reply;
}

}  // namespace agentopic::llm
