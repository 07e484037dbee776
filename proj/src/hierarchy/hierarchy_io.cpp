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

#include <nlohmann/json.hpp>

#include "common/errors.hpp"
#include "hierarchy/hierarchy.hpp"

namespace agentopic::hierarchy {

using nlohmann::json;

namespace {

json node_to_json(const HierarchyNode& n) {
  json children = json::array();
  for (const auto& c : n.children) children.push_back(node_to_json(c));
  return json{{"name", n.name},
              {"description", n.description},
              {"children", children},
              {"leaf_topics", n.leaf_topics}};
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

struct DotWriter {
  std::string out;
  int next_node = 0;
  int next_leaf = 0;

  std::string visit(const HierarchyNode& n) {
    std::string id = "n" + std::to_string(next_node++);
    out += "  " + id + " [label=\"" + dot_escape(n.name) + "\"];\n";
    for (const auto& t : n.leaf_topics) {
      std::string leaf = "t" + std::to_string(next_leaf++);
      out += "  " + leaf + " [label=\"" + dot_escape(t) + "\", shape=box];\n";
      out += "  " + id + " -> " + leaf + " [style=dashed];\n";
    }
    for (const auto& c : n.children) {
      std::string child = visit(c);
      out += "  " + id + " -> " + child + ";\n";
    }
    return id;
  }
};

// Shape errors carry no byte offset; they are reported against line 1 with
// the JSON path in the reason.
[[noreturn]] void shape_error(const std::string& path, const std::string& reason) {
  throw ParseError(1, path + ": " + reason);
}

std::string string_at(const json& obj, const char* key, const std::string& path, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) shape_error(path, std::string("missing key ") + key);
    return {};
  }
  if (!it->is_string()) shape_error(path, std::string("key ") + key + " must be a string");
  return it->get<std::string>();
}

HierarchyNode node_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) shape_error(path, "node must be an object");
  HierarchyNode n;
  n.name = string_at(j, "name", path, true);
  n.description = string_at(j, "description", path, false);
  if (auto it = j.find("leaf_topics"); it != j.end()) {
    if (!it->is_array()) shape_error(path, "leaf_topics must be an array");
    for (const auto& t : *it) {
      if (!t.is_string()) shape_error(path, "leaf_topics entries must be strings");
      n.leaf_topics.push_back(t.get<std::string>());
    }
  }
  if (auto it = j.find("children"); it != j.end()) {
    if (!it->is_array()) shape_error(path, "children must be an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      n.children.push_back(node_from_json((*it)[i], path + ".children[" + std::to_string(i) + "]"));
  }
  return n;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

std::string export_hierarchy(const TopicHierarchy& h, ExportFormat format) {
  auto v = validate(h);
  if (!v.empty()) throw InvalidHierarchy(violation_messages(v));
  if (format == ExportFormat::kStructured) {
    json roots = json::array();
    for (const auto& r : h.roots) roots.push_back(node_to_json(r));
    return json{{"max_depth", h.max_depth}, {"roots", roots}}.dump(2) + "\n";
  }
  DotWriter w;
  w.out = "digraph topic_hierarchy {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  for (const auto& r : h.roots) w.visit(r);
  w.out += "}\n";
  return w.out;
}

TopicHierarchy parse_structured(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!j.is_object()) shape_error("$", "document must be an object");
  TopicHierarchy h;
  if (auto it = j.find("max_depth"); it != j.end()) {
    if (!it->is_number_integer()) shape_error("$", "max_depth must be an integer");
    h.max_depth = it->get<int>();
  }
  auto roots = j.find("roots");
  if (roots == j.end() || !roots->is_array()) shape_error("$", "missing array roots");
  for (std::size_t i = 0; i < roots->size(); ++i)
    h.roots.push_back(node_from_json((*roots)[i], "roots[" + std::to_string(i) + "]"));
  return h;
}

TopicHierarchy import_hierarchy(const std::string& text) {
  auto h = parse_structured(text);
  auto v = validate(h);
  if (!v.empty()) throw InvalidHierarchy(violation_messages(v));
  return h;
}

}  // namespace agentopic::hierarchy
