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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace agentopic::hierarchy {

inline constexpr int kDefaultMaxDepth = 6;

// Nodes own their children; the parent of a node is the node that holds it.
// Internal nodes may carry leaf topics directly.
struct HierarchyNode {
  std::string name;
  std::string description;
  std::vector<HierarchyNode> children;
  std::vector<std::string> leaf_topics;

  bool operator==(const HierarchyNode&) const = default;
};

struct TopicHierarchy {
  std::vector<HierarchyNode> roots;
  int max_depth = kDefaultMaxDepth;

  bool operator==(const TopicHierarchy&) const = default;
};

// Violation rules reported by validate().
inline constexpr const char* kRuleEmptyHierarchy = "empty hierarchy";
inline constexpr const char* kRuleBadMaxDepth = "invalid max_depth";
inline constexpr const char* kRuleEmptyName = "empty node name";
inline constexpr const char* kRuleRedundantChild = "redundant self-named child";
inline constexpr const char* kRuleCycle = "cycle";
inline constexpr const char* kRuleDepth = "depth exceeded";
inline constexpr const char* kRuleDuplicateLeaf = "duplicate leaf placement";
inline constexpr const char* kRuleDuplicateSibling = "duplicate sibling name";
inline constexpr const char* kRuleEmptyLeaf = "empty leaf topic";

struct Violation {
  std::string rule;
  std::string message;  // "<rule>: <detail>"

  bool operator==(const Violation&) const = default;
};

// Node identity is the case-folded name, so a node named like one of its
// ancestors closes a cycle. A child named like its direct parent is reported
// as a redundant self-named child instead.
std::vector<Violation> validate(const TopicHierarchy& h);
std::vector<std::string> violation_messages(const std::vector<Violation>& v);

// Merges every child whose case-folded name equals its parent's into the
// parent, pre-order, until no such pair remains. The child's children take
// its place, its leaf topics are appended and its description is joined to
// the parent's with " | ". Sibling names that collide after a merge get a
// " (n)" suffix; each rename is appended to `notes` when given.
TopicHierarchy prune_redundant(const TopicHierarchy& h, std::vector<std::string>* notes = nullptr);

struct HierarchyStats {
  std::size_t topic_count = 0;
  std::size_t level_count = 0;
  std::size_t root_count = 0;
  std::map<std::string, std::size_t> branch_counts;  // root name -> direct children

  bool operator==(const HierarchyStats&) const = default;
};

// Throws InvalidHierarchy when validate() reports anything.
HierarchyStats stats(const TopicHierarchy& h);

// Leaf topics in pre-order.
std::vector<std::string> leaf_topics(const TopicHierarchy& h);
std::size_t depth(const TopicHierarchy& h);

enum class ExportFormat { kStructured, kDot };

// Structured: JSON document {"max_depth": n, "roots": [node...]} where a
// node is {"name", "description", "children", "leaf_topics"}.
// Dot: a digraph with one edge per parent-child pair; leaf topics are box
// nodes hung off their owner with dashed edges.
// Throws InvalidHierarchy when validate() reports anything.
std::string export_hierarchy(const TopicHierarchy& h, ExportFormat format);

// Reads the structured format without validating it. Throws ParseError.
TopicHierarchy parse_structured(const std::string& text);
// parse_structured followed by validate; throws InvalidHierarchy.
TopicHierarchy import_hierarchy(const std::string& text);

}  // namespace agentopic::hierarchy
