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

#include "hierarchy/hierarchy.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "common/errors.hpp"
#include "common/text.hpp"

namespace agentopic::hierarchy {

namespace {

Violation make(const char* rule, const std::string& detail) {
  return {rule, std::string(rule) + ": " + detail};
}

std::string path_string(const std::vector<const HierarchyNode*>& path) {
  std::vector<std::string> names;
  for (auto* n : path) names.push_back(n->name);
  return text::join(names, " > ");
}

void check_siblings(const std::vector<HierarchyNode>& siblings, const std::string& where,
                    std::vector<Violation>& out) {
  std::set<std::string> seen, reported;
  for (const auto& n : siblings) {
    auto f = text::fold(n.name);
    if (!seen.insert(f).second && reported.insert(f).second)
      out.push_back(make(kRuleDuplicateSibling, n.name + " under " + where));
  }
}

struct Walker {
  const TopicHierarchy& h;
  std::vector<Violation>& out;
  std::map<std::string, std::size_t> leaf_counts;
  std::vector<std::string> leaf_order;
  std::vector<const HierarchyNode*> path;

  void visit(const HierarchyNode& n) {
    path.push_back(&n);
    const std::size_t level = path.size();
    const auto fname = text::fold(n.name);
    if (fname.empty()) out.push_back(make(kRuleEmptyName, "at " + path_string(path)));
    if (static_cast<int>(level) > h.max_depth)
      out.push_back(make(kRuleDepth, n.name + " at level " + std::to_string(level) + " (max " +
                                         std::to_string(h.max_depth) + ")"));
    if (level >= 2) {
      const auto& parent = *path[level - 2];
      if (!fname.empty() && text::fold(parent.name) == fname) {
        out.push_back(make(kRuleRedundantChild, n.name + " under " + parent.name));
      } else if (!fname.empty()) {
        // Nearest ancestor with the same identity closes the cycle.
        for (std::size_t i = level - 2; i-- > 0;) {
          if (text::fold(path[i]->name) == fname) {
            std::vector<const HierarchyNode*> loop(path.begin() + static_cast<std::ptrdiff_t>(i), path.end());
            std::vector<std::string> names;
            for (auto* p : loop) names.push_back(p->name);
            out.push_back(make(kRuleCycle, text::join(names, " -> ")));
            break;
          }
        }
      }
    }
    for (const auto& t : n.leaf_topics) {
      auto ft = text::fold(t);
      if (ft.empty()) {
        out.push_back(make(kRuleEmptyLeaf, "under " + n.name));
        continue;
      }
      if (leaf_counts[ft]++ == 0) leaf_order.push_back(t);
    }
    check_siblings(n.children, n.name, out);
    for (const auto& c : n.children) visit(c);
    path.pop_back();
  }
};

void collect_leaves(const HierarchyNode& n, std::vector<std::string>& out) {
  out.insert(out.end(), n.leaf_topics.begin(), n.leaf_topics.end());
  for (const auto& c : n.children) collect_leaves(c, out);
}

std::size_t node_depth(const HierarchyNode& n) {
  std::size_t d = 0;
  for (const auto& c : n.children) d = std::max(d, node_depth(c));
  return d + 1;
}

std::string unique_name(const std::string& base, const std::set<std::string>& taken) {
  for (int k = 2;; ++k) {
    std::string candidate = base + " (" + std::to_string(k) + ")";
    if (!taken.count(text::fold(candidate))) return candidate;
  }
}

// One pre-order merge pass. Returns true when anything changed.
bool merge_pass(HierarchyNode& node, std::vector<std::string>* notes) {
  bool merged_here = false;
  const auto fname = text::fold(node.name);
  for (std::size_t i = 0; i < node.children.size();) {
    if (text::fold(node.children[i].name) != fname) {
      ++i;
      continue;
    }
    HierarchyNode child = std::move(node.children[i]);
    node.children.erase(node.children.begin() + static_cast<std::ptrdiff_t>(i));
    node.children.insert(node.children.begin() + static_cast<std::ptrdiff_t>(i),
                         std::make_move_iterator(child.children.begin()),
                         std::make_move_iterator(child.children.end()));
    for (auto& t : child.leaf_topics) {
      bool present = std::any_of(node.leaf_topics.begin(), node.leaf_topics.end(),
                                 [&](const std::string& x) { return text::fold(x) == text::fold(t); });
      if (!present) node.leaf_topics.push_back(std::move(t));
    }
    if (!child.description.empty() && child.description != node.description)
      node.description = node.description.empty() ? child.description : node.description + " | " + child.description;
    merged_here = true;
  }
  if (merged_here) {
    std::set<std::string> taken;
    for (const auto& c : node.children) taken.insert(text::fold(c.name));
    std::set<std::string> seen;
    for (auto& c : node.children) {
      if (seen.insert(text::fold(c.name)).second) continue;
      std::string renamed = unique_name(c.name, taken);
      if (notes) notes->push_back("renamed sibling " + c.name + " to " + renamed + " under " + node.name);
      c.name = renamed;
      taken.insert(text::fold(renamed));
      seen.insert(text::fold(renamed));
    }
  }
  bool changed = merged_here;
  for (auto& c : node.children) changed = merge_pass(c, notes) || changed;
  return changed;
}

}  // namespace

std::vector<Violation> validate(const TopicHierarchy& h) {
  std::vector<Violation> out;
  if (h.max_depth < 1) out.push_back(make(kRuleBadMaxDepth, std::to_string(h.max_depth)));
  if (h.roots.empty()) out.push_back(make(kRuleEmptyHierarchy, "no root nodes"));
  check_siblings(h.roots, "the root level", out);
  Walker w{h, out, {}, {}, {}};
  for (const auto& r : h.roots) w.visit(r);
  for (const auto& t : w.leaf_order)
    if (w.leaf_counts[text::fold(t)] > 1) out.push_back(make(kRuleDuplicateLeaf, t));
  return out;
}

std::vector<std::string> violation_messages(const std::vector<Violation>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.message);
  return out;
}

TopicHierarchy prune_redundant(const TopicHierarchy& h, std::vector<std::string>* notes) {
  TopicHierarchy out = h;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& r : out.roots) changed = merge_pass(r, notes) || changed;
  }
  return out;
}

std::vector<std::string> leaf_topics(const TopicHierarchy& h) {
  std::vector<std::string> out;
  for (const auto& r : h.roots) collect_leaves(r, out);
  return out;
}

std::size_t depth(const TopicHierarchy& h) {
  std::size_t d = 0;
  for (const auto& r : h.roots) d = std::max(d, node_depth(r));
  return d;
}

HierarchyStats stats(const TopicHierarchy& h) {
  auto v = validate(h);
  if (!v.empty()) throw InvalidHierarchy(violation_messages(v));
  HierarchyStats s;
  auto leaves = leaf_topics(h);
  s.topic_count = std::set<std::string>(leaves.begin(), leaves.end()).size();
  s.level_count = depth(h);
  s.root_count = h.roots.size();
  for (const auto& r : h.roots) s.branch_counts[r.name] = r.children.size();
  return s;
}

}  // namespace agentopic::hierarchy
