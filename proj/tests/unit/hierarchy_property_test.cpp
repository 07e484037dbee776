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

// Randomized checks over generated hierarchies. Each generated tree is valid
// by construction (globally unique node and leaf names, bounded depth);
// violations are then planted at known places so the expected report is known
// without re-running the validator's logic.

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "common/text.hpp"
#include "hierarchy/hierarchy.hpp"

namespace agentopic::hierarchy {
namespace {

constexpr int kCases = 500;

struct Generator {
  std::mt19937_64 rng;
  int next_node = 0;
  int next_leaf = 0;

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  HierarchyNode make(int level, int max_level) {
    HierarchyNode n;
    n.name = "Node " + std::to_string(next_node++);
    n.description = uniform(0, 1) ? "about " + n.name : "";
    int leaves = uniform(0, 3);
    for (int i = 0; i < leaves; ++i) n.leaf_topics.push_back("topic " + std::to_string(next_leaf++));
    if (level < max_level) {
      int kids = uniform(0, 3);
      for (int i = 0; i < kids; ++i) n.children.push_back(make(level + 1, max_level));
    }
    if (n.leaf_topics.empty() && n.children.empty()) n.leaf_topics.push_back("topic " + std::to_string(next_leaf++));
    return n;
  }

  TopicHierarchy tree() {
    TopicHierarchy h;
    int max_level = uniform(1, 5);
    int roots = uniform(1, 4);
    for (int i = 0; i < roots; ++i) h.roots.push_back(make(1, max_level));
    h.max_depth = static_cast<int>(depth(h)) + 1;
    return h;
  }
};

// Every node with the chain of ancestors leading to it.
void collect(const HierarchyNode& n, std::vector<const HierarchyNode*>& path,
             std::vector<std::vector<const HierarchyNode*>>& out) {
  path.push_back(&n);
  out.push_back(path);
  for (auto& c : n.children) collect(c, path, out);
  path.pop_back();
}

std::vector<std::vector<const HierarchyNode*>> all_paths(const TopicHierarchy& h) {
  std::vector<std::vector<const HierarchyNode*>> out;
  std::vector<const HierarchyNode*> path;
  for (auto& r : h.roots) collect(r, path, out);
  return out;
}

std::string shout(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::set<std::string> folded_leaves(const TopicHierarchy& h) {
  std::set<std::string> out;
  for (const auto& t : leaf_topics(h)) out.insert(text::fold(t));
  return out;
}

std::map<std::string, int> rule_counts(const std::vector<Violation>& v) {
  std::map<std::string, int> out;
  for (const auto& x : v) ++out[x.rule];
  return out;
}

TEST(HierarchyPropertyTest, GeneratedTreesAreValidAndRoundTrip) {
  Generator g{std::mt19937_64(20260101)};
  for (int i = 0; i < kCases; ++i) {
    auto h = g.tree();
    ASSERT_TRUE(validate(h).empty()) << "case " << i;
    for (auto fmt : {ExportFormat::kStructured}) EXPECT_EQ(import_hierarchy(export_hierarchy(h, fmt)), h);
    EXPECT_EQ(prune_redundant(h), h);
    auto s = stats(h);
    EXPECT_EQ(s.topic_count, leaf_topics(h).size());
    EXPECT_EQ(s.root_count, h.roots.size());
    EXPECT_EQ(static_cast<int>(s.level_count), h.max_depth - 1);
  }
}

// Plants at most one child per node, after visiting the original children so
// no reference into the tree is held across a push.
struct Planter {
  Generator& g;
  std::string first_leaf;
  std::map<std::string, int> expected;
  std::vector<std::string> ancestors;

  void visit(HierarchyNode& n) {
    ancestors.push_back(n.name);
    for (auto& c : n.children) visit(c);
    ancestors.pop_back();
    int what = g.uniform(0, 3);
    if (what == 0) {
      n.children.push_back({shout(n.name), "", {}, {}});
      ++expected[kRuleRedundantChild];
    } else if (what == 1 && !ancestors.empty()) {
      auto pick = static_cast<std::size_t>(g.uniform(0, static_cast<int>(ancestors.size()) - 1));
      n.children.push_back({ancestors[pick], "", {}, {}});
      ++expected[kRuleCycle];
    } else if (what == 2 && g.uniform(0, 3) == 0) {
      n.children.push_back({"fresh " + n.name, "", {}, {first_leaf}});
      expected[kRuleDuplicateLeaf] = 1;
    }
  }
};

TEST(HierarchyPropertyTest, PlantedViolationsAreReportedExactly) {
  Generator g{std::mt19937_64(7)};
  int planted = 0;
  for (int i = 0; i < kCases; ++i) {
    auto h = g.tree();
    Planter p{g, leaf_topics(h).front(), {}, {}};
    for (auto& r : h.roots) p.visit(r);
    for (auto& [k, n] : p.expected) planted += n;
    EXPECT_EQ(rule_counts(validate(h)), p.expected) << "case " << i;
  }
  EXPECT_GT(planted, kCases);
}

TEST(HierarchyPropertyTest, DepthLimitFlagsEveryDeepNode) {
  Generator g{std::mt19937_64(99)};
  for (int i = 0; i < kCases; ++i) {
    auto h = g.tree();
    int limit = g.uniform(1, h.max_depth - 1);
    h.max_depth = limit;
    int deep = 0;
    for (const auto& p : all_paths(h))
      if (static_cast<int>(p.size()) > limit) ++deep;
    auto v = validate(h);
    EXPECT_EQ(static_cast<int>(v.size()), deep);
    for (const auto& x : v) EXPECT_EQ(x.rule, kRuleDepth);
  }
}

// Wraps random subtrees in self-named chains of length 1..3, moving the
// subtree's content into the innermost copy.
void wrap(Generator& g, HierarchyNode& n) {
  for (auto& c : n.children) wrap(g, c);
  if (g.uniform(0, 2)) return;
  HierarchyNode inner{n.name, n.description, std::move(n.children), std::move(n.leaf_topics)};
  n.children.clear();
  n.leaf_topics.clear();
  int chain = g.uniform(1, 3);
  for (int k = 1; k < chain; ++k) inner = HierarchyNode{k % 2 ? shout(n.name) : n.name, "", {inner}, {}};
  n.children.push_back(std::move(inner));
}

void wrap(Generator& g, TopicHierarchy& h) {
  for (auto& r : h.roots) wrap(g, r);
}

TEST(HierarchyPropertyTest, PruneRemovesRedundancyAndKeepsLeaves) {
  Generator g{std::mt19937_64(4242)};
  for (int i = 0; i < kCases; ++i) {
    auto h = g.tree();
    auto before = folded_leaves(h);
    wrap(g, h);
    h.max_depth = static_cast<int>(depth(h));
    ASSERT_EQ(folded_leaves(h), before);

    std::vector<std::string> notes;
    auto p = prune_redundant(h, &notes);
    auto counts = rule_counts(validate(p));
    EXPECT_EQ(counts[kRuleRedundantChild], 0) << "case " << i;
    EXPECT_TRUE(validate(p).empty()) << "case " << i;
    EXPECT_EQ(folded_leaves(p), before);
    EXPECT_EQ(leaf_topics(p).size(), before.size());
    EXPECT_EQ(prune_redundant(p), p);
    EXPECT_EQ(import_hierarchy(export_hierarchy(p, ExportFormat::kStructured)), p);
  }
}

}  // namespace
}  // namespace agentopic::hierarchy
