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

#include <gtest/gtest.h>

#include "common/errors.hpp"
#include "hierarchy/hierarchy.hpp"

namespace agentopic::hierarchy {
namespace {

HierarchyNode node(std::string name, std::vector<HierarchyNode> children = {},
                   std::vector<std::string> leaves = {}, std::string description = "") {
  return {std::move(name), std::move(description), std::move(children), std::move(leaves)};
}

TopicHierarchy tree(std::vector<HierarchyNode> roots, int max_depth = kDefaultMaxDepth) {
  return {std::move(roots), max_depth};
}

TopicHierarchy sample() {
  return tree({node("Economy", {node("Markets", {}, {"Stocks", "Currency"}), node("Trade", {}, {"Tariffs"})}),
               node("Sport", {node("Football", {}, {"Transfers"})}, {"Olympics"})});
}

std::vector<std::string> messages(const TopicHierarchy& h) { return violation_messages(validate(h)); }

TEST(HierarchyValidateTest, SampleIsValid) { EXPECT_TRUE(validate(sample()).empty()); }

TEST(HierarchyValidateTest, EmptyHierarchy) {
  EXPECT_EQ(messages(tree({})), std::vector<std::string>{"empty hierarchy: no root nodes"});
}

TEST(HierarchyValidateTest, BadMaxDepth) {
  auto h = sample();
  h.max_depth = 0;
  auto v = validate(h);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].rule, kRuleBadMaxDepth);
}

TEST(HierarchyValidateTest, RedundantSelfNamedChild) {
  auto h = tree({node("Tech", {node("tech", {}, {"Phones"})})});
  EXPECT_EQ(messages(h), std::vector<std::string>{"redundant self-named child: tech under Tech"});
}

TEST(HierarchyValidateTest, CycleThroughAncestor) {
  auto h = tree({node("A", {node("B", {node("a", {}, {"x"})})})});
  EXPECT_EQ(messages(h), std::vector<std::string>{"cycle: A -> B -> a"});
}

TEST(HierarchyValidateTest, DepthExceeded) {
  auto h = tree({node("L1", {node("L2", {node("L3", {}, {"x"})})})}, 2);
  EXPECT_EQ(messages(h), std::vector<std::string>{"depth exceeded: L3 at level 3 (max 2)"});
  h.max_depth = 3;
  EXPECT_TRUE(validate(h).empty());
}

TEST(HierarchyValidateTest, DuplicateLeafAcrossBranches) {
  auto h = tree({node("A", {}, {"Shared"}), node("B", {}, {"shared"})});
  EXPECT_EQ(messages(h), std::vector<std::string>{"duplicate leaf placement: Shared"});
}

TEST(HierarchyValidateTest, DuplicateSiblingsReportedOnce) {
  auto h = tree({node("A", {node("X"), node("x"), node("X")})});
  EXPECT_EQ(messages(h), std::vector<std::string>{"duplicate sibling name: x under A"});
  auto roots = tree({node("R"), node("r")});
  EXPECT_EQ(messages(roots), std::vector<std::string>{"duplicate sibling name: r under the root level"});
}

TEST(HierarchyValidateTest, EmptyNamesAndLeaves) {
  auto h = tree({node("A", {node("  ")}, {""})});
  auto m = messages(h);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], "empty leaf topic: under A");
  EXPECT_EQ(m[1], "empty node name: at A >   ");
}

TEST(HierarchyValidateTest, ReportsEveryViolation) {
  auto h = tree({node("A", {node("A"), node("B", {node("A")})}, {"t"}), node("C", {}, {"t"})});
  auto v = validate(h);
  std::vector<std::string> rules;
  for (const auto& x : v) rules.push_back(x.rule);
  EXPECT_EQ(rules, (std::vector<std::string>{kRuleRedundantChild, kRuleCycle, kRuleDuplicateLeaf}));
}

TEST(HierarchyPruneTest, MergesSelfNamedChild) {
  auto h = tree({node("Tech", {node("tech", {node("Phones", {}, {"5G"})}, {"Gadgets", "Laptops"}, "consumer")},
                      {"Laptops"}, "technology")});
  std::vector<std::string> notes;
  auto p = prune_redundant(h, &notes);
  EXPECT_TRUE(notes.empty());
  ASSERT_EQ(p.roots.size(), 1u);
  const auto& t = p.roots[0];
  EXPECT_EQ(t.description, "technology | consumer");
  EXPECT_EQ(t.leaf_topics, (std::vector<std::string>{"Laptops", "Gadgets"}));
  ASSERT_EQ(t.children.size(), 1u);
  EXPECT_EQ(t.children[0].name, "Phones");
  EXPECT_TRUE(validate(p).empty());
}

TEST(HierarchyPruneTest, ChainCollapsesCompletely) {
  auto h = tree({node("A", {node("a", {node("A", {node("A", {}, {"deep"})})})})});
  auto p = prune_redundant(h);
  EXPECT_EQ(p, tree({node("A", {}, {"deep"})}));
}

TEST(HierarchyPruneTest, RenamesCollidingSiblings) {
  auto h = tree({node("A", {node("B", {}, {"x"}), node("A", {node("B", {}, {"y"})})})});
  std::vector<std::string> notes;
  auto p = prune_redundant(h, &notes);
  ASSERT_EQ(p.roots[0].children.size(), 2u);
  EXPECT_EQ(p.roots[0].children[0].name, "B");
  EXPECT_EQ(p.roots[0].children[1].name, "B (2)");
  EXPECT_EQ(notes, std::vector<std::string>{"renamed sibling B to B (2) under A"});
  EXPECT_TRUE(validate(p).empty());
}

TEST(HierarchyPruneTest, LeavesValidTreeUntouched) {
  std::vector<std::string> notes;
  EXPECT_EQ(prune_redundant(sample(), &notes), sample());
  EXPECT_TRUE(notes.empty());
}

TEST(HierarchyStatsTest, CountsSample) {
  auto s = stats(sample());
  EXPECT_EQ(s.topic_count, 5u);
  EXPECT_EQ(s.level_count, 2u);
  EXPECT_EQ(s.root_count, 2u);
  EXPECT_EQ(s.branch_counts.at("Economy"), 2u);
  EXPECT_EQ(s.branch_counts.at("Sport"), 1u);
}

TEST(HierarchyStatsTest, RejectsInvalid) {
  try {
    stats(tree({node("A", {node("A")})}));
    FAIL() << "expected InvalidHierarchy";
  } catch (const InvalidHierarchy& e) {
    EXPECT_EQ(e.violations(), std::vector<std::string>{"redundant self-named child: A under A"});
  }
}

TEST(HierarchyIoTest, StructuredRoundTrip) {
  auto h = sample();
  h.roots[0].description = "money \"and\" markets";
  h.max_depth = 4;
  auto text = export_hierarchy(h, ExportFormat::kStructured);
  EXPECT_EQ(import_hierarchy(text), h);
  EXPECT_EQ(export_hierarchy(import_hierarchy(text), ExportFormat::kStructured), text);
}

TEST(HierarchyIoTest, DotHasEdgesForEveryPair) {
  auto dot = export_hierarchy(tree({node("A", {node("B", {}, {"leaf \"q\""})})}), ExportFormat::kDot);
  EXPECT_EQ(dot,
            "digraph topic_hierarchy {\n"
            "  rankdir=LR;\n"
            "  node [shape=ellipse];\n"
            "  n0 [label=\"A\"];\n"
            "  n1 [label=\"B\"];\n"
            "  t0 [label=\"leaf \\\"q\\\"\", shape=box];\n"
            "  n1 -> t0 [style=dashed];\n"
            "  n0 -> n1;\n"
            "}\n");
}

TEST(HierarchyIoTest, ExportRejectsInvalid) {
  EXPECT_THROW(export_hierarchy(tree({}), ExportFormat::kDot), InvalidHierarchy);
}

TEST(HierarchyIoTest, ParseErrors) {
  EXPECT_THROW(parse_structured("{\"roots\": ["), ParseError);
  try {
    parse_structured("{\n\"roots\": [{\"description\": \"x\"}]}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("roots[0]"), std::string::npos);
  }
  try {
    parse_structured("{\n  \"roots\": [\n    oops\n  ]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(HierarchyIoTest, ImportValidatesButParseDoesNot) {
  std::string text = R"({"max_depth": 6, "roots": [{"name": "A", "children": [{"name": "A"}]}]})";
  EXPECT_NO_THROW(parse_structured(text));
  EXPECT_THROW(import_hierarchy(text), InvalidHierarchy);
}

}  // namespace
}  // namespace agentopic::hierarchy
