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

#include "agents/validators.hpp"

#include <set>

#include "common/text.hpp"

namespace agentopic::agents {

std::vector<std::string> check_assignment(const TopicAssignment& a, Mode mode, const SeedSet* seeds,
                                          const std::string& expected_doc_id) {
  std::vector<std::string> errors;
  if (!expected_doc_id.empty() && a.doc_id != expected_doc_id)
    errors.push_back("doc_id mismatch: expected " + expected_doc_id + ", got " + a.doc_id);
  if (a.topics.empty()) {
    errors.push_back("no topics");
    return errors;
  }
  std::set<std::string> seen;
  for (const auto& t : a.topics) {
    const auto name = text::trim(t.name);
    if (name.empty()) {
      errors.push_back("empty topic name");
      continue;
    }
    if (text::trim(t.explanation).empty()) errors.push_back("empty explanation for topic: " + name);
    if (!seen.insert(text::fold(name)).second) errors.push_back("duplicate topic name: " + name);
    if (mode == Mode::kSeeded && seeds && !seeds->match(name))
      errors.push_back("label not in seed set: " + name);
  }
  if (mode == Mode::kSeeded && a.topics.size() != 1)
    errors.push_back("seeded mode expects exactly one label, got " + std::to_string(a.topics.size()));
  return errors;
}

std::vector<std::string> check_groups(const std::vector<TopicGroup>& groups,
                                      const std::vector<std::string>& topic_names) {
  std::vector<std::string> errors;
  std::set<std::string> topics, covered, group_names;
  for (const auto& t : topic_names) topics.insert(text::fold(t));

  for (const auto& g : groups) {
    const auto name = text::trim(g.name);
    if (name.empty()) errors.push_back("empty group name");
    else if (!group_names.insert(text::fold(name)).second) errors.push_back("duplicate group name: " + name);
    const std::string label = name.empty() ? "(unnamed)" : name;
    if (text::trim(g.description).empty()) errors.push_back("empty description for group: " + label);
    if (g.members.empty()) errors.push_back("empty group: " + label);
    std::set<std::string> members;
    for (const auto& m : g.members) {
      auto f = text::fold(m);
      if (!members.insert(f).second) errors.push_back("duplicate member in group " + label + ": " + m);
      if (!topics.count(f)) errors.push_back("unknown member: " + m);
      covered.insert(f);
    }
  }
  for (const auto& t : topic_names)
    if (!covered.count(text::fold(t))) errors.push_back("missing topic: " + t);
  return errors;
}

}  // namespace agentopic::agents
