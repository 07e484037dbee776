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

#include <optional>
#include <string>
#include <vector>

#include "agents/types.hpp"
#include "corpus/corpus.hpp"
#include "hierarchy/hierarchy.hpp"
#include "llm/gateway.hpp"
#include "vecstore/vector_store.hpp"

namespace agentopic::agents {

struct AgentOptions {
  bool relevance_check = true;   // ask the review agent for relevance errors
  double merge_threshold = 0.95;  // cosine at which topics are merge candidates
  double temperature = 0.0;
  int max_output_tokens = 2048;
};

// Parses the flat node list of a hierarchy reply into a tree. Violations
// (duplicate or unknown names, cycles) are appended to `errors`; the returned
// hierarchy holds whatever was reachable from the parentless nodes.
hierarchy::TopicHierarchy hierarchy_from_nodes(const nlohmann::json& nodes, int max_depth,
                                               std::vector<std::string>& errors);

// Prompt-driven agents. Each method makes its own gateway calls and appends
// one TraceEvent per call (and per verdict) to `events`.
class AgentTeam {
 public:
  AgentTeam(llm::Gateway& gateway, vecstore::VectorStore* store, AgentOptions options = {});

  // One identification prompt over the raw title and description.
  // Throws UnparseableReply when the reply does not match the assignment
  // schema; GatewayError propagates.
  TopicAssignment identify_topics(const corpus::Document& doc, Mode mode, const SeedSet* seeds,
                                  const std::vector<std::string>& prior_errors,
                                  std::vector<TraceEvent>& events);

  // Structural checks, then (when they pass) an optional LLM relevance
  // judgment that can only add errors.
  ReviewVerdict review_topics(const TopicAssignment& assignment, const corpus::Document& doc, Mode mode,
                              const SeedSet* seeds, std::vector<TraceEvent>& events);

  // Embeds every topic as "name: explanation", upserts it under id
  // "topic/<doc>/<name>" and returns the merge candidates found so far.
  std::vector<std::string> index_topics(const TopicAssignment& assignment, std::vector<TraceEvent>& events);

  // Throws UnparseableReply; GatewayError propagates.
  std::vector<TopicGroup> group_topics(const std::vector<Topic>& topics,
                                       const hierarchy::TopicHierarchy* prior,
                                       const std::vector<std::string>& prior_errors,
                                       std::vector<TraceEvent>& events);

  // Structural only. On ok each group is embedded as "name: description"
  // and upserted under id "group/<name>".
  ReviewVerdict review_groups(const std::vector<TopicGroup>& groups,
                              const std::vector<std::string>& topic_names, std::vector<TraceEvent>& events);

  // Asks for a hierarchy whose leaves are exactly the group members, prunes
  // self-named children, validates, and re-prompts with the violations up to
  // `retry_budget` times. Throws StructuralViolation when no attempt yields a
  // valid hierarchy.
  hierarchy::TopicHierarchy build_hierarchy(const std::vector<TopicGroup>& groups,
                                            const hierarchy::TopicHierarchy* prior, int max_depth,
                                            int retry_budget, std::vector<TraceEvent>& events);

 private:
  llm::StructuredReply ask(const std::string& template_id, const std::string& schema,
                           std::map<std::string, std::string> variables);
  void embed_and_store(const std::string& id, vecstore::ItemKind kind, const std::string& text,
                       const std::string& doc_id, std::vector<TraceEvent>& events,
                       std::vector<std::string>* merge_candidates);

  llm::Gateway& gateway_;
  vecstore::VectorStore* store_;
  AgentOptions options_;
};

}  // namespace agentopic::agents
