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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agents/agents.hpp"
#include "agents/types.hpp"
#include "corpus/corpus.hpp"
#include "hierarchy/hierarchy.hpp"
#include "llm/gateway.hpp"
#include "vecstore/vector_store.hpp"

namespace agentopic::workflow {

using agents::Mode;

struct WorkflowConfig {
  Mode mode = Mode::kSeeded;
  std::optional<agents::SeedSet> seeds;
  int refinement_iterations = 1;
  int review_retry_budget = 3;
  int max_depth = 6;
  int concurrency_limit = 4;
  bool relevance_check = true;
  double merge_threshold = 0.95;
  // Empty disables checkpointing. The vector store is kept next to it
  // with a ".vecstore" suffix.
  std::string checkpoint_path;
  int checkpoint_every = 25;  // documents between incremental checkpoints
  bool resume = false;

  // Throws InvalidArgument on inconsistent settings.
  void check() const;
};

struct TraceEntry {
  std::uint64_t seq = 0;
  std::string stage;
  std::string doc_id;
  std::string summary;
  bool gateway_call = false;

  bool operator==(const TraceEntry&) const = default;
};

struct QuarantineEntry {
  std::string doc_id;
  std::vector<std::string> errors;

  bool operator==(const QuarantineEntry&) const = default;
};

struct RunResult {
  Mode mode = Mode::kSeeded;
  std::vector<agents::TopicAssignment> assignments;  // corpus order
  std::vector<QuarantineEntry> quarantine;           // corpus order
  std::vector<agents::Topic> topics;                 // deduplicated union, generative only
  std::vector<agents::TopicGroup> groups;            // final grouping pass
  std::optional<hierarchy::TopicHierarchy> hierarchy;
  std::vector<TraceEntry> trace;

  std::size_t stage_count(const std::string& stage) const;
  std::size_t stage_count(const std::string& stage, const std::string& doc_id) const;
  bool operator==(const RunResult&) const = default;
};

nlohmann::json to_json(const RunResult& result);
// Throws ParseError on shape errors.
RunResult run_result_from_json(const nlohmann::json& j);
std::string serialize_result(const RunResult& result);
std::string serialize_trace(const std::vector<TraceEntry>& trace);

// Drives identification, review, grouping and hierarchy construction.
// Per-document failures are quarantined; GatewayError aborts the run and is
// rethrown for the earliest failing document.
class Orchestrator {
 public:
  Orchestrator(llm::Gateway& gateway, vecstore::VectorStore& store, WorkflowConfig config);

  RunResult run(const corpus::Corpus& corpus);
  RunResult run_seeded(const corpus::Corpus& corpus);
  RunResult run_generative(const corpus::Corpus& corpus);

  const WorkflowConfig& config() const noexcept { return config_; }

 private:
  llm::Gateway& gateway_;
  vecstore::VectorStore& store_;
  WorkflowConfig config_;
};

}  // namespace agentopic::workflow
