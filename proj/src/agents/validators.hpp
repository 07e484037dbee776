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

#include <string>
#include <vector>

#include "agents/types.hpp"

namespace agentopic::agents {

// Deterministic checks run before any LLM judgment. Each returns the list of
// violations, empty when the input is structurally sound.

// Seeded mode additionally requires exactly one topic whose name is a seed.
std::vector<std::string> check_assignment(const TopicAssignment& assignment, Mode mode,
                                          const SeedSet* seeds, const std::string& expected_doc_id);

// Every topic must be a member of some group; every member must be a topic.
std::vector<std::string> check_groups(const std::vector<TopicGroup>& groups,
                                      const std::vector<std::string>& topic_names);

}  // namespace agentopic::agents
