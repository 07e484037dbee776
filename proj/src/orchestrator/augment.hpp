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

#include "corpus/corpus.hpp"
#include "orchestrator/workflow.hpp"

namespace agentopic::workflow {

inline constexpr const char* kUnresolved = "UNRESOLVED";

// The input records plus topics, explanations, group, group_description and
// errors. Multiple topics are joined with "; ", explanations with " | ".
// Throws InvalidArgument when the result does not cover the corpus.
std::string augment(const corpus::Corpus& corpus, const RunResult& result, corpus::Format format);
void write_augmented(const corpus::Corpus& corpus, const RunResult& result, const std::string& path,
                     corpus::Format format);

}  // namespace agentopic::workflow
