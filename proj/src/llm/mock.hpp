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
#include <string>
#include <vector>

#include "llm/backend.hpp"

namespace agentopic::llm {

// Deterministic offline provider.
//
// Embeddings: each lowercase word is hashed (FNV-1a, mixed with the seed) to
// a pseudo-random direction; a text embeds to the sum over its words, so
// texts sharing words are geometrically close. Texts without letters hash
// as a whole.
//
// Chat: a keyword-driven stand-in for an LLM that understands the bundled
// prompt templates. It labels articles by keyword counts against a built-in
// news taxonomy, groups topics along that taxonomy and nests groups under
// four broad themes. It is good enough to exercise the workflow and to
// record fixtures; it is not a topic model.
class MockBackend : public ProviderBackend {
 public:
  explicit MockBackend(std::size_t dim = 64, std::uint64_t seed = 0x5eedULL);

  std::string chat(const PromptRequest& request, std::string_view prompt) override;
  std::vector<double> embed(std::string_view text) override;
  std::string name() const override { return "mock"; }

  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// Exposed for tests: hash-embedding of a text without a backend instance.
std::vector<double> mock_hash_embedding(std::string_view text, std::size_t dim, std::uint64_t seed);

}  // namespace agentopic::llm
