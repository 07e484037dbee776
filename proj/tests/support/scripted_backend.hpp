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

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "llm/backend.hpp"
#include "llm/mock.hpp"

namespace agentopic::testing {

inline std::string fenced(const nlohmann::json& j) { return "```json\n" + j.dump() + "\n```\n"; }

// Test double whose replies come from callbacks. Embeddings default to the
// mock hash embedding.
class ScriptedBackend : public llm::ProviderBackend {
 public:
  using ChatFn = std::function<std::string(const llm::PromptRequest&, std::string_view)>;
  using EmbedFn = std::function<std::vector<double>(std::string_view)>;

  explicit ScriptedBackend(ChatFn chat, EmbedFn embed = nullptr) : chat_(std::move(chat)), embed_(std::move(embed)) {}

  std::string chat(const llm::PromptRequest& request, std::string_view prompt) override {
    ++chat_calls;
    {
      std::lock_guard lock(mu_);
      ++per_template_[request.template_id];
    }
    return chat_(request, prompt);
  }

  std::vector<double> embed(std::string_view text) override {
    ++embed_calls;
    return embed_ ? embed_(text) : llm::mock_hash_embedding(text, 16, 7);
  }

  std::string name() const override { return "scripted"; }

  int template_calls(const std::string& id) {
    std::lock_guard lock(mu_);
    return per_template_[id];
  }

  std::atomic<int> chat_calls{0};
  std::atomic<int> embed_calls{0};

 private:
  ChatFn chat_;
  EmbedFn embed_;
  std::mutex mu_;
  std::map<std::string, int> per_template_;
};

// Counts calls per key (e.g. doc id) so scripts can vary replies by attempt.
class AttemptCounter {
 public:
  int next(const std::string& key) {
    std::lock_guard lock(mu_);
    return ++counts_[key];
  }
  int get(const std::string& key) {
    std::lock_guard lock(mu_);
    return counts_[key];
  }

 private:
  std::mutex mu_;
  std::map<std::string, int> counts_;
};

}  // namespace agentopic::testing
