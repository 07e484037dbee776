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
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>
#include <string_view>

#include "llm/backend.hpp"
#include "llm/prompt.hpp"
#include "llm/schema.hpp"

namespace agentopic::llm {

struct GatewayOptions {
  // Maximum provider attempts per logical request (>= 1).
  int retry_budget = 3;
  // Maximum provider requests in flight across all callers.
  int concurrency_limit = 4;
  // Backoff before retry n (1-based) is base * 2^(n-1).
  std::chrono::milliseconds backoff_base{250};
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to this_thread::sleep_for
};

// Uniform entry point for every provider call: renders templates, retries
// transport failures with exponential backoff, bounds concurrency and parses
// structured replies.
class Gateway {
 public:
  Gateway(std::shared_ptr<ProviderBackend> backend, TemplateStore templates, GatewayOptions options = {});

  // Throws TransportError / RateLimited once the retry budget is spent,
  // FixtureMiss from replay backends, InvalidArgument for bad requests.
  StructuredReply complete(const PromptRequest& request);

  // Throws EmptyInput for blank text, DimensionMismatch if the backend
  // changes dimension between calls.
  EmbeddingVector embed(std::string_view text);

  std::uint64_t call_count() const noexcept { return calls_.load(); }
  std::uint64_t attempt_count() const noexcept { return attempts_.load(); }
  const ProviderBackend& backend() const noexcept { return *backend_; }
  const TemplateStore& templates() const noexcept { return templates_; }

 private:
  template <typename Fn>
  auto with_retries(Fn&& fn) -> decltype(fn());

  std::shared_ptr<ProviderBackend> backend_;
  TemplateStore templates_;
  GatewayOptions options_;
  std::counting_semaphore<1024> in_flight_;
  std::atomic<std::uint64_t> calls_{0};
  std::atomic<std::uint64_t> attempts_{0};
  std::mutex dim_mu_;
  std::size_t dim_ = 0;
};

}  // namespace agentopic::llm
