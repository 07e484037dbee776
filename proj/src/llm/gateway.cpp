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

#include "llm/gateway.hpp"

#include <algorithm>
#include <thread>

#include "common/text.hpp"

namespace agentopic::llm {

namespace {

struct SlotGuard {
  std::counting_semaphore<1024>& sem;
  explicit SlotGuard(std::counting_semaphore<1024>& s) : sem(s) { sem.acquire(); }
  ~SlotGuard() { sem.release(); }
};

}  // namespace

Gateway::Gateway(std::shared_ptr<ProviderBackend> backend, TemplateStore templates, GatewayOptions options)
    : backend_(std::move(backend)),
      templates_(std::move(templates)),
      options_(std::move(options)),
      in_flight_(std::clamp(options_.concurrency_limit, 1, 1024)) {
  if (!backend_) throw InvalidArgument("gateway needs a backend");
  if (options_.retry_budget < 1) throw InvalidArgument("retry budget must be at least 1");
  if (options_.concurrency_limit < 1) throw InvalidArgument("concurrency limit must be at least 1");
  if (!options_.sleep) options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

template <typename Fn>
auto Gateway::with_retries(Fn&& fn) -> decltype(fn()) {
  calls_.fetch_add(1);
  for (int attempt = 1;; ++attempt) {
    try {
      attempts_.fetch_add(1);
      SlotGuard slot(in_flight_);
      return fn();
    } catch (const TransportFailure& f) {
      if (!f.retryable() || attempt >= options_.retry_budget) {
        if (f.rate_limited()) throw RateLimited(f.what(), attempt);
        throw TransportError(f.what(), attempt);
      }
      options_.sleep(options_.backoff_base * (1LL << std::min(attempt - 1, 16)));
    }
  }
}

StructuredReply Gateway::complete(const PromptRequest& request) {
  std::string prompt = templates_.render(request);
  std::string raw = with_retries([&] { return backend_->chat(request, prompt); });
  return parse_reply(std::move(raw), request.response_schema_id);
}

EmbeddingVector Gateway::embed(std::string_view t) {
  if (text::trim(t).empty()) throw EmptyInput("cannot embed empty text");
  EmbeddingVector v{with_retries([&] { return backend_->embed(t); })};
  if (v.values.empty()) throw TransportError("backend returned an empty embedding", 1);
  std::lock_guard lock(dim_mu_);
  if (dim_ == 0) dim_ = v.dim();
  if (v.dim() != dim_) throw DimensionMismatch(dim_, v.dim());
  return v;
}

}  // namespace agentopic::llm
