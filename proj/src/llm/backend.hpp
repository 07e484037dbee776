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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "common/errors.hpp"
#include "llm/prompt.hpp"

namespace agentopic::llm {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const noexcept { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

// One failed provider attempt. The gateway decides whether to retry.
class TransportFailure : public Error {
 public:
  TransportFailure(const std::string& m, bool retryable, bool rate_limited = false)
      : Error(rate_limited ? ErrorCode::kRateLimited : ErrorCode::kTransport, m),
        retryable_(retryable),
        rate_limited_(rate_limited) {}
  bool retryable() const noexcept { return retryable_; }
  bool rate_limited() const noexcept { return rate_limited_; }

 private:
  bool retryable_;
  bool rate_limited_;
};

// Base of every error the gateway surfaces after giving up on a request.
class GatewayError : public Error {
 public:
  GatewayError(ErrorCode code, const std::string& m, int attempts)
      : Error(code, m), attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

class TransportError : public GatewayError {
 public:
  TransportError(const std::string& m, int attempts)
      : GatewayError(ErrorCode::kTransport,
                     "transport error after " + std::to_string(attempts) + " attempt(s): " + m,
                     attempts) {}
};

class RateLimited : public GatewayError {
 public:
  RateLimited(const std::string& m, int attempts)
      : GatewayError(ErrorCode::kRateLimited,
                     "rate limited after " + std::to_string(attempts) + " attempt(s): " + m,
                     attempts) {}
};

class FixtureMiss : public GatewayError {
 public:
  explicit FixtureMiss(const std::string& digest)
      : GatewayError(ErrorCode::kFixtureMiss, "fixture has no record for digest " + digest, 1),
        digest_(digest) {}
  const std::string& digest() const noexcept { return digest_; }

 private:
  std::string digest_;
};

// A chat-completion and embedding provider. Implementations must be safe to
// call from several threads. A failed attempt throws TransportFailure; any
// other exception is treated as final.
class ProviderBackend {
 public:
  virtual ~ProviderBackend() = default;
  virtual std::string chat(const PromptRequest& request, std::string_view prompt) = 0;
  virtual std::vector<double> embed(std::string_view text) = 0;
  virtual std::string name() const = 0;
};

}  // namespace agentopic::llm
