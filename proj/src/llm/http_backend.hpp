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

#include <memory>
#include <string>

#include "llm/backend.hpp"

namespace agentopic::llm {

struct HttpBackendConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string chat_model = "gpt-4.1";
  std::string embedding_model = "text-embedding-3-small";
  std::string api_key;  // sent as a bearer token when nonempty
  int timeout_seconds = 60;
};

// OpenAI-compatible chat-completion and embedding endpoints
// (<base>/chat/completions, <base>/embeddings).
//
// Network failures, HTTP 5xx and malformed bodies are retryable failures,
// 429 is a retryable rate limit, other non-2xx statuses are final.
class HttpBackend : public ProviderBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  ~HttpBackend() override;

  std::string chat(const PromptRequest& request, std::string_view prompt) override;
  std::vector<double> embed(std::string_view text) override;
  std::string name() const override { return "live"; }

 private:
  struct Endpoint;
  HttpBackendConfig config_;
  std::unique_ptr<Endpoint> endpoint_;
};

}  // namespace agentopic::llm
