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

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "llm/backend.hpp"

namespace agentopic::llm {

// A fixture file holds one JSON record per line:
//   {"digest": ..., "kind": "chat"|"embed", "request": {...}, "reply": ...}
// chat replies are the raw provider text, embed replies an array of numbers.
struct FixtureRecord {
  std::string digest;
  std::string kind;
  nlohmann::json request;
  nlohmann::json reply;
};

FixtureRecord make_chat_record(const PromptRequest& request, const std::string& reply);
FixtureRecord make_embed_record(std::string_view text, const std::vector<double>& vector);
std::string format_record(const FixtureRecord& record);

// Appends records to a fixture file. Appends are serialized.
class FixtureWriter {
 public:
  // Throws IoError when the sink cannot be opened for appending.
  explicit FixtureWriter(const std::string& path);
  void append(const FixtureRecord& record);

 private:
  std::mutex mu_;
  std::ofstream out_;
  std::set<std::string> written_;
};

class ReplayBackend : public ProviderBackend {
 public:
  // Throws FileNotFound or ParseError. A missing-but-empty fixture is allowed.
  static std::shared_ptr<ReplayBackend> from_file(const std::string& path);
  static std::shared_ptr<ReplayBackend> from_text(const std::string& text);

  std::string chat(const PromptRequest& request, std::string_view prompt) override;
  std::vector<double> embed(std::string_view text) override;
  std::string name() const override { return "replay"; }
  std::size_t size() const noexcept { return records_.size(); }

 private:
  std::map<std::string, FixtureRecord> records_;
};

// Forwards to `inner` and appends every successful call to the sink, keyed by
// the canonical request digest. Replaying the sink reproduces the session.
class RecordingBackend : public ProviderBackend {
 public:
  RecordingBackend(std::shared_ptr<ProviderBackend> inner, const std::string& sink_path);

  std::string chat(const PromptRequest& request, std::string_view prompt) override;
  std::vector<double> embed(std::string_view text) override;
  std::string name() const override { return "record(" + inner_->name() + ")"; }

 private:
  std::shared_ptr<ProviderBackend> inner_;
  FixtureWriter writer_;
};

}  // namespace agentopic::llm
