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

#include <optional>
#include <string>
#include <vector>

#include "common/errors.hpp"

namespace agentopic::agents {

enum class Mode { kSeeded, kGenerative };

const char* mode_name(Mode mode);
std::optional<Mode> parse_mode(const std::string& name);

struct Topic {
  std::string name;
  std::string explanation;

  bool operator==(const Topic&) const = default;
};

struct TopicAssignment {
  std::string doc_id;
  std::vector<Topic> topics;

  bool operator==(const TopicAssignment&) const = default;
};

struct ReviewError {
  std::string doc_id;  // "-" for corpus-level reviews
  std::string message;

  bool operator==(const ReviewError&) const = default;
};

struct ReviewVerdict {
  std::vector<ReviewError> errors;
  // Informational: near-duplicate topics found in the vector store.
  std::vector<std::string> merge_candidates;

  bool ok() const noexcept { return errors.empty(); }
  std::vector<std::string> messages() const;
};

struct TopicGroup {
  std::string name;
  std::string description;
  std::vector<std::string> members;

  bool operator==(const TopicGroup&) const = default;
};

// Allowed labels for seeded identification. Matching is case-insensitive
// and ignores surrounding whitespace.
class SeedSet {
 public:
  // Throws InvalidArgument when empty or when two labels fold to the same text.
  explicit SeedSet(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  // The canonical seed label matching `name`, if any.
  std::optional<std::string> match(const std::string& name) const;

  // One label per line; blank lines and '#' comments are skipped.
  static SeedSet parse(const std::string& text);

 private:
  std::vector<std::string> labels_;
};

// An agent reply that never matched its schema.
class UnparseableReply : public ViolationError {
 public:
  UnparseableReply(const std::string& stage, std::vector<std::string> format_errors)
      : ViolationError(ErrorCode::kUnparseableReply, "unparseable " + stage + " reply:",
                       std::move(format_errors)) {}
};

// One line of the workflow audit trail, before sequence numbers are assigned.
struct TraceEvent {
  std::string stage;
  std::string doc_id;  // "-" for corpus-level stages
  std::string summary;
  bool gateway_call = false;

  bool operator==(const TraceEvent&) const = default;
};

}  // namespace agentopic::agents
