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

#include "agents/types.hpp"

#include <set>

#include "common/text.hpp"

namespace agentopic::agents {

const char* mode_name(Mode mode) { return mode == Mode::kSeeded ? "seeded" : "generative"; }

std::optional<Mode> parse_mode(const std::string& name) {
  auto n = text::to_lower(name);
  if (n == "seeded") return Mode::kSeeded;
  if (n == "generative") return Mode::kGenerative;
  return std::nullopt;
}

std::vector<std::string> ReviewVerdict::messages() const {
  std::vector<std::string> out;
  for (const auto& e : errors) out.push_back(e.message);
  return out;
}

SeedSet::SeedSet(std::vector<std::string> labels) {
  std::set<std::string> seen;
  for (auto& l : labels) {
    auto trimmed = text::trim(l);
    if (trimmed.empty()) continue;
    if (!seen.insert(text::fold(trimmed)).second) throw InvalidArgument("duplicate seed label: " + trimmed);
    labels_.push_back(std::move(trimmed));
  }
  if (labels_.empty()) throw InvalidArgument("seed set is empty");
}

std::optional<std::string> SeedSet::match(const std::string& name) const {
  auto f = text::fold(name);
  for (const auto& l : labels_)
    if (text::fold(l) == f) return l;
  return std::nullopt;
}

SeedSet SeedSet::parse(const std::string& content) {
  std::vector<std::string> labels;
  for (const auto& line : text::split(content, '\n')) {
    auto t = text::trim(line);
    if (!t.empty() && t.front() != '#') labels.push_back(t);
  }
  return SeedSet(std::move(labels));
}

}  // namespace agentopic::agents
