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
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "llm/backend.hpp"

namespace agentopic::vecstore {

using llm::EmbeddingVector;

enum class ItemKind { kTopic, kGroup };

const char* kind_name(ItemKind kind);
std::optional<ItemKind> parse_kind(const std::string& name);

struct StoredItem {
  std::string id;
  ItemKind kind = ItemKind::kTopic;
  std::string text;
  EmbeddingVector vector;

  bool operator==(const StoredItem&) const = default;
};

struct SimilarityHit {
  std::string id;
  double score = 0.0;
};

// dot(a,b) / (|a||b|). Throws DimensionMismatch or ZeroVector.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Exact in-memory similarity store. Reads may run concurrently; writes are
// exclusive.
class VectorStore {
 public:
  VectorStore() = default;
  VectorStore(const VectorStore& other);
  VectorStore& operator=(const VectorStore& other);

  // Returns true when an item with the same id was replaced.
  bool upsert(StoredItem item);

  std::optional<StoredItem> get(const std::string& id) const;
  std::size_t size() const;
  std::size_t dim() const;
  std::vector<StoredItem> items() const;  // ordered by id

  // Full scan; descending score, ties by ascending id. Items whose vector is
  // all-zero are skipped. Throws EmptyStore (EmptyInput) when nothing matches
  // the filter, DimensionMismatch, ZeroVector for a zero query.
  std::vector<SimilarityHit> nearest(const EmbeddingVector& query, std::size_t k,
                                     std::optional<ItemKind> filter = std::nullopt) const;

  // Other topic items whose cosine with item `id` is >= threshold, in
  // nearest() order. Empty when `id` is unknown.
  std::vector<SimilarityHit> merge_candidates(const std::string& id, double threshold) const;

  void save(const std::string& path) const;
  std::string serialize() const;
  static VectorStore load(const std::string& path);
  static VectorStore deserialize(const std::string& text);

  bool operator==(const VectorStore& other) const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, StoredItem> items_;
  std::size_t dim_ = 0;
};

class EmptyStore : public EmptyInput {
 public:
  EmptyStore() : EmptyInput("vector store has no items for this query") {}
};

}  // namespace agentopic::vecstore
