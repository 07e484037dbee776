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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "llm/mock.hpp"
#include "vecstore/vector_store.hpp"

namespace agentopic::vecstore {
namespace {

EmbeddingVector vec(std::vector<double> v) { return {std::move(v)}; }

double oracle_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += (long double)a[i] * b[i];
    na += (long double)a[i] * a[i];
    nb += (long double)b[i] * b[i];
  }
  return double(dot / std::sqrt(na * nb));
}

VectorStore random_store(std::size_t n, std::size_t dim, std::uint64_t seed) {
  VectorStore s;
  for (std::size_t i = 0; i < n; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "item%03zu", i);
    s.upsert({id, i % 3 ? ItemKind::kTopic : ItemKind::kGroup, "text " + std::to_string(i),
              vec(llm::mock_hash_embedding("random item " + std::to_string(i * 7919 + seed), dim, seed))});
  }
  return s;
}

TEST(CosineTest, KnownValues) {
  EXPECT_NEAR(cosine(vec({1, 0}), vec({1, 1})), 0.70710678118654752, 1e-12);
  EXPECT_DOUBLE_EQ(cosine(vec({1, 2, 3}), vec({2, 4, 6})), 1.0);
  EXPECT_DOUBLE_EQ(cosine(vec({1, 0}), vec({-1, 0})), -1.0);
  EXPECT_DOUBLE_EQ(cosine(vec({1, 0}), vec({0, 5})), 0.0);
}

TEST(CosineTest, Errors) {
  EXPECT_THROW(cosine(vec({1, 0}), vec({1, 0, 0})), DimensionMismatch);
  EXPECT_THROW(cosine(vec({0, 0}), vec({1, 0})), ZeroVector);
}

TEST(CosineTest, SymmetryScaleAndBounds) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0, 1);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> a(16), b(16);
    for (auto& x : a) x = g(rng);
    for (auto& x : b) x = g(rng);
    double c = cosine(vec(a), vec(b));
    ASSERT_LE(std::fabs(c), 1.0);
    ASSERT_NEAR(c, cosine(vec(b), vec(a)), 1e-9);
    ASSERT_NEAR(c, oracle_cosine(a, b), 1e-9);
    double s = scale(rng);
    auto as = a;
    for (auto& x : as) x *= s;
    ASSERT_NEAR(c, cosine(vec(as), vec(b)), 1e-9);
    for (auto& x : as) x = -x;
    ASSERT_NEAR(-c, cosine(vec(as), vec(b)), 1e-9);
  }
}

TEST(VectorStoreTest, NearestMatchesBruteForce) {
  auto store = random_store(200, 64, 0x5eed);
  auto items = store.items();
  for (int q = 0; q < 25; ++q) {
    auto query = llm::mock_hash_embedding("query " + std::to_string(q), 64, 0x5eed);
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& it : items) ranked.emplace_back(oracle_cosine(query, it.vector.values), it.id);
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& x, const auto& y) { return x.first != y.first ? x.first > y.first : x.second < y.second; });
    for (std::size_t k : {1u, 5u, 20u}) {
      auto hits = store.nearest(vec(query), k);
      ASSERT_EQ(hits.size(), k);
      for (std::size_t i = 0; i < k; ++i) {
        EXPECT_EQ(hits[i].id, ranked[i].second) << "q=" << q << " k=" << k << " i=" << i;
        EXPECT_NEAR(hits[i].score, ranked[i].first, 1e-12);
      }
    }
  }
}

TEST(VectorStoreTest, TiesBrokenByIdAndFilterApplied) {
  VectorStore s;
  s.upsert({"b", ItemKind::kTopic, "", vec({1, 0})});
  s.upsert({"a", ItemKind::kTopic, "", vec({2, 0})});
  s.upsert({"c", ItemKind::kGroup, "", vec({1, 0})});
  auto hits = s.nearest(vec({1, 0}), 3);
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_EQ(hits[0].id, "a");
  EXPECT_EQ(hits[1].id, "b");
  EXPECT_EQ(hits[2].id, "c");
  auto groups = s.nearest(vec({1, 0}), 5, ItemKind::kGroup);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].id, "c");
}

TEST(VectorStoreTest, Errors) {
  VectorStore s;
  EXPECT_THROW(s.nearest(vec({1, 0}), 1), EmptyStore);
  s.upsert({"a", ItemKind::kTopic, "", vec({1, 0})});
  EXPECT_THROW(s.upsert({"b", ItemKind::kTopic, "", vec({1, 0, 0})}), DimensionMismatch);
  EXPECT_THROW(s.nearest(vec({1, 0}), 0), InvalidArgument);
  EXPECT_THROW(s.nearest(vec({0, 0}), 1), ZeroVector);
  EXPECT_THROW(s.nearest(vec({1, 0}), 1, ItemKind::kGroup), EmptyStore);
}

TEST(VectorStoreTest, UpsertReplaces) {
  VectorStore s;
  EXPECT_FALSE(s.upsert({"a", ItemKind::kTopic, "one", vec({1, 0})}));
  EXPECT_TRUE(s.upsert({"a", ItemKind::kTopic, "two", vec({0, 1})}));
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.get("a")->text, "two");
}

TEST(VectorStoreTest, MergeCandidatesAboveThreshold) {
  VectorStore s;
  s.upsert({"topic/1/Film", ItemKind::kTopic, "", vec({1, 0.01})});
  s.upsert({"topic/2/Film", ItemKind::kTopic, "", vec({1, 0})});
  s.upsert({"topic/3/Sport", ItemKind::kTopic, "", vec({0, 1})});
  s.upsert({"group/Film", ItemKind::kGroup, "", vec({1, 0})});
  auto c = s.merge_candidates("topic/1/Film", 0.95);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].id, "topic/2/Film");
  EXPECT_TRUE(s.merge_candidates("unknown", 0.5).empty());
}

TEST(VectorStoreTest, PersistenceIsBitExact) {
  VectorStore small;
  small.upsert({"tricky", ItemKind::kTopic, "quote \" newline \n tab \t",
                vec({0.1, -0.0, 1e-308, 4.9e-324, -1.7976931348623157e308, 1.0 / 3.0})});
  auto back = VectorStore::deserialize(small.serialize());
  auto v = back.get("tricky")->vector.values;
  auto w = small.get("tricky")->vector.values;
  ASSERT_EQ(v.size(), w.size());
  EXPECT_EQ(std::memcmp(v.data(), w.data(), v.size() * sizeof(double)), 0);
  EXPECT_EQ(back.get("tricky")->text, small.get("tricky")->text);

  auto path = (std::filesystem::temp_directory_path() / "agentopic_vecstore_test.txt").string();
  auto big = random_store(200, 64, 17);
  big.save(path);
  auto loaded = VectorStore::load(path);
  EXPECT_TRUE(loaded == big);
  EXPECT_EQ(loaded.serialize(), big.serialize());
  std::filesystem::remove(path);
}

TEST(VectorStoreTest, CorruptFilesRejected) {
  auto text = random_store(3, 4, 1).serialize();
  EXPECT_THROW(VectorStore::deserialize("BOGUS 1 4 3\n"), CorruptStore);
  EXPECT_THROW(VectorStore::deserialize(text.substr(0, text.size() - 1)), CorruptStore);
  auto wrong_count = text;
  wrong_count.replace(wrong_count.find(" 3\n"), 3, " 4\n");
  EXPECT_THROW(VectorStore::deserialize(wrong_count), CorruptStore);
  EXPECT_THROW(VectorStore::load("/nonexistent/store.txt"), FileNotFound);
}

TEST(VectorStoreTest, EmptyStoreRoundTrips) {
  VectorStore empty;
  EXPECT_TRUE(VectorStore::deserialize(empty.serialize()) == empty);
}

}  // namespace
}  // namespace agentopic::vecstore
