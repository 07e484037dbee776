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

#include "vecstore/vector_store.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>

#include "common/text.hpp"

namespace agentopic::vecstore {

using nlohmann::json;

namespace {

constexpr const char* kMagic = "AGENTOPIC-VECSTORE";
constexpr int kFormatVersion = 1;

std::string hex_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_hex_float(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw CorruptStore("bad number: " + s);
  return v;
}

double norm(const EmbeddingVector& v) {
  double s = 0;
  for (double x : v.values) s += x * x;
  return std::sqrt(s);
}

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
  return s;
}

}  // namespace

const char* kind_name(ItemKind kind) { return kind == ItemKind::kTopic ? "topic" : "group"; }

std::optional<ItemKind> parse_kind(const std::string& name) {
  if (name == "topic") return ItemKind::kTopic;
  if (name == "group") return ItemKind::kGroup;
  return std::nullopt;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw ZeroVector();
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

VectorStore::VectorStore(const VectorStore& other) {
  std::shared_lock lock(other.mu_);
  items_ = other.items_;
  dim_ = other.dim_;
}

VectorStore& VectorStore::operator=(const VectorStore& other) {
  if (this == &other) return *this;
  std::map<std::string, StoredItem> items;
  std::size_t dim;
  {
    std::shared_lock lock(other.mu_);
    items = other.items_;
    dim = other.dim_;
  }
  std::unique_lock lock(mu_);
  items_ = std::move(items);
  dim_ = dim;
  return *this;
}

bool VectorStore::upsert(StoredItem item) {
  if (item.id.empty()) throw InvalidArgument("stored item id must be nonempty");
  if (item.vector.dim() == 0) throw InvalidArgument("stored item vector is empty");
  std::unique_lock lock(mu_);
  if (dim_ != 0 && item.vector.dim() != dim_) throw DimensionMismatch(dim_, item.vector.dim());
  dim_ = item.vector.dim();
  auto [it, inserted] = items_.insert_or_assign(item.id, std::move(item));
  return !inserted;
}

std::optional<StoredItem> VectorStore::get(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = items_.find(id);
  if (it == items_.end()) return std::nullopt;
  return it->second;
}

std::size_t VectorStore::size() const {
  std::shared_lock lock(mu_);
  return items_.size();
}

std::size_t VectorStore::dim() const {
  std::shared_lock lock(mu_);
  return dim_;
}

std::vector<StoredItem> VectorStore::items() const {
  std::shared_lock lock(mu_);
  std::vector<StoredItem> out;
  for (const auto& [id, item] : items_) out.push_back(item);
  return out;
}

std::vector<SimilarityHit> VectorStore::nearest(const EmbeddingVector& query, std::size_t k,
                                                std::optional<ItemKind> filter) const {
  if (k == 0) throw InvalidArgument("k must be positive");
  std::shared_lock lock(mu_);
  if (dim_ != 0 && query.dim() != dim_) throw DimensionMismatch(dim_, query.dim());
  const double qn = norm(query);
  if (qn == 0.0) throw ZeroVector();

  std::vector<SimilarityHit> hits;
  bool any = false;
  for (const auto& [id, item] : items_) {
    if (filter && item.kind != *filter) continue;
    any = true;
    double n = norm(item.vector);
    if (n == 0.0) continue;
    hits.push_back({id, std::clamp(dot(query, item.vector) / (qn * n), -1.0, 1.0)});
  }
  if (!any) throw EmptyStore();
  auto order = [](const SimilarityHit& a, const SimilarityHit& b) {
    return a.score != b.score ? a.score > b.score : a.id < b.id;
  };
  if (hits.size() > k) {
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(), order);
    hits.resize(k);
  } else {
    std::sort(hits.begin(), hits.end(), order);
  }
  return hits;
}

std::vector<SimilarityHit> VectorStore::merge_candidates(const std::string& id, double threshold) const {
  auto item = get(id);
  if (!item || item->kind != ItemKind::kTopic) return {};
  std::vector<SimilarityHit> out;
  for (auto& hit : nearest(item->vector, size(), ItemKind::kTopic)) {
    if (hit.score < threshold) break;
    if (hit.id != id) out.push_back(std::move(hit));
  }
  return out;
}

std::string VectorStore::serialize() const {
  std::shared_lock lock(mu_);
  std::ostringstream out;
  out << kMagic << ' ' << kFormatVersion << ' ' << dim_ << ' ' << items_.size() << '\n';
  for (const auto& [id, item] : items_) {
    json vec = json::array();
    for (double x : item.vector.values) vec.push_back(hex_float(x));
    out << json{{"id", id}, {"kind", kind_name(item.kind)}, {"text", item.text}, {"vector", vec}}.dump()
        << '\n';
  }
  return out.str();
}

void VectorStore::save(const std::string& path) const { text::write_file(path, serialize()); }

VectorStore VectorStore::load(const std::string& path) { return deserialize(text::read_file(path)); }

VectorStore VectorStore::deserialize(const std::string& content) {
  auto lines = text::split(content, '\n');
  if (lines.empty() || lines[0].empty()) throw CorruptStore("missing header");
  std::istringstream header(lines[0]);
  std::string magic;
  int version = 0;
  long long dim = -1, count = -1;
  header >> magic >> version >> dim >> count;
  if (!header || magic != kMagic) throw CorruptStore("bad header");
  if (version != kFormatVersion) throw CorruptStore("unsupported format version " + std::to_string(version));
  if (dim < 0 || count < 0) throw CorruptStore("bad header counts");

  VectorStore store;
  std::size_t records = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      if (i + 1 == lines.size()) break;  // trailing newline
      throw CorruptStore("blank line " + std::to_string(i + 1));
    }
    auto j = json::parse(lines[i], nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw CorruptStore("unreadable record on line " + std::to_string(i + 1));
    try {
      StoredItem item;
      item.id = j.at("id").get<std::string>();
      auto kind = parse_kind(j.at("kind").get<std::string>());
      if (!kind) throw CorruptStore("unknown kind on line " + std::to_string(i + 1));
      item.kind = *kind;
      item.text = j.at("text").get<std::string>();
      for (const auto& x : j.at("vector")) item.vector.values.push_back(parse_hex_float(x.get<std::string>()));
      if (static_cast<long long>(item.vector.dim()) != dim)
        throw CorruptStore("vector dimension differs from header on line " + std::to_string(i + 1));
      if (store.upsert(std::move(item))) throw CorruptStore("duplicate id on line " + std::to_string(i + 1));
    } catch (const json::exception& e) {
      throw CorruptStore(std::string("bad record: ") + e.what());
    }
    ++records;
  }
  if (static_cast<long long>(records) != count)
    throw CorruptStore("expected " + std::to_string(count) + " records, found " + std::to_string(records));
  if (!content.empty() && content.back() != '\n') throw CorruptStore("truncated final record");
  store.dim_ = static_cast<std::size_t>(dim);
  return store;
}

bool VectorStore::operator==(const VectorStore& other) const {
  if (this == &other) return true;
  std::shared_lock a(mu_);
  std::shared_lock b(other.mu_);
  return dim_ == other.dim_ && items_ == other.items_;
}

}  // namespace agentopic::vecstore
