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
#include <set>
#include <string>
#include <vector>

namespace agentopic::corpus {

enum class Format { kCsv, kJsonl };

// Picks the format from a file extension (.jsonl/.json -> jsonl, else csv).
Format format_from_path(const std::string& path);
std::optional<Format> parse_format(const std::string& name);

struct Document {
  std::string id;
  std::string title;  // kept byte-for-byte as ingested
  std::string description_raw;
  std::optional<std::string> description_clean;
  std::optional<std::string> category;

  bool operator==(const Document&) const = default;
};

class Corpus {
 public:
  Corpus() = default;

  // Throws DuplicateId or InvalidArgument (empty id).
  void add(Document doc);

  const std::vector<Document>& documents() const noexcept { return documents_; }
  std::vector<Document>& mutable_documents() noexcept { return documents_; }
  const std::set<std::string>& label_set() const noexcept { return labels_; }
  std::size_t size() const noexcept { return documents_.size(); }
  bool empty() const noexcept { return documents_.empty(); }

  const Document* find(const std::string& id) const;

  bool operator==(const Corpus& o) const { return documents_ == o.documents_; }

 private:
  std::vector<Document> documents_;
  std::map<std::string, std::size_t> index_;
  std::set<std::string> labels_;
};

// Reads a corpus. CSV needs a header with id,title,description and optionally
// category and description_clean; JSONL needs one object per line with the
// same keys. Unknown columns are ignored.
// A header-only CSV is an empty corpus.
// Throws FileNotFound, EmptyInput (empty file), MalformedRecord, DuplicateId.
Corpus load_corpus(const std::string& path, Format format);
Corpus parse_corpus(const std::string& text, Format format);

std::string serialize_corpus(const Corpus& corpus, Format format);
void save_corpus(const Corpus& corpus, const std::string& path, Format format);

}  // namespace agentopic::corpus
