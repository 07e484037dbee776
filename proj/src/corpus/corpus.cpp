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

#include "corpus/corpus.hpp"

#include <nlohmann/json.hpp>

#include "common/errors.hpp"
#include "common/text.hpp"
#include "corpus/csv.hpp"

namespace agentopic::corpus {

using nlohmann::json;

Format format_from_path(const std::string& path) {
  auto lower = text::to_lower(path);
  auto ends_with = [&](std::string_view suf) {
    return lower.size() >= suf.size() && lower.compare(lower.size() - suf.size(), suf.size(), suf) == 0;
  };
  return (ends_with(".jsonl") || ends_with(".json") || ends_with(".ndjson")) ? Format::kJsonl
                                                                             : Format::kCsv;
}

std::optional<Format> parse_format(const std::string& name) {
  auto n = text::to_lower(name);
  if (n == "csv") return Format::kCsv;
  if (n == "jsonl") return Format::kJsonl;
  return std::nullopt;
}

void Corpus::add(Document doc) {
  if (doc.id.empty()) throw InvalidArgument("document id must be nonempty");
  if (index_.count(doc.id)) throw DuplicateId(doc.id);
  index_.emplace(doc.id, documents_.size());
  if (doc.category) labels_.insert(*doc.category);
  documents_.push_back(std::move(doc));
}

const Document* Corpus::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &documents_[it->second];
}

namespace {

Corpus parse_csv(const std::string& content) {
  auto rows = csv::parse(content);
  if (rows.empty()) throw EmptyInput("empty file");
  const auto& header = rows.front();
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.fields.size(); ++i)
    col.emplace(text::to_lower(text::trim(header.fields[i])), i);
  for (const char* required : {"id", "title", "description"})
    if (!col.count(required))
      throw MalformedRecord(header.line, std::string("header lacks column: ") + required);

  Corpus corpus;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.fields.size())
      throw MalformedRecord(row.line, "expected " + std::to_string(header.fields.size()) +
                                          " fields, found " + std::to_string(row.fields.size()));
    auto get = [&](const char* name) -> std::optional<std::string> {
      auto it = col.find(name);
      if (it == col.end()) return std::nullopt;
      return row.fields[it->second];
    };
    Document d;
    d.id = *get("id");
    if (d.id.empty()) throw MalformedRecord(row.line, "empty id");
    d.title = *get("title");
    d.description_raw = *get("description");
    d.category = get("category");
    if (d.category && d.category->empty()) d.category.reset();
    // An empty cleaned description is a legitimate pipeline output.
    d.description_clean = get("description_clean");
    corpus.add(std::move(d));
  }
  return corpus;
}

std::optional<std::string> string_field(const json& obj, const char* key, std::size_t line,
                                        bool required) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw MalformedRecord(line, std::string("missing key: ") + key);
    return std::nullopt;
  }
  if (!it->is_string()) throw MalformedRecord(line, std::string("key is not a string: ") + key);
  return it->get<std::string>();
}

Corpus parse_jsonl(const std::string& content) {
  Corpus corpus;
  bool any = false;
  auto lines = text::split(content, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    auto trimmed = text::trim(lines[i]);
    if (trimmed.empty()) continue;
    any = true;
    json obj;
    try {
      obj = json::parse(trimmed);
    } catch (const json::parse_error& e) {
      throw MalformedRecord(line, e.what());
    }
    if (!obj.is_object()) throw MalformedRecord(line, "record is not an object");
    Document d;
    d.id = *string_field(obj, "id", line, true);
    if (d.id.empty()) throw MalformedRecord(line, "empty id");
    d.title = *string_field(obj, "title", line, true);
    d.description_raw = *string_field(obj, "description", line, true);
    d.category = string_field(obj, "category", line, false);
    d.description_clean = string_field(obj, "description_clean", line, false);
    corpus.add(std::move(d));
  }
  if (!any) throw EmptyInput("empty file");
  return corpus;
}

}  // namespace

Corpus parse_corpus(const std::string& content, Format format) {
  return format == Format::kCsv ? parse_csv(content) : parse_jsonl(content);
}

Corpus load_corpus(const std::string& path, Format format) {
  return parse_corpus(text::read_file(path), format);
}

std::string serialize_corpus(const Corpus& corpus, Format format) {
  const bool has_category = !corpus.label_set().empty();
  bool has_clean = false;
  for (const auto& d : corpus.documents()) has_clean = has_clean || d.description_clean.has_value();

  std::string out;
  if (format == Format::kCsv) {
    std::vector<std::string> header = {"id", "title", "description"};
    if (has_category) header.push_back("category");
    if (has_clean) header.push_back("description_clean");
    out += csv::format_row(header);
    for (const auto& d : corpus.documents()) {
      std::vector<std::string> row = {d.id, d.title, d.description_raw};
      if (has_category) row.push_back(d.category.value_or(""));
      if (has_clean) row.push_back(d.description_clean.value_or(""));
      out += csv::format_row(row);
    }
  } else {
    for (const auto& d : corpus.documents()) {
      json obj = {{"id", d.id}, {"title", d.title}, {"description", d.description_raw}};
      if (d.category) obj["category"] = *d.category;
      if (d.description_clean) obj["description_clean"] = *d.description_clean;
      out += obj.dump() + "\n";
    }
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::string& path, Format format) {
  text::write_file(path, serialize_corpus(corpus, format));
}

}  // namespace agentopic::corpus
