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

#include "corpus/preprocess.hpp"

#include <cctype>
#include <filesystem>
#include <set>

#include "common/errors.hpp"
#include "common/resources.hpp"
#include "common/text.hpp"

namespace agentopic::corpus {

namespace {

std::string_view resource(std::string_view name) {
  auto r = bundled_resource(name);
  if (!r) throw Error(ErrorCode::kInternal, "missing bundled resource: " + std::string(name));
  return *r;
}

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Length of an apostrophe at `i`: 1 for ', 3 for U+2018/U+2019, 0 otherwise.
std::size_t apostrophe_at(std::string_view s, std::size_t i) {
  if (s[i] == '\'') return 1;
  if (i + 2 < s.size() && s[i] == '\xE2' && s[i + 1] == '\x80' &&
      (s[i + 2] == '\x98' || s[i + 2] == '\x99'))
    return 3;
  return 0;
}

struct Unit {
  std::size_t offset;
  std::size_t len;
  char normalized;  // lowercase letter or '\''
};

std::string key_of(const std::vector<Unit>& units, std::size_t b, std::size_t e) {
  std::string k;
  for (std::size_t i = b; i < e; ++i) k += units[i].normalized;
  return k;
}

}  // namespace

Lexicon parse_tab_lexicon(std::string_view content) {
  Lexicon lex;
  for (const auto& raw : text::split(content, '\n')) {
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) continue;
    lex.emplace(std::string(line.substr(0, tab)), std::string(line.substr(tab + 1)));
  }
  return lex;
}

std::unordered_set<std::string> parse_word_list(std::string_view content) {
  std::unordered_set<std::string> words;
  for (const auto& raw : text::split(content, '\n')) {
    auto w = text::trim(raw);
    if (!w.empty() && w.front() != '#') words.insert(w);
  }
  return words;
}

PreprocessConfig PreprocessConfig::bundled() {
  PreprocessConfig c;
  c.contractions = parse_tab_lexicon(resource("lexicons/contractions.tsv"));
  c.stopwords = parse_word_list(resource("lexicons/stopwords.txt"));
  c.verb_lemmas = parse_tab_lexicon(resource("lexicons/verb_lemmas.tsv"));
  return c;
}

PreprocessConfig PreprocessConfig::from_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  PreprocessConfig c;
  c.contractions = parse_tab_lexicon(text::read_file((fs::path(dir) / "contractions.tsv").string()));
  c.stopwords = parse_word_list(text::read_file((fs::path(dir) / "stopwords.txt").string()));
  c.verb_lemmas = parse_tab_lexicon(text::read_file((fs::path(dir) / "verb_lemmas.tsv").string()));
  return c;
}

std::vector<std::string> PreprocessConfig::violations() const {
  std::vector<std::string> out;
  if (contractions.empty()) out.push_back("contraction lexicon is empty");
  for (const auto& [k, v] : contractions)
    if (k != text::to_lower(k)) out.push_back("contraction key not lowercase: " + k);
  for (const auto& w : stopwords)
    if (w != text::to_lower(w)) out.push_back("stopword not lowercase: " + w);
  for (const auto& [k, v] : verb_lemmas) {
    if (k != text::to_lower(k)) out.push_back("verb key not lowercase: " + k);
    auto it = verb_lemmas.find(v);
    if (it != verb_lemmas.end() && it->second != v)
      out.push_back("verb lemma is not a fixed point: " + k + " -> " + v);
    if (stopwords.count(v)) out.push_back("verb lemma is a stopword: " + k + " -> " + v);
  }
  return out;
}

std::string expand_contractions(std::string_view s, const Lexicon& lexicon) {
  std::string out;
  out.reserve(s.size() + 16);
  std::size_t i = 0;
  while (i < s.size()) {
    std::vector<Unit> units;
    std::size_t j = i;
    while (j < s.size()) {
      if (is_ascii_alpha(s[j])) {
        units.push_back({j, 1, static_cast<char>(std::tolower(static_cast<unsigned char>(s[j])))});
        ++j;
      } else if (auto n = apostrophe_at(s, j)) {
        units.push_back({j, n, '\''});
        j += n;
      } else {
        break;
      }
    }
    if (units.empty()) {
      out += s[i++];
      continue;
    }

    // Try the whole run, then the run without surrounding quote marks.
    std::size_t b = 0, e = units.size();
    auto hit = lexicon.find(key_of(units, b, e));
    if (hit == lexicon.end()) {
      while (b < e && units[b].normalized == '\'') ++b;
      while (e > b && units[e - 1].normalized == '\'') --e;
      if (b < e && (b > 0 || e < units.size())) hit = lexicon.find(key_of(units, b, e));
    }

    if (hit == lexicon.end()) {
      out.append(s.substr(i, j - i));
    } else {
      const std::size_t word_begin = units[b].offset;
      const std::size_t word_end = units[e - 1].offset + units[e - 1].len;
      out.append(s.substr(i, word_begin - i));
      std::string expansion = hit->second;
      char first = s[word_begin];
      if (first >= 'A' && first <= 'Z' && !expansion.empty())
        expansion[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(expansion[0])));
      out += expansion;
      out.append(s.substr(word_end, j - word_end));
    }
    i = j;
  }
  return out;
}

std::vector<std::string> lemmatize_verbs(std::vector<std::string> tokens, const Lexicon& lexicon) {
  for (auto& t : tokens) {
    auto it = lexicon.find(t);
    if (it != lexicon.end()) t = it->second;
  }
  return tokens;
}

std::string preprocess(std::string_view input, const PreprocessConfig& config) {
  std::string expanded = expand_contractions(input, config.contractions);
  std::string cleaned;
  cleaned.reserve(expanded.size());
  for (char c : expanded) {
    char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lc >= 'a' && lc <= 'z') {
      cleaned += lc;
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      cleaned += ' ';
    }
  }
  std::vector<std::string> kept;
  for (auto& tok : text::split_ws(cleaned))
    if (!config.stopwords.count(tok)) kept.push_back(std::move(tok));
  return text::join(lemmatize_verbs(std::move(kept), config.verb_lemmas), " ");
}

std::size_t lowercase_vocabulary_size(std::string_view s) {
  auto toks = text::split_ws(text::to_lower(s));
  return std::set<std::string>(toks.begin(), toks.end()).size();
}

VocabularyReport preprocess_corpus(Corpus& corpus, const PreprocessConfig& config) {
  std::set<std::string> before, after;
  for (auto& d : corpus.mutable_documents()) {
    for (auto& t : text::split_ws(text::to_lower(d.description_raw))) before.insert(std::move(t));
    d.description_clean = preprocess(d.description_raw, config);
    for (auto& t : text::split_ws(*d.description_clean)) after.insert(std::move(t));
  }
  return {before.size(), after.size()};
}

}  // namespace agentopic::corpus
