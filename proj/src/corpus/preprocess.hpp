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
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "corpus/corpus.hpp"

namespace agentopic::corpus {

using Lexicon = std::unordered_map<std::string, std::string>;

struct PreprocessConfig {
  Lexicon contractions;  // "don't" -> "do not"
  std::unordered_set<std::string> stopwords;
  Lexicon verb_lemmas;  // "running" -> "run"

  // Lexicons compiled into the library.
  static PreprocessConfig bundled();
  // Reads contractions.tsv, stopwords.txt and verb_lemmas.tsv from `dir`.
  static PreprocessConfig from_directory(const std::string& dir);

  // Empty when the config is usable. Besides lowercase keys and lemma
  // idempotence, a lemma must not be a stopword, otherwise a second pass
  // would delete it and the pipeline would not be idempotent.
  std::vector<std::string> violations() const;
};

// Lexicon file parsers. Blank lines and lines starting with '#' are skipped.
Lexicon parse_tab_lexicon(std::string_view text);
std::unordered_set<std::string> parse_word_list(std::string_view text);

// Replaces every maximal word (letters and apostrophes, straight or curly)
// whose case-folded form is a lexicon key. When the word started with an
// uppercase letter the expansion is capitalized ("It's" -> "It is").
std::string expand_contractions(std::string_view text, const Lexicon& lexicon);

std::vector<std::string> lemmatize_verbs(std::vector<std::string> tokens, const Lexicon& lexicon);

// contraction expansion, lowercasing, removal of everything except letters
// and whitespace, whitespace collapse, stopword removal, verb lemmatization.
std::string preprocess(std::string_view text, const PreprocessConfig& config);

struct VocabularyReport {
  std::size_t before = 0;  // distinct whitespace tokens of the lowercased raw text
  std::size_t after = 0;   // distinct tokens of the cleaned text
};

std::size_t lowercase_vocabulary_size(std::string_view text);

// Fills description_clean for every document. Titles are left untouched.
VocabularyReport preprocess_corpus(Corpus& corpus, const PreprocessConfig& config);

}  // namespace agentopic::corpus
