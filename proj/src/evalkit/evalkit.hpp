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
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "common/errors.hpp"
#include "corpus/corpus.hpp"
#include "orchestrator/workflow.hpp"

namespace agentopic::eval {

inline constexpr const char* kUnresolved = "UNRESOLVED";

class LengthMismatch : public EvaluationError {
 public:
  LengthMismatch(std::size_t truth, std::size_t pred)
      : EvaluationError("length mismatch: " + std::to_string(truth) + " truth labels, " + std::to_string(pred) +
                        " predictions") {}
};

class UnknownTruthLabel : public EvaluationError {
 public:
  explicit UnknownTruthLabel(const std::string& label) : EvaluationError("unknown truth label: " + label) {}
};

class EmptyMatrix : public EvaluationError {
 public:
  EmptyMatrix() : EvaluationError("nothing to score") {}
};

class LabelSetMismatch : public EvaluationError {
 public:
  explicit LabelSetMismatch(const std::string& model)
      : EvaluationError("label set mismatch for model: " + model) {}
};

class MissingGroundTruth : public EvaluationError {
 public:
  explicit MissingGroundTruth(const std::string& id) : EvaluationError("missing ground truth for document " + id) {}
};

class MultiLabelAssignment : public EvaluationError {
 public:
  MultiLabelAssignment(const std::string& id, std::size_t n)
      : EvaluationError("document " + id + " has " + std::to_string(n) + " labels, expected 1") {}
};

class IdMismatch : public EvaluationError {
 public:
  IdMismatch(std::vector<std::string> missing, std::vector<std::string> unexpected);
  const std::vector<std::string>& missing() const noexcept { return missing_; }
  const std::vector<std::string>& unexpected() const noexcept { return unexpected_; }

 private:
  std::vector<std::string> missing_, unexpected_;
};

// Rows are truth, columns prediction. Predictions that are UNRESOLVED or
// outside the label set land in `unresolved` for their truth row.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> unresolved;

  std::size_t total() const;
  std::size_t unresolved_total() const;
};

// Labels match case-insensitively. Throws LengthMismatch, UnknownTruthLabel,
// InvalidArgument for duplicate labels.
ConfusionMatrix confusion(const std::vector<std::string>& truth, const std::vector<std::string>& pred,
                          const std::vector<std::string>& labels);

struct ClassMetrics {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct EvalReport {
  std::vector<ClassMetrics> per_category;  // label order of the matrix
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;  // mean of per-category F1
  std::size_t documents = 0;
  std::size_t unresolved = 0;

  std::size_t n() const noexcept { return per_category.size(); }
  std::vector<std::string> labels() const;
};

// Zero denominators give 0. Throws EmptyMatrix with no labels or documents.
EvalReport macro_metrics(const ConfusionMatrix& cm);

// Half-to-even rounding to two decimals, e.g. "0.67".
std::string format_score(double value);

// "Model | <labels...> | F1-Score" followed by one row per model.
// Throws LabelSetMismatch when a report covers different labels.
std::string render_table(const std::vector<std::pair<std::string, EvalReport>>& reports,
                         const std::vector<std::string>& labels);

nlohmann::json to_json(const EvalReport& report);

// Seeded result against corpus categories, in corpus order. Quarantined
// documents score as UNRESOLVED. Throws MissingGroundTruth,
// MultiLabelAssignment, InvalidArgument for generative results.
EvalReport score_run(const workflow::RunResult& result, const corpus::Corpus& corpus,
                     const std::vector<std::string>& labels);

struct Prediction {
  std::string id;
  std::string label;
};

// CSV or JSONL with columns id and predicted_label; an augmented run file
// (column topics) is accepted too.
std::vector<Prediction> parse_predictions(const std::string& text, corpus::Format format);
std::vector<Prediction> load_predictions(const std::string& path);

// Throws IdMismatch when ids differ from the corpus, DuplicateId.
EvalReport score_predictions(const std::vector<Prediction>& predictions, const corpus::Corpus& corpus,
                             const std::vector<std::string>& labels);

// Corpus categories, sorted.
std::vector<std::string> corpus_labels(const corpus::Corpus& corpus);

}  // namespace agentopic::eval
