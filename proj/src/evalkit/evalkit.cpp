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

#include "evalkit/evalkit.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "common/text.hpp"
#include "corpus/csv.hpp"

namespace agentopic::eval {

using nlohmann::json;

namespace {

std::string list_ids(const std::vector<std::string>& ids) {
  constexpr std::size_t kShown = 20;
  std::vector<std::string> shown(ids.begin(), ids.begin() + std::min(ids.size(), kShown));
  std::string out = text::join(shown, ", ");
  if (ids.size() > kShown) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

std::string id_message(const std::vector<std::string>& missing, const std::vector<std::string>& unexpected) {
  std::string msg = "prediction ids do not match the corpus";
  if (!missing.empty()) msg += "; missing: " + list_ids(missing);
  if (!unexpected.empty()) msg += "; unexpected: " + list_ids(unexpected);
  return msg;
}

double ratio(std::size_t num, std::size_t den) { return den == 0 ? 0.0 : double(num) / double(den); }

}  // namespace

IdMismatch::IdMismatch(std::vector<std::string> missing, std::vector<std::string> unexpected)
    : EvaluationError(id_message(missing, unexpected)),
      missing_(std::move(missing)),
      unexpected_(std::move(unexpected)) {}

std::size_t ConfusionMatrix::total() const {
  std::size_t n = unresolved_total();
  for (const auto& row : counts)
    for (auto c : row) n += c;
  return n;
}

std::size_t ConfusionMatrix::unresolved_total() const {
  std::size_t n = 0;
  for (auto c : unresolved) n += c;
  return n;
}

ConfusionMatrix confusion(const std::vector<std::string>& truth, const std::vector<std::string>& pred,
                          const std::vector<std::string>& labels) {
  if (truth.size() != pred.size()) throw LengthMismatch(truth.size(), pred.size());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!index.emplace(text::fold(labels[i]), i).second) throw InvalidArgument("duplicate label: " + labels[i]);

  ConfusionMatrix cm;
  cm.labels = labels;
  cm.counts.assign(labels.size(), std::vector<std::size_t>(labels.size(), 0));
  cm.unresolved.assign(labels.size(), 0);
  for (std::size_t k = 0; k < truth.size(); ++k) {
    auto t = index.find(text::fold(truth[k]));
    if (t == index.end()) throw UnknownTruthLabel(truth[k]);
    auto p = index.find(text::fold(pred[k]));
    if (p == index.end()) ++cm.unresolved[t->second];
    else ++cm.counts[t->second][p->second];
  }
  return cm;
}

std::vector<std::string> EvalReport::labels() const {
  std::vector<std::string> out;
  for (const auto& c : per_category) out.push_back(c.label);
  return out;
}

EvalReport macro_metrics(const ConfusionMatrix& cm) {
  const std::size_t n = cm.labels.size();
  if (n == 0 || cm.total() == 0) throw EmptyMatrix();
  EvalReport r;
  r.documents = cm.total();
  r.unresolved = cm.unresolved_total();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t tp = cm.counts[i][i], row = cm.unresolved[i], col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += cm.counts[i][j];
      col += cm.counts[j][i];
    }
    ClassMetrics m;
    m.label = cm.labels[i];
    m.support = row;
    m.precision = ratio(tp, col);
    m.recall = ratio(tp, row);
    m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    r.macro_precision += m.precision;
    r.macro_recall += m.recall;
    r.macro_f1 += m.f1;
    r.per_category.push_back(std::move(m));
  }
  r.macro_precision /= double(n);
  r.macro_recall /= double(n);
  r.macro_f1 /= double(n);
  return r;
}

std::string format_score(double value) {
  // Default rounding mode is to-nearest-even.
  double hundredths = std::nearbyint(value * 100.0);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", hundredths / 100.0);
  return buf;
}

std::string render_table(const std::vector<std::pair<std::string, EvalReport>>& reports,
                         const std::vector<std::string>& labels) {
  std::set<std::string> wanted;
  for (const auto& l : labels) wanted.insert(text::fold(l));
  std::vector<std::string> header = {"Model"};
  header.insert(header.end(), labels.begin(), labels.end());
  header.push_back("F1-Score");
  std::string out = text::join(header, " | ") + "\n";
  for (const auto& [model, report] : reports) {
    std::map<std::string, const ClassMetrics*> by_label;
    for (const auto& c : report.per_category) by_label[text::fold(c.label)] = &c;
    std::set<std::string> have;
    for (const auto& [k, v] : by_label) have.insert(k);
    if (have != wanted || by_label.size() != report.per_category.size()) throw LabelSetMismatch(model);
    std::vector<std::string> row = {model};
    for (const auto& l : labels) row.push_back(format_score(by_label.at(text::fold(l))->f1));
    row.push_back(format_score(report.macro_f1));
    out += text::join(row, " | ") + "\n";
  }
  return out;
}

json to_json(const EvalReport& r) {
  json per = json::array();
  for (const auto& c : r.per_category)
    per.push_back(
        {{"label", c.label}, {"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1}, {"support", c.support}});
  return {{"labels", r.labels()},
          {"per_category", per},
          {"macro_precision", r.macro_precision},
          {"macro_recall", r.macro_recall},
          {"macro_f1", r.macro_f1},
          {"f1_definition", "unweighted mean of per-category F1"},
          {"documents", r.documents},
          {"unresolved", r.unresolved}};
}

EvalReport score_run(const workflow::RunResult& result, const corpus::Corpus& corpus,
                     const std::vector<std::string>& labels) {
  if (result.mode != agents::Mode::kSeeded) throw InvalidArgument("only seeded runs can be scored");
  std::map<std::string, const agents::TopicAssignment*> assigned;
  std::set<std::string> quarantined;
  for (const auto& a : result.assignments) assigned[a.doc_id] = &a;
  for (const auto& q : result.quarantine) quarantined.insert(q.doc_id);
  std::vector<std::string> truth, pred;
  std::vector<std::string> missing;
  for (const auto& d : corpus.documents()) {
    if (!d.category) throw MissingGroundTruth(d.id);
    if (auto it = assigned.find(d.id); it != assigned.end()) {
      if (it->second->topics.size() != 1) throw MultiLabelAssignment(d.id, it->second->topics.size());
      pred.push_back(it->second->topics.front().name);
    } else if (quarantined.count(d.id)) {
      pred.push_back(kUnresolved);
    } else {
      missing.push_back(d.id);
      continue;
    }
    truth.push_back(*d.category);
  }
  if (!missing.empty()) throw IdMismatch(missing, {});
  return macro_metrics(confusion(truth, pred, labels));
}

std::vector<Prediction> parse_predictions(const std::string& content, corpus::Format format) {
  std::vector<Prediction> out;
  if (format == corpus::Format::kJsonl) {
    std::size_t line = 0;
    for (const auto& raw : text::split(content, '\n')) {
      ++line;
      if (text::trim(raw).empty()) continue;
      json j;
      try {
        j = json::parse(raw);
      } catch (const json::exception& e) {
        throw MalformedRecord(line, e.what());
      }
      if (!j.is_object() || !j.contains("id") || !j["id"].is_string())
        throw MalformedRecord(line, "missing key: id");
      const char* key = j.contains("predicted_label") ? "predicted_label" : "topics";
      if (!j.contains(key) || !j[key].is_string()) throw MalformedRecord(line, "missing key: predicted_label");
      out.push_back({j["id"].get<std::string>(), j[key].get<std::string>()});
    }
    return out;
  }
  auto rows = csv::parse(content);
  if (rows.empty()) return out;
  std::optional<std::size_t> id_col, label_col, topics_col;
  for (std::size_t i = 0; i < rows[0].fields.size(); ++i) {
    auto h = text::fold(rows[0].fields[i]);
    if (h == "id") id_col = i;
    else if (h == "predicted_label") label_col = i;
    else if (h == "topics") topics_col = i;
  }
  if (!label_col) label_col = topics_col;
  if (!id_col) throw MalformedRecord(rows[0].line, "missing column: id");
  if (!label_col) throw MalformedRecord(rows[0].line, "missing column: predicted_label");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].fields.size() != rows[0].fields.size())
      throw MalformedRecord(rows[r].line, "expected " + std::to_string(rows[0].fields.size()) + " fields, got " +
                                              std::to_string(rows[r].fields.size()));
    out.push_back({rows[r].fields[*id_col], rows[r].fields[*label_col]});
  }
  return out;
}

std::vector<Prediction> load_predictions(const std::string& path) {
  return parse_predictions(text::read_file(path), corpus::format_from_path(path));
}

EvalReport score_predictions(const std::vector<Prediction>& predictions, const corpus::Corpus& corpus,
                             const std::vector<std::string>& labels) {
  std::map<std::string, std::string> by_id;
  for (const auto& p : predictions)
    if (!by_id.emplace(p.id, p.label).second) throw DuplicateId(p.id);
  std::vector<std::string> truth, pred, missing, unexpected;
  std::set<std::string> known;
  for (const auto& d : corpus.documents()) {
    known.insert(d.id);
    if (!d.category) throw MissingGroundTruth(d.id);
    auto it = by_id.find(d.id);
    if (it == by_id.end()) {
      missing.push_back(d.id);
      continue;
    }
    truth.push_back(*d.category);
    pred.push_back(it->second);
  }
  for (const auto& p : predictions)
    if (!known.count(p.id)) unexpected.push_back(p.id);
  if (!missing.empty() || !unexpected.empty()) throw IdMismatch(missing, unexpected);
  return macro_metrics(confusion(truth, pred, labels));
}

std::vector<std::string> corpus_labels(const corpus::Corpus& corpus) {
  return {corpus.label_set().begin(), corpus.label_set().end()};
}

}  // namespace agentopic::eval
