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

#include "orchestrator/augment.hpp"

#include <map>
#include <set>

#include "common/text.hpp"
#include "corpus/csv.hpp"

namespace agentopic::workflow {

using nlohmann::json;

namespace {

struct Extra {
  std::string topics, explanations, group, group_description, errors;
};

}  // namespace

std::string augment(const corpus::Corpus& corpus, const RunResult& result, corpus::Format format) {
  std::map<std::string, const agents::TopicAssignment*> assigned;
  std::map<std::string, const QuarantineEntry*> quarantined;
  for (const auto& a : result.assignments) assigned[a.doc_id] = &a;
  for (const auto& q : result.quarantine) quarantined[q.doc_id] = &q;
  std::map<std::string, const agents::TopicGroup*> group_of;
  for (const auto& g : result.groups)
    for (const auto& m : g.members) group_of.emplace(text::fold(m), &g);

  std::vector<Extra> extras;
  for (const auto& d : corpus.documents()) {
    Extra x;
    if (auto it = assigned.find(d.id); it != assigned.end()) {
      std::vector<std::string> names, explanations, groups, descriptions;
      std::set<const agents::TopicGroup*> seen;
      for (const auto& t : it->second->topics) {
        names.push_back(t.name);
        explanations.push_back(t.explanation);
        auto g = group_of.find(text::fold(t.name));
        if (g != group_of.end() && seen.insert(g->second).second) {
          groups.push_back(g->second->name);
          descriptions.push_back(g->second->description);
        }
      }
      x.topics = text::join(names, "; ");
      x.explanations = text::join(explanations, " | ");
      x.group = text::join(groups, "; ");
      x.group_description = text::join(descriptions, " | ");
    } else if (auto q = quarantined.find(d.id); q != quarantined.end()) {
      x.topics = kUnresolved;
      x.errors = text::join(q->second->errors, "; ");
    } else {
      throw InvalidArgument("run result does not cover document " + d.id);
    }
    extras.push_back(std::move(x));
  }

  const bool has_category = !corpus.label_set().empty();
  bool has_clean = false;
  for (const auto& d : corpus.documents()) has_clean = has_clean || d.description_clean.has_value();

  std::string out;
  if (format == corpus::Format::kCsv) {
    std::vector<std::string> header = {"id", "title", "description"};
    if (has_category) header.push_back("category");
    if (has_clean) header.push_back("description_clean");
    for (const char* c : {"topics", "explanations", "group", "group_description", "errors"}) header.push_back(c);
    out += csv::format_row(header);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& d = corpus.documents()[i];
      const auto& x = extras[i];
      std::vector<std::string> row = {d.id, d.title, d.description_raw};
      if (has_category) row.push_back(d.category.value_or(""));
      if (has_clean) row.push_back(d.description_clean.value_or(""));
      for (const auto* v : {&x.topics, &x.explanations, &x.group, &x.group_description, &x.errors})
        row.push_back(*v);
      out += csv::format_row(row);
    }
    return out;
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& d = corpus.documents()[i];
    const auto& x = extras[i];
    nlohmann::ordered_json obj = {{"id", d.id}, {"title", d.title}, {"description", d.description_raw}};
    if (d.category) obj["category"] = *d.category;
    if (d.description_clean) obj["description_clean"] = *d.description_clean;
    obj["topics"] = x.topics;
    obj["explanations"] = x.explanations;
    obj["group"] = x.group;
    obj["group_description"] = x.group_description;
    obj["errors"] = x.errors;
    out += obj.dump() + "\n";
  }
  return out;
}

void write_augmented(const corpus::Corpus& corpus, const RunResult& result, const std::string& path,
                     corpus::Format format) {
  text::write_file(path, augment(corpus, result, format));
}

}  // namespace agentopic::workflow
