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

#include "orchestrator/workflow.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "common/text.hpp"
#include "hierarchy/hierarchy.hpp"
#include "llm/prompt.hpp"

namespace agentopic::workflow {

using agents::TopicAssignment;
using agents::TraceEvent;
using nlohmann::json;

namespace {

constexpr int kCheckpointVersion = 1;

json topic_json(const agents::Topic& t) { return {{"name", t.name}, {"explanation", t.explanation}}; }

agents::Topic topic_from(const json& j) {
  return {j.at("name").get<std::string>(), j.at("explanation").get<std::string>()};
}

json assignment_json(const TopicAssignment& a) {
  json topics = json::array();
  for (const auto& t : a.topics) topics.push_back(topic_json(t));
  return {{"doc_id", a.doc_id}, {"topics", topics}};
}

TopicAssignment assignment_from(const json& j) {
  TopicAssignment a;
  a.doc_id = j.at("doc_id").get<std::string>();
  for (const auto& t : j.at("topics")) a.topics.push_back(topic_from(t));
  return a;
}

json group_json(const agents::TopicGroup& g) {
  return {{"name", g.name}, {"description", g.description}, {"members", g.members}};
}

agents::TopicGroup group_from(const json& j) {
  return {j.at("name").get<std::string>(), j.at("description").get<std::string>(),
          j.at("members").get<std::vector<std::string>>()};
}

json event_json(const TraceEvent& e) {
  return {{"stage", e.stage}, {"doc_id", e.doc_id}, {"summary", e.summary}, {"gateway_call", e.gateway_call}};
}

TraceEvent event_from(const json& j) {
  return {j.at("stage").get<std::string>(), j.at("doc_id").get<std::string>(), j.at("summary").get<std::string>(),
          j.at("gateway_call").get<bool>()};
}

json hierarchy_json(const hierarchy::TopicHierarchy& h) {
  return json::parse(hierarchy::export_hierarchy(h, hierarchy::ExportFormat::kStructured));
}

hierarchy::TopicHierarchy hierarchy_from(const json& j) { return hierarchy::parse_structured(j.dump()); }

template <typename Fn>
auto parse_guard(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(1, e.what());
  }
}

struct DocOutcome {
  bool done = false;
  bool indexed = false;
  std::optional<TopicAssignment> assignment;
  std::vector<std::string> errors;
  std::vector<TraceEvent> events;
};

enum class Stage { kDocuments, kIndexed, kFinal };

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::kDocuments: return "documents";
    case Stage::kIndexed: return "indexed";
    case Stage::kFinal: return "final";
  }
  return "?";
}

struct State {
  Stage stage = Stage::kDocuments;
  std::vector<DocOutcome> docs;
  bool deduped = false;
  int passes_done = 0;
  std::vector<agents::Topic> topics;
  std::vector<agents::TopicGroup> groups;
  std::optional<hierarchy::TopicHierarchy> hierarchy;
  std::vector<TraceEvent> corpus_events;
};

json state_json(const State& st, const std::string& fingerprint) {
  json docs = json::array();
  for (std::size_t i = 0; i < st.docs.size(); ++i) {
    const auto& d = st.docs[i];
    if (!d.done) continue;
    json events = json::array();
    for (const auto& e : d.events) events.push_back(event_json(e));
    docs.push_back({{"index", i},
                    {"indexed", d.indexed},
                    {"assignment", d.assignment ? assignment_json(*d.assignment) : json(nullptr)},
                    {"errors", d.errors},
                    {"events", events}});
  }
  json topics = json::array(), groups = json::array(), events = json::array();
  for (const auto& t : st.topics) topics.push_back(topic_json(t));
  for (const auto& g : st.groups) groups.push_back(group_json(g));
  for (const auto& e : st.corpus_events) events.push_back(event_json(e));
  return {{"version", kCheckpointVersion},
          {"fingerprint", fingerprint},
          {"stage", stage_name(st.stage)},
          {"documents", docs},
          {"deduped", st.deduped},
          {"passes_done", st.passes_done},
          {"topics", topics},
          {"groups", groups},
          {"hierarchy", st.hierarchy ? hierarchy_json(*st.hierarchy) : json(nullptr)},
          {"corpus_events", events}};
}

State state_from(const json& j, std::size_t doc_count, const std::string& fingerprint) {
  return parse_guard([&] {
    if (j.at("version").get<int>() != kCheckpointVersion)
      throw ParseError(1, "unsupported checkpoint version " + j.at("version").dump());
    if (j.at("fingerprint").get<std::string>() != fingerprint)
      throw InvalidArgument("checkpoint does not match this corpus and configuration");
    State st;
    const auto stage = j.at("stage").get<std::string>();
    if (stage == "documents") st.stage = Stage::kDocuments;
    else if (stage == "indexed") st.stage = Stage::kIndexed;
    else if (stage == "final") st.stage = Stage::kFinal;
    else throw ParseError(1, "unknown checkpoint stage: " + stage);
    st.docs.resize(doc_count);
    for (const auto& d : j.at("documents")) {
      auto i = d.at("index").get<std::size_t>();
      if (i >= doc_count) throw ParseError(1, "checkpoint document index out of range");
      auto& o = st.docs[i];
      o.done = true;
      o.indexed = d.at("indexed").get<bool>();
      if (!d.at("assignment").is_null()) o.assignment = assignment_from(d.at("assignment"));
      o.errors = d.at("errors").get<std::vector<std::string>>();
      for (const auto& e : d.at("events")) o.events.push_back(event_from(e));
    }
    st.deduped = j.at("deduped").get<bool>();
    st.passes_done = j.at("passes_done").get<int>();
    for (const auto& t : j.at("topics")) st.topics.push_back(topic_from(t));
    for (const auto& g : j.at("groups")) st.groups.push_back(group_from(g));
    if (!j.at("hierarchy").is_null()) st.hierarchy = hierarchy_from(j.at("hierarchy"));
    for (const auto& e : j.at("corpus_events")) st.corpus_events.push_back(event_from(e));
    return st;
  });
}

std::string fingerprint_of(const corpus::Corpus& corpus, const WorkflowConfig& c) {
  json docs = json::array();
  for (const auto& d : corpus.documents()) docs.push_back({d.id, d.title, d.description_raw});
  json j = {{"mode", agents::mode_name(c.mode)},
            {"seeds", c.seeds ? json(c.seeds->labels()) : json(nullptr)},
            {"refinement_iterations", c.refinement_iterations},
            {"review_retry_budget", c.review_retry_budget},
            {"max_depth", c.max_depth},
            {"relevance_check", c.relevance_check},
            {"merge_threshold", c.merge_threshold},
            {"documents", docs}};
  return llm::sha256_hex(j.dump());
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  text::write_file(tmp, content);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace " + path + ": " + ec.message());
}

std::string plural(std::size_t n, const char* what) {
  return std::to_string(n) + " " + what + (n == 1 ? "" : "s");
}

}  // namespace

void WorkflowConfig::check() const {
  if (mode == Mode::kSeeded && !seeds) throw InvalidArgument("seeded mode requires a seed set");
  if (mode == Mode::kGenerative && seeds) throw InvalidArgument("generative mode does not take a seed set");
  if (refinement_iterations < 0) throw InvalidArgument("refinement_iterations must be non-negative");
  if (review_retry_budget < 1) throw InvalidArgument("review_retry_budget must be positive");
  if (max_depth < 2) throw InvalidArgument("max_depth must be at least 2");
  if (concurrency_limit < 1) throw InvalidArgument("concurrency_limit must be positive");
  if (checkpoint_every < 1) throw InvalidArgument("checkpoint_every must be positive");
  if (!(merge_threshold >= -1.0 && merge_threshold <= 1.0))
    throw InvalidArgument("merge_threshold must lie in [-1, 1]");
  if (resume && checkpoint_path.empty()) throw InvalidArgument("resume requires a checkpoint path");
}

std::size_t RunResult::stage_count(const std::string& stage) const {
  return std::count_if(trace.begin(), trace.end(), [&](const TraceEntry& e) { return e.stage == stage; });
}

std::size_t RunResult::stage_count(const std::string& stage, const std::string& doc_id) const {
  return std::count_if(trace.begin(), trace.end(),
                       [&](const TraceEntry& e) { return e.stage == stage && e.doc_id == doc_id; });
}

json to_json(const RunResult& r) {
  json assignments = json::array(), quarantine = json::array(), topics = json::array(), groups = json::array(),
       trace = json::array();
  for (const auto& a : r.assignments) assignments.push_back(assignment_json(a));
  for (const auto& q : r.quarantine) quarantine.push_back({{"doc_id", q.doc_id}, {"errors", q.errors}});
  for (const auto& t : r.topics) topics.push_back(topic_json(t));
  for (const auto& g : r.groups) groups.push_back(group_json(g));
  for (const auto& e : r.trace)
    trace.push_back({{"seq", e.seq},
                     {"stage", e.stage},
                     {"doc_id", e.doc_id},
                     {"summary", e.summary},
                     {"gateway_call", e.gateway_call}});
  return {{"mode", agents::mode_name(r.mode)},
          {"assignments", assignments},
          {"quarantine", quarantine},
          {"topics", topics},
          {"groups", groups},
          {"hierarchy", r.hierarchy ? hierarchy_json(*r.hierarchy) : json(nullptr)},
          {"trace", trace}};
}

RunResult run_result_from_json(const json& j) {
  return parse_guard([&] {
    RunResult r;
    auto mode = agents::parse_mode(j.at("mode").get<std::string>());
    if (!mode) throw ParseError(1, "unknown mode: " + j.at("mode").dump());
    r.mode = *mode;
    for (const auto& a : j.at("assignments")) r.assignments.push_back(assignment_from(a));
    for (const auto& q : j.at("quarantine"))
      r.quarantine.push_back({q.at("doc_id").get<std::string>(), q.at("errors").get<std::vector<std::string>>()});
    for (const auto& t : j.at("topics")) r.topics.push_back(topic_from(t));
    for (const auto& g : j.at("groups")) r.groups.push_back(group_from(g));
    if (!j.at("hierarchy").is_null()) r.hierarchy = hierarchy_from(j.at("hierarchy"));
    for (const auto& e : j.at("trace"))
      r.trace.push_back({e.at("seq").get<std::uint64_t>(), e.at("stage").get<std::string>(),
                         e.at("doc_id").get<std::string>(), e.at("summary").get<std::string>(),
                         e.at("gateway_call").get<bool>()});
    return r;
  });
}

std::string serialize_result(const RunResult& r) { return to_json(r).dump(2) + "\n"; }

std::string serialize_trace(const std::vector<TraceEntry>& trace) {
  std::string out;
  for (const auto& e : trace)
    out += json{{"seq", e.seq},
                {"stage", e.stage},
                {"doc_id", e.doc_id},
                {"summary", e.summary},
                {"gateway_call", e.gateway_call}}
               .dump() +
           "\n";
  return out;
}

Orchestrator::Orchestrator(llm::Gateway& gateway, vecstore::VectorStore& store, WorkflowConfig config)
    : gateway_(gateway), store_(store), config_(std::move(config)) {
  config_.check();
}

RunResult Orchestrator::run(const corpus::Corpus& corpus) {
  return config_.mode == Mode::kSeeded ? run_seeded(corpus) : run_generative(corpus);
}

namespace {

class Runner {
 public:
  Runner(llm::Gateway& gateway, vecstore::VectorStore& store, const WorkflowConfig& config,
         const corpus::Corpus& corpus)
      : gateway_(gateway),
        store_(store),
        config_(config),
        corpus_(corpus),
        fingerprint_(fingerprint_of(corpus, config)) {
    options_.relevance_check = config.relevance_check;
    options_.merge_threshold = config.merge_threshold;
  }

  RunResult run() {
    restore();
    if (state_.stage == Stage::kDocuments) {
      document_stage();
      index_stage();
      state_.stage = Stage::kIndexed;
      checkpoint(true);
    }
    if (state_.stage == Stage::kIndexed) {
      if (config_.mode == Mode::kGenerative) corpus_stages();
      final_event();
      state_.stage = Stage::kFinal;
      checkpoint(true);
    }
    return assemble();
  }

 private:
  const agents::SeedSet* seeds() const { return config_.seeds ? &*config_.seeds : nullptr; }
  std::string vecstore_path() const { return config_.checkpoint_path + ".vecstore"; }

  void restore() {
    state_.docs.resize(corpus_.size());
    if (!config_.resume || !std::filesystem::exists(config_.checkpoint_path)) return;
    json j = parse_guard([&] { return json::parse(text::read_file(config_.checkpoint_path)); });
    state_ = state_from(j, corpus_.size(), fingerprint_);
    if (state_.stage != Stage::kDocuments) store_ = vecstore::VectorStore::load(vecstore_path());
  }

  // Caller holds mu_ when invoked from workers.
  void checkpoint(bool with_store) {
    if (config_.checkpoint_path.empty()) return;
    if (with_store) write_atomically(vecstore_path(), store_.serialize());
    write_atomically(config_.checkpoint_path, state_json(state_, fingerprint_).dump() + "\n");
  }

  DocOutcome process_document(agents::AgentTeam& team, const corpus::Document& doc) {
    DocOutcome out;
    out.done = true;
    std::vector<std::string> errors;
    for (int attempt = 0; attempt <= config_.review_retry_budget; ++attempt) {
      TopicAssignment a;
      try {
        a = team.identify_topics(doc, config_.mode, seeds(), errors, out.events);
      } catch (const agents::UnparseableReply& e) {
        errors = e.violations();
        continue;
      }
      auto verdict = team.review_topics(a, doc, config_.mode, seeds(), out.events);
      if (verdict.ok()) {
        if (config_.mode == Mode::kSeeded)
          for (auto& t : a.topics) t.name = *config_.seeds->match(t.name);
        out.assignment = std::move(a);
        return out;
      }
      errors = verdict.messages();
    }
    out.errors = errors;
    out.events.push_back({"quarantine", doc.id, text::join(errors, "; "), false});
    return out;
  }

  void document_stage() {
    const auto& docs = corpus_.documents();
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < docs.size(); ++i)
      if (!state_.docs[i].done) pending.push_back(i);
    if (pending.empty()) return;

    std::vector<std::exception_ptr> failures(docs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    int since_checkpoint = 0;
    auto worker = [&] {
      agents::AgentTeam team(gateway_, nullptr, options_);
      while (!abort.load()) {
        std::size_t k = next.fetch_add(1);
        if (k >= pending.size()) return;
        std::size_t i = pending[k];
        try {
          auto outcome = process_document(team, docs[i]);
          std::lock_guard lock(mu_);
          state_.docs[i] = std::move(outcome);
          if (++since_checkpoint >= config_.checkpoint_every) {
            since_checkpoint = 0;
            checkpoint(false);
          }
        } catch (...) {
          failures[i] = std::current_exception();
          abort.store(true);
        }
      }
    };
    {
      std::size_t n = std::min<std::size_t>(config_.concurrency_limit, pending.size());
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    for (const auto& f : failures)
      if (f) {
        checkpoint(false);
        std::rethrow_exception(f);
      }
  }

  void index_stage() {
    agents::AgentTeam team(gateway_, &store_, options_);
    for (auto& d : state_.docs) {
      if (d.indexed || !d.assignment) continue;
      team.index_topics(*d.assignment, d.events);
      d.indexed = true;
    }
  }

  void dedupe() {
    struct Seen {
      std::size_t index;
      std::string first_doc;
      std::vector<std::string> alternates;
    };
    std::map<std::string, Seen> seen;
    std::vector<std::string> order;
    std::size_t mentions = 0;
    for (const auto& d : state_.docs) {
      if (!d.assignment) continue;
      for (const auto& t : d.assignment->topics) {
        ++mentions;
        auto key = text::fold(t.name);
        auto it = seen.find(key);
        if (it == seen.end()) {
          seen.emplace(key, Seen{state_.topics.size(), d.assignment->doc_id, {}});
          order.push_back(key);
          state_.topics.push_back(t);
        } else {
          it->second.alternates.push_back(d.assignment->doc_id);
        }
      }
    }
    for (const auto& key : order) {
      const auto& s = seen.at(key);
      if (s.alternates.empty()) continue;
      state_.corpus_events.push_back({"dedupe", "-",
                                      state_.topics[s.index].name + ": kept explanation from " + s.first_doc +
                                          "; alternates from " + text::join(s.alternates, ", "),
                                      false});
    }
    state_.corpus_events.push_back(
        {"dedupe", "-", plural(state_.topics.size(), "unique topic") + " from " + plural(mentions, "mention"), false});
    state_.deduped = true;
  }

  void grouping_pass(agents::AgentTeam& team) {
    const int total = config_.refinement_iterations + 1;
    auto& ev = state_.corpus_events;
    ev.push_back({"grouping_pass", "-",
                  "pass " + std::to_string(state_.passes_done + 1) + " of " + std::to_string(total), false});
    std::vector<std::string> names;
    for (const auto& t : state_.topics) names.push_back(t.name);
    const hierarchy::TopicHierarchy* prior = state_.hierarchy ? &*state_.hierarchy : nullptr;

    std::optional<std::vector<agents::TopicGroup>> groups;
    std::vector<std::string> errors;
    for (int attempt = 0; attempt <= config_.review_retry_budget && !groups; ++attempt) {
      std::vector<agents::TopicGroup> candidate;
      try {
        candidate = team.group_topics(state_.topics, prior, errors, ev);
      } catch (const agents::UnparseableReply& e) {
        errors = e.violations();
        continue;
      }
      auto verdict = team.review_groups(candidate, names, ev);
      if (verdict.ok()) groups = std::move(candidate);
      else errors = verdict.messages();
    }
    if (!groups) throw StructuralViolation("topic grouping", errors);
    auto h = team.build_hierarchy(*groups, prior, config_.max_depth, config_.review_retry_budget, ev);
    state_.groups = std::move(*groups);
    state_.hierarchy = std::move(h);
    ++state_.passes_done;
  }

  void corpus_stages() {
    if (!state_.deduped) {
      dedupe();
      checkpoint(true);
    }
    if (state_.topics.empty()) return;
    agents::AgentTeam team(gateway_, &store_, options_);
    while (state_.passes_done < config_.refinement_iterations + 1) {
      grouping_pass(team);
      checkpoint(true);
    }
    std::vector<std::string> notes;
    auto pruned = hierarchy::prune_redundant(*state_.hierarchy, &notes);
    auto violations = hierarchy::violation_messages(hierarchy::validate(pruned));
    if (!violations.empty()) throw StructuralViolation("final hierarchy", violations);
    state_.hierarchy = std::move(pruned);
    auto s = hierarchy::stats(*state_.hierarchy);
    std::string summary = plural(s.topic_count, "topic") + ", " + plural(s.level_count, "level") + ", " +
                          plural(s.root_count, "root");
    if (!notes.empty()) summary += "; " + text::join(notes, "; ");
    state_.corpus_events.push_back({"prune", "-", summary, false});
  }

  void final_event() {
    std::size_t assigned = 0;
    for (const auto& d : state_.docs) assigned += d.assignment ? 1 : 0;
    std::string summary = std::string(agents::mode_name(config_.mode)) + ": " + plural(assigned, "assignment") +
                          ", " + std::to_string(corpus_.size() - assigned) + " quarantined";
    if (config_.mode == Mode::kGenerative && !state_.hierarchy) summary += "; no validated topics, hierarchy skipped";
    state_.corpus_events.push_back({"final", "-", summary, false});
  }

  RunResult assemble() const {
    RunResult r;
    r.mode = config_.mode;
    std::uint64_t seq = 0;
    auto append = [&](const TraceEvent& e) {
      r.trace.push_back({++seq, e.stage, e.doc_id, e.summary, e.gateway_call});
    };
    const auto& docs = corpus_.documents();
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto& d = state_.docs[i];
      if (d.assignment) r.assignments.push_back(*d.assignment);
      else r.quarantine.push_back({docs[i].id, d.errors});
      for (const auto& e : d.events) append(e);
    }
    for (const auto& e : state_.corpus_events) append(e);
    r.topics = state_.topics;
    r.groups = state_.groups;
    r.hierarchy = state_.hierarchy;
    return r;
  }

  llm::Gateway& gateway_;
  vecstore::VectorStore& store_;
  const WorkflowConfig& config_;
  const corpus::Corpus& corpus_;
  const std::string fingerprint_;
  agents::AgentOptions options_;
  State state_;
  std::mutex mu_;
};

}  // namespace

RunResult Orchestrator::run_seeded(const corpus::Corpus& corpus) {
  if (config_.mode != Mode::kSeeded) throw InvalidArgument("run_seeded needs a seeded configuration");
  return Runner(gateway_, store_, config_, corpus).run();
}

RunResult Orchestrator::run_generative(const corpus::Corpus& corpus) {
  if (config_.mode != Mode::kGenerative) throw InvalidArgument("run_generative needs a generative configuration");
  return Runner(gateway_, store_, config_, corpus).run();
}

}  // namespace agentopic::workflow
