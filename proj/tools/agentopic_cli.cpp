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

// agentopic command line: preprocess, run, record, eval, hierarchy.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "agentopic/agentopic.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Exit {
  int code;
};

[[noreturn]] void usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  throw Exit{kUsage};
}

[[noreturn]] void failure(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  throw Exit{kFailure};
}

void check(agt_status status) {
  if (status == AGT_OK) return;
  std::cerr << "error: " << agt_last_error() << "\n";
  throw Exit{status == AGT_NOT_FOUND || status == AGT_INVALID_ARGUMENT ? kUsage : kFailure};
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Corpus = Handle<agt_corpus, agt_corpus_free>;
using Gateway = Handle<agt_gateway, agt_gateway_free>;
using Run = Handle<agt_run, agt_run_free>;
using Report = Handle<agt_report, agt_report_free>;
using Hierarchy = Handle<agt_hierarchy, agt_hierarchy_free>;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { agt_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage("file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content)) failure("cannot write " + path);
}

// Config tree: file values, then --set overrides, then named flags.
class Settings {
 public:
  void load_file(const std::string& path) {
    json j;
    try {
      j = json::parse(read_text(path));
    } catch (const json::exception& e) {
      usage("config " + path + ": " + e.what());
    }
    if (!j.is_object()) usage("config " + path + ": expected a JSON object");
    const fs::path base = fs::absolute(path).parent_path();
    flatten(j, "", base);
  }

  void apply_set(const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) usage("--set expects key=value, got: " + assignment);
    std::string key = assignment.substr(0, eq), raw = assignment.substr(eq + 1);
    json value;
    try {
      value = json::parse(raw);
    } catch (const json::exception&) {
      value = raw;
    }
    values_[key] = value;
  }

  void set(const std::string& key, json value) { values_[key] = std::move(value); }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  template <typename T>
  T get(const std::string& key, T fallback) const {
    auto it = values_.find(key);
    if (it == values_.end() || it->second.is_null()) return fallback;
    try {
      return it->second.get<T>();
    } catch (const json::exception&) {
      usage("wrong type for setting " + key);
    }
  }

  std::string str(const std::string& key) const { return get<std::string>(key, ""); }

  void reject_unknown() const {
    static const std::set<std::string> known = {
        "paths.input", "paths.output", "paths.lexicons", "paths.predictions", "paths.run",
        "output.format", "backend.kind", "backend.fixture", "backend.record_to", "backend.base_url",
        "backend.chat_model", "backend.embedding_model", "backend.timeout_seconds", "backend.retry_budget",
        "backend.concurrency", "backend.backoff_ms", "backend.dim", "backend.seed", "backend.prompt_dir",
        "workflow.mode", "workflow.seeds", "workflow.refinement_iterations", "workflow.review_retry_budget",
        "workflow.max_depth", "workflow.concurrency", "workflow.relevance_check", "workflow.merge_threshold",
        "workflow.checkpoint_every", "workflow.resume", "eval.labels", "eval.model"};
    for (const auto& [k, v] : values_)
      if (!known.count(k)) usage("unknown setting: " + k);
  }

 private:
  void flatten(const json& j, const std::string& prefix, const fs::path& base) {
    for (const auto& [k, v] : j.items()) {
      std::string key = prefix.empty() ? k : prefix + "." + k;
      if (v.is_object()) {
        flatten(v, key, base);
        continue;
      }
      if (v.is_string() && is_path_key(key) && !v.get<std::string>().empty() &&
          fs::path(v.get<std::string>()).is_relative())
        values_[key] = (base / v.get<std::string>()).lexically_normal().string();
      else
        values_[key] = v;
    }
  }

  static bool is_path_key(const std::string& key) {
    return key.rfind("paths.", 0) == 0 || key == "backend.fixture" || key == "backend.record_to" ||
           key == "backend.prompt_dir" || key == "workflow.seeds";
  }

  std::map<std::string, json> values_;
};

struct CommonFlags {
  std::string config;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "JSON config file");
  cmd->add_option("--set", flags.sets, "Override a config value (dotted.key=value)");
}

Settings base_settings(const CommonFlags& flags) {
  Settings s;
  if (!flags.config.empty()) s.load_file(flags.config);
  for (const auto& a : flags.sets) s.apply_set(a);
  return s;
}

std::string format_for(const std::string& path, const std::string& requested) {
  if (!requested.empty()) return requested;
  auto ext = fs::path(path).extension().string();
  return ext == ".jsonl" || ext == ".ndjson" ? "jsonl" : "csv";
}

std::vector<std::string> read_seeds(const std::string& path) {
  std::vector<std::string> labels;
  std::istringstream in(read_text(path));
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    labels.push_back(line.substr(b, e - b + 1));
  }
  if (labels.empty()) usage("seed file has no labels: " + path);
  return labels;
}

void load_corpus(Corpus& corpus, const std::string& path) {
  if (path.empty()) usage("--input is required");
  if (!fs::exists(path)) usage("file not found: " + path);
  check(agt_corpus_load(path.c_str(), nullptr, corpus.out()));
}

// ---------------------------------------------------------------- preprocess

int cmd_preprocess(const Settings& s) {
  const auto input = s.str("paths.input"), output = s.str("paths.output");
  if (output.empty()) usage("--output is required");
  Corpus corpus;
  load_corpus(corpus, input);
  const auto lexicons = s.str("paths.lexicons");
  size_t before = 0, after = 0;
  check(agt_corpus_preprocess(corpus.get(), lexicons.empty() ? nullptr : lexicons.c_str(), &before, &after));
  const auto fmt = format_for(output, s.str("output.format"));
  check(agt_corpus_save(corpus.get(), output.c_str(), fmt.c_str()));
  std::cout << "documents: " << agt_corpus_size(corpus.get()) << "\n"
            << "vocabulary before: " << before << "\n"
            << "vocabulary after: " << after << "\n";
  return kOk;
}

// ---------------------------------------------------------------- run / record

json gateway_config(const Settings& s) {
  json g = json::object();
  g["backend"] = s.get<std::string>("backend.kind", "replay");
  for (const char* k : {"fixture", "record_to", "base_url", "chat_model", "embedding_model", "prompt_dir"})
    if (s.has(std::string("backend.") + k)) g[k] = s.str(std::string("backend.") + k);
  for (const char* k : {"timeout_seconds", "retry_budget", "concurrency", "backoff_ms", "dim", "seed"})
    if (s.has(std::string("backend.") + k)) g[k] = s.get<long long>(std::string("backend.") + k, 0);
  if (g["backend"] == "live") {
    if (const char* key = std::getenv("AGENTOPIC_API_KEY")) g["api_key"] = key;
  }
  if (g["backend"] == "replay" && !g.contains("fixture")) usage("the replay backend needs --fixture");
  if (g["backend"] == "replay" && !fs::exists(g["fixture"].get<std::string>()))
    usage("file not found: " + g["fixture"].get<std::string>());
  return g;
}

int cmd_run(const Settings& s, bool resume) {
  const auto input = s.str("paths.input"), output = s.str("paths.output");
  if (output.empty()) usage("--output is required");
  const auto mode = s.get<std::string>("workflow.mode", "seeded");
  if (mode != "seeded" && mode != "generative") usage("--mode must be seeded or generative");
  const auto seeds_path = s.str("workflow.seeds");
  if (mode == "seeded" && seeds_path.empty()) usage("seeded mode requires --seeds");
  if (mode == "generative" && !seeds_path.empty()) usage("generative mode does not take --seeds");

  Corpus corpus;
  load_corpus(corpus, input);
  json wc = {{"mode", mode}, {"checkpoint", (fs::path(output) / "checkpoint.json").string()}, {"resume", resume}};
  if (!seeds_path.empty()) wc["seeds"] = read_seeds(seeds_path);
  for (const char* k : {"refinement_iterations", "review_retry_budget", "max_depth", "concurrency",
                        "checkpoint_every"})
    if (s.has(std::string("workflow.") + k)) wc[k] = s.get<long long>(std::string("workflow.") + k, 0);
  if (s.has("workflow.relevance_check")) wc["relevance_check"] = s.get<bool>("workflow.relevance_check", true);
  if (s.has("workflow.merge_threshold")) wc["merge_threshold"] = s.get<double>("workflow.merge_threshold", 0.95);
  if (s.has("workflow.resume")) wc["resume"] = resume || s.get<bool>("workflow.resume", false);

  std::error_code ec;
  fs::create_directories(output, ec);
  if (ec) failure("cannot create " + output + ": " + ec.message());

  Gateway gateway;
  check(agt_gateway_create(gateway_config(s).dump().c_str(), gateway.out()));
  Run run;
  auto status = agt_run_execute(gateway.get(), corpus.get(), wc.dump().c_str(), run.out());
  if (status != AGT_OK) failure(std::string("run aborted: ") + agt_last_error());
  const auto fmt = format_for(input, s.str("output.format"));
  check(agt_run_write_outputs(run.get(), corpus.get(), output.c_str(), fmt.c_str()));
  size_t assigned = 0, quarantined = 0, trace = 0;
  check(agt_run_counts(run.get(), &assigned, &quarantined, &trace));
  std::cout << "assigned: " << assigned << "\n"
            << "quarantined: " << quarantined << "\n"
            << "trace entries: " << trace << "\n"
            << "gateway calls: " << agt_gateway_call_count(gateway.get()) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const Settings& s) {
  Corpus truth;
  load_corpus(truth, s.str("paths.input"));
  const auto predictions = s.str("paths.predictions"), run_path = s.str("paths.run");
  if (predictions.empty() == run_path.empty()) usage("give exactly one of --predictions or --run");
  std::optional<std::string> labels;
  if (s.has("eval.labels")) {
    std::vector<std::string> list;
    std::stringstream ss(s.str("eval.labels"));
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) list.push_back(item);
    labels = json(list).dump();
  } else if (s.has("workflow.seeds")) {
    labels = json(read_seeds(s.str("workflow.seeds"))).dump();
  }
  const char* labels_arg = labels ? labels->c_str() : nullptr;

  Report report;
  if (!predictions.empty()) {
    if (!fs::exists(predictions)) usage("file not found: " + predictions);
    auto status = agt_eval_predictions(truth.get(), predictions.c_str(), labels_arg, report.out());
    if (status != AGT_OK) failure(agt_last_error());
  } else {
    if (!fs::exists(run_path)) usage("file not found: " + run_path);
    Run run;
    check(agt_run_load(run_path.c_str(), run.out()));
    auto status = agt_eval_run(truth.get(), run.get(), labels_arg, report.out());
    if (status != AGT_OK) failure(agt_last_error());
  }
  OwnedString table, report_json;
  const auto model = s.get<std::string>("eval.model", "agentopic");
  check(agt_report_render_table(report.get(), model.c_str(), table.out()));
  std::cout << table.str();
  const auto output = s.str("paths.output");
  if (!output.empty()) {
    check(agt_report_to_json(report.get(), report_json.out()));
    write_text(output, report_json.str());
  }
  return kOk;
}

// ---------------------------------------------------------------- hierarchy

int cmd_hierarchy(const std::string& action, const Settings& s, const std::string& export_format) {
  const auto input = s.str("paths.input"), output = s.str("paths.output");
  if (input.empty()) usage("--input is required");
  if (!fs::exists(input)) usage("file not found: " + input);
  Hierarchy h;
  check(agt_hierarchy_load(input.c_str(), h.out()));

  auto emit = [&](const std::string& text) {
    if (output.empty()) std::cout << text;
    else write_text(output, text);
  };
  auto print_violations = [](const std::string& violations_json) {
    auto v = json::parse(violations_json);
    for (const auto& m : v) std::cerr << m.get<std::string>() << "\n";
    return v.size();
  };

  if (action == "validate") {
    OwnedString v;
    check(agt_hierarchy_validate(h.get(), v.out()));
    if (print_violations(v.str()) > 0) return kFailure;
    std::cout << "valid\n";
    return kOk;
  }
  if (action == "stats") {
    size_t topics = 0, levels = 0, roots = 0;
    check(agt_hierarchy_stats(h.get(), &topics, &levels, &roots));
    std::cout << "topic_count: " << topics << "\nlevel_count: " << levels << "\nroot_count: " << roots << "\n";
    return kOk;
  }
  if (action == "prune") {
    Hierarchy pruned;
    OwnedString notes, text;
    check(agt_hierarchy_prune(h.get(), pruned.out(), notes.out()));
    for (const auto& n : json::parse(notes.str())) std::cerr << "note: " << n.get<std::string>() << "\n";
    OwnedString v;
    check(agt_hierarchy_validate(pruned.get(), v.out()));
    if (print_violations(v.str()) > 0) return kFailure;
    check(agt_hierarchy_export(pruned.get(), "structured", text.out()));
    emit(text.str());
    return kOk;
  }
  OwnedString v, text;
  check(agt_hierarchy_validate(h.get(), v.out()));
  if (print_violations(v.str()) > 0) return kFailure;
  check(agt_hierarchy_export(h.get(), export_format.c_str(), text.out()));
  emit(text.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explainable topic modeling with cooperating LLM agents"};
  app.require_subcommand(1);
  app.set_version_flag("--version", agt_version());

  CommonFlags common;
  std::string input, output, mode, seeds, fixture, backend, lexicons, format, predictions, run_path, labels, model;
  std::optional<int> refinement, retry_budget, max_depth, concurrency;
  bool resume = false, no_relevance = false;

  auto* pre = app.add_subcommand("preprocess", "Clean descriptions and report vocabulary sizes");
  pre->add_option("--input", input, "Input corpus (.csv or .jsonl)");
  pre->add_option("--output", output, "Output corpus");
  pre->add_option("--lexicons", lexicons, "Directory with contractions.tsv, stopwords.txt, verb_lemmas.tsv");
  pre->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  add_common(pre, common);

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "Input corpus (.csv or .jsonl)");
    cmd->add_option("--output", output, "Output directory");
    cmd->add_option("--mode", mode, "seeded or generative")->check(CLI::IsMember({"seeded", "generative"}));
    cmd->add_option("--seeds", seeds, "Seed label file, one label per line");
    cmd->add_option("--fixture", fixture, "Replay fixture (run) or fixture to write (record)");
    cmd->add_option("--backend", backend, "live, replay or mock")->check(CLI::IsMember({"live", "replay", "mock"}));
    cmd->add_option("--refinement-iterations", refinement, "Extra grouping and hierarchy passes")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--retry-budget", retry_budget, "Review fix-errors retries")->check(CLI::PositiveNumber);
    cmd->add_option("--max-depth", max_depth, "Maximum hierarchy depth")->check(CLI::PositiveNumber);
    cmd->add_option("--concurrency", concurrency, "Documents processed in parallel")->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "Augmented output format")->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_flag("--resume", resume, "Continue from <output>/checkpoint.json");
    cmd->add_flag("--no-relevance-check", no_relevance, "Skip the reviewer's relevance judgment");
    add_common(cmd, common);
  };
  auto* run = app.add_subcommand("run", "Run the topic modeling workflow");
  add_run_flags(run);
  auto* record = app.add_subcommand("record", "Run against mock or live backend and write a replay fixture");
  add_run_flags(record);

  auto* ev = app.add_subcommand("eval", "Score seeded predictions against ground truth");
  ev->add_option("--input", input, "Ground-truth corpus with a category column");
  ev->add_option("--predictions", predictions, "Prediction file (id, predicted_label) or augmented output");
  ev->add_option("--run", run_path, "run_result.json of a seeded run");
  ev->add_option("--labels", labels, "Comma-separated label order");
  ev->add_option("--seeds", seeds, "Seed file giving the label order");
  ev->add_option("--model", model, "Model name for the report row");
  ev->add_option("--output", output, "Write the JSON report here");
  add_common(ev, common);

  auto* hier = app.add_subcommand("hierarchy", "Validate, prune, summarize or export a topic hierarchy");
  hier->require_subcommand(1);
  std::string export_format = "structured";
  const std::pair<const char*, const char*> hier_commands[] = {
      {"validate", "Report rule violations, one per line"},
      {"prune", "Collapse self-named children and repair the tree"},
      {"stats", "Print topic, level and root counts"},
      {"export", "Write the tree as structured JSON or DOT"}};
  for (const auto& [name, about] : hier_commands) {
    auto* sub = hier->add_subcommand(name, about);
    sub->add_option("--input", input, "Structured hierarchy file")->required();
    if (std::string(name) == "prune" || std::string(name) == "export")
      sub->add_option("--output", output, "Output file (default stdout)");
    if (std::string(name) == "export")
      sub->add_option("--format", export_format, "structured or dot")->check(CLI::IsMember({"structured", "dot"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Settings s = base_settings(common);
    auto flag = [&](const char* key, const std::string& v) {
      if (!v.empty()) s.set(key, v);
    };
    flag("paths.input", input);
    flag("paths.output", output);
    flag("paths.lexicons", lexicons);
    flag("paths.predictions", predictions);
    flag("paths.run", run_path);
    flag("output.format", format);
    flag("workflow.mode", mode);
    flag("workflow.seeds", seeds);
    flag("backend.fixture", fixture);
    flag("backend.kind", backend);
    flag("eval.labels", labels);
    flag("eval.model", model);
    if (refinement) s.set("workflow.refinement_iterations", *refinement);
    if (retry_budget) s.set("workflow.review_retry_budget", *retry_budget);
    if (max_depth) s.set("workflow.max_depth", *max_depth);
    if (concurrency) {
      s.set("workflow.concurrency", *concurrency);
      s.set("backend.concurrency", *concurrency);
    }
    if (no_relevance) s.set("workflow.relevance_check", false);
    s.reject_unknown();

    if (pre->parsed()) return cmd_preprocess(s);
    if (run->parsed()) return cmd_run(s, resume);
    if (record->parsed()) {
      if (!s.has("backend.kind")) s.set("backend.kind", "mock");
      if (s.str("backend.kind") == "replay") usage("record needs the mock or live backend");
      const auto target = s.str("backend.fixture");
      if (target.empty()) usage("record requires --fixture");
      std::error_code ec;
      fs::remove(target, ec);
      s.set("backend.record_to", target);
      return cmd_run(s, resume);
    }
    if (ev->parsed()) return cmd_eval(s);
    for (auto* sub : hier->get_subcommands())
      if (sub->parsed()) return cmd_hierarchy(sub->get_name(), s, export_format);
    return kUsage;
  } catch (const Exit& e) {
    return e.code;
  }
}
