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

#include "agentopic/agentopic.h"

#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "common/errors.hpp"
#include "common/text.hpp"
#include "corpus/corpus.hpp"
#include "corpus/preprocess.hpp"
#include "evalkit/evalkit.hpp"
#include "hierarchy/hierarchy.hpp"
#include "llm/fixture.hpp"
#include "llm/gateway.hpp"
#include "llm/http_backend.hpp"
#include "llm/mock.hpp"
#include "orchestrator/augment.hpp"
#include "orchestrator/workflow.hpp"
#include "vecstore/vector_store.hpp"

using namespace agentopic;
using nlohmann::json;

struct agt_corpus {
  corpus::Corpus value;
};

struct agt_gateway {
  std::unique_ptr<llm::Gateway> gateway;
};

struct agt_vecstore {
  vecstore::VectorStore value;
};

struct agt_hierarchy {
  hierarchy::TopicHierarchy value;
};

struct agt_run {
  workflow::RunResult result;
  vecstore::VectorStore store;
};

struct agt_report {
  eval::EvalReport value;
};

namespace {

thread_local std::string g_last_error;

agt_status fail(agt_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
agt_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return AGT_OK;
  } catch (const Error& e) {
    return fail(static_cast<agt_status>(e.code()), e.what());
  } catch (const json::exception& e) {
    return fail(AGT_MALFORMED, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AGT_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AGT_INTERNAL, e.what());
  } catch (...) {
    return fail(AGT_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (!p) throw InvalidArgument(std::string(name) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

corpus::Format format_arg(const char* format, const std::string& path) {
  if (!format) return corpus::format_from_path(path);
  auto f = corpus::parse_format(format);
  if (!f) throw InvalidArgument(std::string("unknown format: ") + format);
  return *f;
}

json parse_config(const char* text) {
  if (!text || !*text) return json::object();
  json j = json::parse(text);
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  return j;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known) {
  std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw InvalidArgument("unknown config key: " + k);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("wrong type for config key ") + key);
  }
}

corpus::PreprocessConfig lexicons(const char* dir) {
  return dir ? corpus::PreprocessConfig::from_directory(dir) : corpus::PreprocessConfig::bundled();
}

std::vector<std::string> labels_arg(const char* labels_json, const corpus::Corpus& c) {
  if (!labels_json) return eval::corpus_labels(c);
  auto j = json::parse(labels_json);
  return j.get<std::vector<std::string>>();
}

}  // namespace

extern "C" {

const char* agt_version(void) { return "1.0.0"; }

const char* agt_status_name(agt_status status) {
  switch (status) {
    case AGT_OK: return "ok";
    case AGT_INVALID_ARGUMENT: return "invalid argument";
    case AGT_IO: return "io error";
    case AGT_NOT_FOUND: return "not found";
    case AGT_MALFORMED: return "malformed input";
    case AGT_DUPLICATE_ID: return "duplicate id";
    case AGT_EMPTY: return "empty input";
    case AGT_DIMENSION_MISMATCH: return "dimension mismatch";
    case AGT_ZERO_VECTOR: return "zero vector";
    case AGT_TRANSPORT: return "transport error";
    case AGT_RATE_LIMITED: return "rate limited";
    case AGT_FIXTURE_MISS: return "fixture miss";
    case AGT_UNPARSEABLE_REPLY: return "unparseable reply";
    case AGT_INVALID_HIERARCHY: return "invalid hierarchy";
    case AGT_STRUCTURAL_VIOLATION: return "structural violation";
    case AGT_EVALUATION: return "evaluation error";
    case AGT_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* agt_last_error(void) { return g_last_error.c_str(); }

void agt_string_free(char* s) { std::free(s); }

agt_status agt_corpus_load(const char* path, const char* format, agt_corpus** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new agt_corpus{corpus::load_corpus(path, format_arg(format, path))};
  });
}

agt_status agt_corpus_parse(const char* text, const char* format, agt_corpus** out) {
  return guarded([&] {
    require(text, "text");
    require(format, "format");
    require(out, "out");
    *out = new agt_corpus{corpus::parse_corpus(text, format_arg(format, ""))};
  });
}

agt_status agt_corpus_save(const agt_corpus* c, const char* path, const char* format) {
  return guarded([&] {
    require(c, "corpus");
    require(path, "path");
    corpus::save_corpus(c->value, path, format_arg(format, path));
  });
}

size_t agt_corpus_size(const agt_corpus* c) { return c ? c->value.size() : 0; }

agt_status agt_corpus_labels(const agt_corpus* c, char** labels_json) {
  return guarded([&] {
    require(c, "corpus");
    require(labels_json, "labels_json");
    *labels_json = dup(json(eval::corpus_labels(c->value)).dump());
  });
}

agt_status agt_corpus_preprocess(agt_corpus* c, const char* lexicon_dir, size_t* vocab_before,
                                 size_t* vocab_after) {
  return guarded([&] {
    require(c, "corpus");
    auto report = corpus::preprocess_corpus(c->value, lexicons(lexicon_dir));
    if (vocab_before) *vocab_before = report.before;
    if (vocab_after) *vocab_after = report.after;
  });
}

void agt_corpus_free(agt_corpus* c) { delete c; }

agt_status agt_preprocess_text(const char* text, const char* lexicon_dir, char** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = dup(corpus::preprocess(text, lexicons(lexicon_dir)));
  });
}

agt_status agt_gateway_create(const char* config_json, agt_gateway** out) {
  return guarded([&] {
    require(out, "out");
    auto cfg = parse_config(config_json);
    reject_unknown(cfg, {"backend", "fixture", "record_to", "base_url", "chat_model", "embedding_model", "api_key",
                         "timeout_seconds", "dim", "seed", "retry_budget", "concurrency", "backoff_ms",
                         "prompt_dir"});
    const auto backend = get_or<std::string>(cfg, "backend", "replay");
    std::shared_ptr<llm::ProviderBackend> provider;
    if (backend == "replay") {
      auto fixture = get_or<std::string>(cfg, "fixture", "");
      if (fixture.empty()) throw InvalidArgument("replay backend requires a fixture");
      provider = llm::ReplayBackend::from_file(fixture);
    } else if (backend == "mock") {
      provider = std::make_shared<llm::MockBackend>(get_or<std::size_t>(cfg, "dim", 64),
                                                    get_or<std::uint64_t>(cfg, "seed", 0x5eedULL));
    } else if (backend == "live") {
      llm::HttpBackendConfig http;
      http.base_url = get_or(cfg, "base_url", http.base_url);
      http.chat_model = get_or(cfg, "chat_model", http.chat_model);
      http.embedding_model = get_or(cfg, "embedding_model", http.embedding_model);
      http.api_key = get_or(cfg, "api_key", http.api_key);
      http.timeout_seconds = get_or(cfg, "timeout_seconds", http.timeout_seconds);
      provider = std::make_shared<llm::HttpBackend>(http);
    } else {
      throw InvalidArgument("unknown backend: " + backend);
    }
    auto record_to = get_or<std::string>(cfg, "record_to", "");
    if (!record_to.empty()) provider = std::make_shared<llm::RecordingBackend>(provider, record_to);

    llm::GatewayOptions options;
    options.retry_budget = get_or(cfg, "retry_budget", options.retry_budget);
    options.concurrency_limit = get_or(cfg, "concurrency", options.concurrency_limit);
    options.backoff_base = std::chrono::milliseconds(get_or<long>(cfg, "backoff_ms", options.backoff_base.count()));
    if (options.retry_budget < 1) throw InvalidArgument("retry_budget must be positive");
    if (options.concurrency_limit < 1) throw InvalidArgument("concurrency must be positive");
    auto prompt_dir = get_or<std::string>(cfg, "prompt_dir", "");
    auto templates = prompt_dir.empty() ? llm::TemplateStore::bundled() : llm::TemplateStore::with_overrides(prompt_dir);
    *out = new agt_gateway{std::make_unique<llm::Gateway>(provider, std::move(templates), options)};
  });
}

agt_status agt_gateway_complete(agt_gateway* g, const char* request_json, char** reply_json) {
  return guarded([&] {
    require(g, "gateway");
    require(request_json, "request_json");
    require(reply_json, "reply_json");
    auto j = json::parse(request_json);
    llm::PromptRequest req;
    req.template_id = j.at("template_id").get<std::string>();
    req.response_schema_id = j.at("schema").get<std::string>();
    if (j.contains("variables")) req.variables = j["variables"].get<std::map<std::string, std::string>>();
    auto reply = g->gateway->complete(req);
    *reply_json = dup(json{{"raw_text", reply.raw_text},
                           {"parsed", reply.parsed ? *reply.parsed : json(nullptr)},
                           {"format_errors", reply.format_errors}}
                          .dump());
  });
}

agt_status agt_gateway_embed(agt_gateway* g, const char* text, char** vector_json) {
  return guarded([&] {
    require(g, "gateway");
    require(text, "text");
    require(vector_json, "vector_json");
    *vector_json = dup(json(g->gateway->embed(text).values).dump());
  });
}

uint64_t agt_gateway_call_count(const agt_gateway* g) { return g ? g->gateway->call_count() : 0; }

void agt_gateway_free(agt_gateway* g) { delete g; }

agt_status agt_vecstore_create(agt_vecstore** out) {
  return guarded([&] {
    require(out, "out");
    *out = new agt_vecstore{};
  });
}

agt_status agt_vecstore_load(const char* path, agt_vecstore** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new agt_vecstore{vecstore::VectorStore::load(path)};
  });
}

agt_status agt_vecstore_save(const agt_vecstore* s, const char* path) {
  return guarded([&] {
    require(s, "store");
    require(path, "path");
    s->value.save(path);
  });
}

agt_status agt_vecstore_upsert(agt_vecstore* s, const char* id, const char* kind, const char* text,
                               const double* values, size_t dim) {
  return guarded([&] {
    require(s, "store");
    require(id, "id");
    require(kind, "kind");
    require(values, "values");
    auto k = vecstore::parse_kind(kind);
    if (!k) throw InvalidArgument(std::string("unknown item kind: ") + kind);
    s->value.upsert({id, *k, text ? text : "", {std::vector<double>(values, values + dim)}});
  });
}

agt_status agt_vecstore_nearest(const agt_vecstore* s, const double* query, size_t dim, size_t k, const char* kind,
                                char** hits_json) {
  return guarded([&] {
    require(s, "store");
    require(query, "query");
    require(hits_json, "hits_json");
    std::optional<vecstore::ItemKind> filter;
    if (kind) {
      filter = vecstore::parse_kind(kind);
      if (!filter) throw InvalidArgument(std::string("unknown item kind: ") + kind);
    }
    json hits = json::array();
    for (const auto& h : s->value.nearest({std::vector<double>(query, query + dim)}, k, filter))
      hits.push_back({{"id", h.id}, {"score", h.score}});
    *hits_json = dup(hits.dump());
  });
}

size_t agt_vecstore_size(const agt_vecstore* s) { return s ? s->value.size() : 0; }

void agt_vecstore_free(agt_vecstore* s) { delete s; }

agt_status agt_hierarchy_parse(const char* text, agt_hierarchy** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new agt_hierarchy{hierarchy::parse_structured(text)};
  });
}

agt_status agt_hierarchy_load(const char* path, agt_hierarchy** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new agt_hierarchy{hierarchy::parse_structured(text::read_file(path))};
  });
}

agt_status agt_hierarchy_validate(const agt_hierarchy* h, char** violations_json) {
  return guarded([&] {
    require(h, "hierarchy");
    require(violations_json, "violations_json");
    *violations_json = dup(json(hierarchy::violation_messages(hierarchy::validate(h->value))).dump());
  });
}

agt_status agt_hierarchy_prune(const agt_hierarchy* h, agt_hierarchy** out, char** notes_json) {
  return guarded([&] {
    require(h, "hierarchy");
    require(out, "out");
    std::vector<std::string> notes;
    auto pruned = hierarchy::prune_redundant(h->value, &notes);
    if (notes_json) *notes_json = dup(json(notes).dump());
    *out = new agt_hierarchy{std::move(pruned)};
  });
}

agt_status agt_hierarchy_stats(const agt_hierarchy* h, size_t* topic_count, size_t* level_count,
                               size_t* root_count) {
  return guarded([&] {
    require(h, "hierarchy");
    auto s = hierarchy::stats(h->value);
    if (topic_count) *topic_count = s.topic_count;
    if (level_count) *level_count = s.level_count;
    if (root_count) *root_count = s.root_count;
  });
}

agt_status agt_hierarchy_export(const agt_hierarchy* h, const char* format, char** out) {
  return guarded([&] {
    require(h, "hierarchy");
    require(format, "format");
    require(out, "out");
    std::string f = format;
    hierarchy::ExportFormat ef;
    if (f == "structured") ef = hierarchy::ExportFormat::kStructured;
    else if (f == "dot") ef = hierarchy::ExportFormat::kDot;
    else throw InvalidArgument("unknown export format: " + f);
    *out = dup(hierarchy::export_hierarchy(h->value, ef));
  });
}

void agt_hierarchy_free(agt_hierarchy* h) { delete h; }

agt_status agt_run_execute(agt_gateway* g, const agt_corpus* c, const char* config_json, agt_run** out) {
  return guarded([&] {
    require(g, "gateway");
    require(c, "corpus");
    require(out, "out");
    auto cfg = parse_config(config_json);
    reject_unknown(cfg, {"mode", "seeds", "refinement_iterations", "review_retry_budget", "max_depth", "concurrency",
                         "relevance_check", "merge_threshold", "checkpoint", "checkpoint_every", "resume"});
    workflow::WorkflowConfig wc;
    auto mode_text = get_or<std::string>(cfg, "mode", "seeded");
    auto mode = agents::parse_mode(mode_text);
    if (!mode) throw InvalidArgument("unknown mode: " + mode_text);
    wc.mode = *mode;
    if (cfg.contains("seeds") && !cfg["seeds"].is_null())
      wc.seeds.emplace(get_or<std::vector<std::string>>(cfg, "seeds", {}));
    wc.refinement_iterations = get_or(cfg, "refinement_iterations", wc.refinement_iterations);
    wc.review_retry_budget = get_or(cfg, "review_retry_budget", wc.review_retry_budget);
    wc.max_depth = get_or(cfg, "max_depth", wc.max_depth);
    wc.concurrency_limit = get_or(cfg, "concurrency", wc.concurrency_limit);
    wc.relevance_check = get_or(cfg, "relevance_check", wc.relevance_check);
    wc.merge_threshold = get_or(cfg, "merge_threshold", wc.merge_threshold);
    wc.checkpoint_path = get_or<std::string>(cfg, "checkpoint", "");
    wc.checkpoint_every = get_or(cfg, "checkpoint_every", wc.checkpoint_every);
    wc.resume = get_or(cfg, "resume", false);
    auto run = std::make_unique<agt_run>();
    workflow::Orchestrator orchestrator(*g->gateway, run->store, std::move(wc));
    run->result = orchestrator.run(c->value);
    *out = run.release();
  });
}

agt_status agt_run_load(const char* path, agt_run** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto j = json::parse(text::read_file(path));
    *out = new agt_run{workflow::run_result_from_json(j), {}};
  });
}

agt_status agt_run_counts(const agt_run* r, size_t* assigned, size_t* quarantined, size_t* trace_entries) {
  return guarded([&] {
    require(r, "run");
    if (assigned) *assigned = r->result.assignments.size();
    if (quarantined) *quarantined = r->result.quarantine.size();
    if (trace_entries) *trace_entries = r->result.trace.size();
  });
}

agt_status agt_run_write_outputs(const agt_run* r, const agt_corpus* c, const char* dir, const char* format) {
  return guarded([&] {
    require(r, "run");
    require(c, "corpus");
    require(dir, "dir");
    auto fmt = format ? format_arg(format, "") : corpus::Format::kCsv;
    std::filesystem::path base(dir);
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec) throw IoError("cannot create " + base.string() + ": " + ec.message());
    auto path = [&](const char* name) { return (base / name).string(); };
    workflow::write_augmented(c->value, r->result,
                              path(fmt == corpus::Format::kCsv ? "augmented.csv" : "augmented.jsonl"), fmt);
    text::write_file(path("trace.jsonl"), workflow::serialize_trace(r->result.trace));
    text::write_file(path("run_result.json"), workflow::serialize_result(r->result));
    r->store.save(path("vecstore.txt"));
    if (r->result.hierarchy) {
      text::write_file(path("hierarchy.structured"),
                       hierarchy::export_hierarchy(*r->result.hierarchy, hierarchy::ExportFormat::kStructured));
      text::write_file(path("hierarchy.dot"),
                       hierarchy::export_hierarchy(*r->result.hierarchy, hierarchy::ExportFormat::kDot));
    }
  });
}

agt_status agt_run_to_json(const agt_run* r, char** out) {
  return guarded([&] {
    require(r, "run");
    require(out, "out");
    *out = dup(workflow::serialize_result(r->result));
  });
}

void agt_run_free(agt_run* r) { delete r; }

agt_status agt_eval_predictions(const agt_corpus* truth, const char* predictions_path, const char* labels_json,
                                agt_report** out) {
  return guarded([&] {
    require(truth, "truth");
    require(predictions_path, "predictions_path");
    require(out, "out");
    auto preds = eval::load_predictions(predictions_path);
    *out = new agt_report{eval::score_predictions(preds, truth->value, labels_arg(labels_json, truth->value))};
  });
}

agt_status agt_eval_run(const agt_corpus* truth, const agt_run* run, const char* labels_json, agt_report** out) {
  return guarded([&] {
    require(truth, "truth");
    require(run, "run");
    require(out, "out");
    *out = new agt_report{eval::score_run(run->result, truth->value, labels_arg(labels_json, truth->value))};
  });
}

double agt_report_macro_f1(const agt_report* r) { return r ? r->value.macro_f1 : 0.0; }

agt_status agt_report_render_table(const agt_report* r, const char* model_name, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup(eval::render_table({{model_name ? model_name : "agentopic", r->value}}, r->value.labels()));
  });
}

agt_status agt_report_to_json(const agt_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup(eval::to_json(r->value).dump(2) + "\n");
  });
}

void agt_report_free(agt_report* r) { delete r; }

}  // extern "C"
