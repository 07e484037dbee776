/* Copyright 2026 The Agentopic Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the agentopic library.
 *
 * Every function that can fail returns an agt_status; on failure the message
 * is available from agt_last_error() on the same thread until the next call.
 * Strings returned through char** are heap allocated and must be released
 * with agt_string_free. Handles are released with their *_free function;
 * passing NULL to any *_free is a no-op.
 */
#ifndef AGENTOPIC_AGENTOPIC_H_
#define AGENTOPIC_AGENTOPIC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AGT_API __declspec(dllexport)
#elif defined(__GNUC__)
#define AGT_API __attribute__((visibility("default")))
#else
#define AGT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum agt_status {
  AGT_OK = 0,
  AGT_INVALID_ARGUMENT = 1,
  AGT_IO = 2,
  AGT_NOT_FOUND = 3,
  AGT_MALFORMED = 4,
  AGT_DUPLICATE_ID = 5,
  AGT_EMPTY = 6,
  AGT_DIMENSION_MISMATCH = 7,
  AGT_ZERO_VECTOR = 8,
  AGT_TRANSPORT = 9,
  AGT_RATE_LIMITED = 10,
  AGT_FIXTURE_MISS = 11,
  AGT_UNPARSEABLE_REPLY = 12,
  AGT_INVALID_HIERARCHY = 13,
  AGT_STRUCTURAL_VIOLATION = 14,
  AGT_EVALUATION = 15,
  AGT_INTERNAL = 99
} agt_status;

AGT_API const char* agt_version(void);
AGT_API const char* agt_status_name(agt_status status);
AGT_API const char* agt_last_error(void);
AGT_API void agt_string_free(char* s);

/* Corpus. `format` is "csv", "jsonl", or NULL to infer from the path. */
typedef struct agt_corpus agt_corpus;

AGT_API agt_status agt_corpus_load(const char* path, const char* format, agt_corpus** out);
AGT_API agt_status agt_corpus_parse(const char* text, const char* format, agt_corpus** out);
AGT_API agt_status agt_corpus_save(const agt_corpus* corpus, const char* path, const char* format);
AGT_API size_t agt_corpus_size(const agt_corpus* corpus);
/* JSON array of the sorted category labels. */
AGT_API agt_status agt_corpus_labels(const agt_corpus* corpus, char** labels_json);
/* `lexicon_dir` NULL selects the bundled lexicons. */
AGT_API agt_status agt_corpus_preprocess(agt_corpus* corpus, const char* lexicon_dir, size_t* vocab_before,
                                         size_t* vocab_after);
AGT_API void agt_corpus_free(agt_corpus* corpus);

AGT_API agt_status agt_preprocess_text(const char* text, const char* lexicon_dir, char** out);

/* Provider gateway. The config is a JSON object:
 *   backend          "replay" | "mock" | "live"        (default "replay")
 *   fixture          replay file, required for replay
 *   record_to        append every exchange to this fixture file
 *   base_url, chat_model, embedding_model, api_key, timeout_seconds   (live)
 *   dim, seed        mock embedding shape
 *   retry_budget, concurrency, backoff_ms
 *   prompt_dir       directory of <template>.txt overrides
 */
typedef struct agt_gateway agt_gateway;

AGT_API agt_status agt_gateway_create(const char* config_json, agt_gateway** out);
/* Request: {"template_id", "variables": {...}, "schema"}. Reply:
 * {"raw_text", "parsed" (or null), "format_errors": [...]}. */
AGT_API agt_status agt_gateway_complete(agt_gateway* gateway, const char* request_json, char** reply_json);
AGT_API agt_status agt_gateway_embed(agt_gateway* gateway, const char* text, char** vector_json);
AGT_API uint64_t agt_gateway_call_count(const agt_gateway* gateway);
AGT_API void agt_gateway_free(agt_gateway* gateway);

/* Vector store. `kind` is "topic" or "group". */
typedef struct agt_vecstore agt_vecstore;

AGT_API agt_status agt_vecstore_create(agt_vecstore** out);
AGT_API agt_status agt_vecstore_load(const char* path, agt_vecstore** out);
AGT_API agt_status agt_vecstore_save(const agt_vecstore* store, const char* path);
AGT_API agt_status agt_vecstore_upsert(agt_vecstore* store, const char* id, const char* kind, const char* text,
                                       const double* values, size_t dim);
/* JSON array of {"id", "score"}, best first. `kind` NULL matches all. */
AGT_API agt_status agt_vecstore_nearest(const agt_vecstore* store, const double* query, size_t dim, size_t k,
                                        const char* kind, char** hits_json);
AGT_API size_t agt_vecstore_size(const agt_vecstore* store);
AGT_API void agt_vecstore_free(agt_vecstore* store);

/* Topic hierarchy in the structured JSON format. Parsing does not validate. */
typedef struct agt_hierarchy agt_hierarchy;

AGT_API agt_status agt_hierarchy_parse(const char* text, agt_hierarchy** out);
AGT_API agt_status agt_hierarchy_load(const char* path, agt_hierarchy** out);
/* Writes a JSON array of violation messages; empty when valid. */
AGT_API agt_status agt_hierarchy_validate(const agt_hierarchy* h, char** violations_json);
/* Notes (JSON array) may be NULL. */
AGT_API agt_status agt_hierarchy_prune(const agt_hierarchy* h, agt_hierarchy** out, char** notes_json);
AGT_API agt_status agt_hierarchy_stats(const agt_hierarchy* h, size_t* topic_count, size_t* level_count,
                                       size_t* root_count);
/* `format` is "structured" or "dot". Fails with AGT_INVALID_HIERARCHY. */
AGT_API agt_status agt_hierarchy_export(const agt_hierarchy* h, const char* format, char** out);
AGT_API void agt_hierarchy_free(agt_hierarchy* h);

/* Workflow run. The config is a JSON object:
 *   mode                  "seeded" | "generative"
 *   seeds                 array of labels (seeded only)
 *   refinement_iterations, review_retry_budget, max_depth, concurrency,
 *   relevance_check, merge_threshold, checkpoint (path), checkpoint_every,
 *   resume
 */
typedef struct agt_run agt_run;

AGT_API agt_status agt_run_execute(agt_gateway* gateway, const agt_corpus* corpus, const char* config_json,
                                   agt_run** out);
AGT_API agt_status agt_run_load(const char* path, agt_run** out);
AGT_API agt_status agt_run_counts(const agt_run* run, size_t* assigned, size_t* quarantined,
                                  size_t* trace_entries);
/* Writes augmented.<format>, trace.jsonl, run_result.json, vecstore.txt and,
 * for generative runs, hierarchy.structured and hierarchy.dot. */
AGT_API agt_status agt_run_write_outputs(const agt_run* run, const agt_corpus* corpus, const char* dir,
                                         const char* format);
AGT_API agt_status agt_run_to_json(const agt_run* run, char** out);
AGT_API void agt_run_free(agt_run* run);

/* Evaluation. `labels_json` is a JSON array; NULL uses the corpus labels. */
typedef struct agt_report agt_report;

AGT_API agt_status agt_eval_predictions(const agt_corpus* truth, const char* predictions_path,
                                        const char* labels_json, agt_report** out);
AGT_API agt_status agt_eval_run(const agt_corpus* truth, const agt_run* run, const char* labels_json,
                                agt_report** out);
AGT_API double agt_report_macro_f1(const agt_report* report);
AGT_API agt_status agt_report_render_table(const agt_report* report, const char* model_name, char** out);
AGT_API agt_status agt_report_to_json(const agt_report* report, char** out);
AGT_API void agt_report_free(agt_report* report);

#ifdef __cplusplus
}
#endif

#endif /* AGENTOPIC_AGENTOPIC_H_ */
