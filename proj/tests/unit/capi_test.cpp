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

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include <gtest/gtest.h>

#include "agentopic/agentopic.h"

namespace {

namespace fs = std::filesystem;

const std::string kFixtures = AGENTOPIC_FIXTURES;

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  agt_string_free(s);
  return out;
}

std::string seeds_json() { return R"(["Business", "Entertainment", "Politics", "Sport", "Tech"])"; }

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STREQ(agt_version(), "1.0.0");
  EXPECT_STREQ(agt_status_name(AGT_OK), "ok");
  EXPECT_STREQ(agt_status_name(AGT_FIXTURE_MISS), "fixture miss");
  EXPECT_STREQ(agt_status_name(static_cast<agt_status>(42)), "unknown status");
}

TEST(CApiTest, NullArgumentsAreRejected) {
  EXPECT_EQ(agt_corpus_load(nullptr, nullptr, nullptr), AGT_INVALID_ARGUMENT);
  EXPECT_NE(std::string(agt_last_error()).find("null"), std::string::npos);
  EXPECT_EQ(agt_corpus_size(nullptr), 0u);
  agt_corpus_free(nullptr);
  agt_string_free(nullptr);
  EXPECT_EQ(agt_hierarchy_stats(nullptr, nullptr, nullptr, nullptr), AGT_INVALID_ARGUMENT);
}

TEST(CApiTest, CorpusErrorsCarryMessages) {
  agt_corpus* c = nullptr;
  EXPECT_EQ(agt_corpus_load("/no/such/file.csv", nullptr, &c), AGT_NOT_FOUND);
  EXPECT_EQ(c, nullptr);
  EXPECT_STREQ(agt_last_error(), "file not found: /no/such/file.csv");

  EXPECT_EQ(agt_corpus_parse("id,title,description\na,t,\"open\n", "csv", &c), AGT_MALFORMED);
  EXPECT_NE(std::string(agt_last_error()).find("line 2"), std::string::npos);
  EXPECT_EQ(agt_corpus_parse("id,title,description\na,t,d\na,t,d\n", "csv", &c), AGT_DUPLICATE_ID);
  EXPECT_EQ(agt_corpus_parse("", "csv", &c), AGT_EMPTY);
  EXPECT_EQ(agt_corpus_parse("x", "xml", &c), AGT_INVALID_ARGUMENT);

  ASSERT_EQ(agt_corpus_parse("id,title,description,category\na,t,d,X\nb,t,d,W\n", "csv", &c), AGT_OK);
  EXPECT_EQ(agt_corpus_size(c), 2u);
  char* labels = nullptr;
  ASSERT_EQ(agt_corpus_labels(c, &labels), AGT_OK);
  EXPECT_EQ(take(labels), R"(["W","X"])");
  agt_corpus_free(c);
}

TEST(CApiTest, PreprocessText) {
  char* out = nullptr;
  ASSERT_EQ(agt_preprocess_text("It's 2 GOOD days!!", nullptr, &out), AGT_OK);
  EXPECT_EQ(take(out), "good days");
}

TEST(CApiTest, MockGatewayRoundTrip) {
  agt_gateway* g = nullptr;
  EXPECT_EQ(agt_gateway_create(R"({"backend": "mock", "bogus": 1})", &g), AGT_INVALID_ARGUMENT);
  EXPECT_NE(std::string(agt_last_error()).find("bogus"), std::string::npos);
  EXPECT_EQ(agt_gateway_create(R"({"backend": "replay"})", &g), AGT_INVALID_ARGUMENT);
  EXPECT_EQ(agt_gateway_create("{not json", &g), AGT_MALFORMED);
  ASSERT_EQ(agt_gateway_create(R"({"backend": "mock", "dim": 8})", &g), AGT_OK);

  char* vec = nullptr;
  ASSERT_EQ(agt_gateway_embed(g, "hello", &vec), AGT_OK);
  auto v = take(vec);
  EXPECT_EQ(std::count(v.begin(), v.end(), ','), 7);
  EXPECT_EQ(agt_gateway_embed(g, "  ", &vec), AGT_EMPTY);

  char* reply = nullptr;
  const char* req = R"({"template_id": "review_topics", "schema": "relevance",
    "variables": {"doc_id": "d", "title": "t", "description": "x", "topics": "- A: b"}})";
  ASSERT_EQ(agt_gateway_complete(g, req, &reply), AGT_OK);
  EXPECT_NE(take(reply).find("\"verdict\":\"ok\""), std::string::npos);
  EXPECT_EQ(agt_gateway_complete(g, R"({"template_id": "nope", "schema": "relevance"})", &reply),
            AGT_INVALID_ARGUMENT);
  EXPECT_EQ(agt_gateway_call_count(g), 2u);
  agt_gateway_free(g);
}

TEST(CApiTest, VecstoreNearest) {
  agt_vecstore* s = nullptr;
  ASSERT_EQ(agt_vecstore_create(&s), AGT_OK);
  const double a[] = {1, 0}, b[] = {1, 1}, zero[] = {0, 0};
  ASSERT_EQ(agt_vecstore_upsert(s, "a", "topic", "A", a, 2), AGT_OK);
  ASSERT_EQ(agt_vecstore_upsert(s, "b", "group", "B", b, 2), AGT_OK);
  EXPECT_EQ(agt_vecstore_upsert(s, "c", "topic", "C", a, 1), AGT_DIMENSION_MISMATCH);
  EXPECT_EQ(agt_vecstore_upsert(s, "c", "thing", "C", a, 2), AGT_INVALID_ARGUMENT);
  EXPECT_EQ(agt_vecstore_size(s), 2u);
  char* hits = nullptr;
  ASSERT_EQ(agt_vecstore_nearest(s, b, 2, 5, nullptr, &hits), AGT_OK);
  auto h = take(hits);
  EXPECT_LT(h.find("\"b\""), h.find("\"a\""));
  EXPECT_EQ(agt_vecstore_nearest(s, zero, 2, 1, nullptr, &hits), AGT_ZERO_VECTOR);
  ASSERT_EQ(agt_vecstore_nearest(s, a, 2, 5, "group", &hits), AGT_OK);
  EXPECT_EQ(take(hits).find("\"a\""), std::string::npos);
  agt_vecstore_free(s);
}

TEST(CApiTest, HierarchyLifecycle) {
  agt_hierarchy* h = nullptr;
  EXPECT_EQ(agt_hierarchy_parse("{", &h), AGT_MALFORMED);
  ASSERT_EQ(agt_hierarchy_parse(R"({"roots": [{"name": "A", "children": [{"name": "a", "leaf_topics": ["x"]}]}]})",
                                &h),
            AGT_OK);
  char* violations = nullptr;
  ASSERT_EQ(agt_hierarchy_validate(h, &violations), AGT_OK);
  EXPECT_EQ(take(violations), R"(["redundant self-named child: a under A"])");
  size_t topics = 0, levels = 0, roots = 0;
  EXPECT_EQ(agt_hierarchy_stats(h, &topics, &levels, &roots), AGT_INVALID_HIERARCHY);
  char* dot = nullptr;
  EXPECT_EQ(agt_hierarchy_export(h, "dot", &dot), AGT_INVALID_HIERARCHY);

  agt_hierarchy* pruned = nullptr;
  char* notes = nullptr;
  ASSERT_EQ(agt_hierarchy_prune(h, &pruned, &notes), AGT_OK);
  EXPECT_EQ(take(notes), "[]");
  ASSERT_EQ(agt_hierarchy_stats(pruned, &topics, &levels, &roots), AGT_OK);
  EXPECT_EQ(topics, 1u);
  EXPECT_EQ(levels, 1u);
  EXPECT_EQ(roots, 1u);
  ASSERT_EQ(agt_hierarchy_export(pruned, "dot", &dot), AGT_OK);
  EXPECT_EQ(take(dot).rfind("digraph", 0), 0u);
  EXPECT_EQ(agt_hierarchy_export(pruned, "svg", &dot), AGT_INVALID_ARGUMENT);
  agt_hierarchy_free(pruned);
  agt_hierarchy_free(h);
}

TEST(CApiTest, SeededReplayAndEvaluation) {
  agt_corpus* c = nullptr;
  ASSERT_EQ(agt_corpus_load((kFixtures + "/bbc50.csv").c_str(), nullptr, &c), AGT_OK);
  agt_gateway* g = nullptr;
  std::string cfg = R"({"backend": "replay", "fixture": ")" + kFixtures + R"(/bbc50_seeded.fixture.jsonl"})";
  ASSERT_EQ(agt_gateway_create(cfg.c_str(), &g), AGT_OK) << agt_last_error();

  agt_run* run = nullptr;
  EXPECT_EQ(agt_run_execute(g, c, R"({"mode": "seeded"})", &run), AGT_INVALID_ARGUMENT);
  EXPECT_EQ(agt_run_execute(g, c, R"({"mode": "sideways"})", &run), AGT_INVALID_ARGUMENT);
  std::string run_cfg = R"({"mode": "seeded", "seeds": )" + seeds_json() + "}";
  ASSERT_EQ(agt_run_execute(g, c, run_cfg.c_str(), &run), AGT_OK) << agt_last_error();
  size_t assigned = 0, quarantined = 0, trace = 0;
  ASSERT_EQ(agt_run_counts(run, &assigned, &quarantined, &trace), AGT_OK);
  EXPECT_EQ(assigned, 50u);
  EXPECT_EQ(quarantined, 0u);
  EXPECT_EQ(trace, 202u);
  EXPECT_EQ(agt_gateway_call_count(g), 150u);

  agt_report* report = nullptr;
  // Corpus categories are lowercase; the seed list supplies display order and case.
  ASSERT_EQ(agt_eval_run(c, run, seeds_json().c_str(), &report), AGT_OK) << agt_last_error();
  EXPECT_NEAR(agt_report_macro_f1(report), 0.96, 0.005);
  char* table = nullptr;
  ASSERT_EQ(agt_report_render_table(report, "agentopic", &table), AGT_OK);
  EXPECT_EQ(take(table),
            "Model | Business | Entertainment | Politics | Sport | Tech | F1-Score\n"
            "agentopic | 0.95 | 0.95 | 0.95 | 1.00 | 0.95 | 0.96\n");
  agt_report_free(report);

  auto dir = fs::temp_directory_path() / ("agentopic_capi_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ASSERT_EQ(agt_run_write_outputs(run, c, dir.string().c_str(), "csv"), AGT_OK) << agt_last_error();
  for (const char* f : {"augmented.csv", "trace.jsonl", "run_result.json", "vecstore.txt"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  EXPECT_FALSE(fs::exists(dir / "hierarchy.dot"));

  agt_run* loaded = nullptr;
  ASSERT_EQ(agt_run_load((dir / "run_result.json").string().c_str(), &loaded), AGT_OK);
  char* a = nullptr;
  char* b = nullptr;
  ASSERT_EQ(agt_run_to_json(run, &a), AGT_OK);
  ASSERT_EQ(agt_run_to_json(loaded, &b), AGT_OK);
  EXPECT_EQ(take(a), take(b));

  ASSERT_EQ(agt_eval_predictions(c, (dir / "augmented.csv").string().c_str(), nullptr, &report), AGT_OK);
  EXPECT_NEAR(agt_report_macro_f1(report), 0.96, 0.005);
  agt_report_free(report);
  EXPECT_EQ(agt_eval_predictions(c, "/no/file.csv", nullptr, &report), AGT_NOT_FOUND);

  agt_run_free(loaded);
  agt_run_free(run);
  agt_gateway_free(g);
  agt_corpus_free(c);
  fs::remove_all(dir);
}

TEST(CApiTest, ReplayMissIsReported) {
  agt_corpus* c = nullptr;
  ASSERT_EQ(agt_corpus_parse("id,title,description\nzz,Unseen,Never recorded\n", "csv", &c), AGT_OK);
  agt_gateway* g = nullptr;
  std::string cfg = R"({"backend": "replay", "fixture": ")" + kFixtures + R"(/bbc50_seeded.fixture.jsonl"})";
  ASSERT_EQ(agt_gateway_create(cfg.c_str(), &g), AGT_OK);
  agt_run* run = nullptr;
  std::string run_cfg = R"({"mode": "seeded", "seeds": )" + seeds_json() + "}";
  EXPECT_EQ(agt_run_execute(g, c, run_cfg.c_str(), &run), AGT_FIXTURE_MISS);
  EXPECT_EQ(run, nullptr);
  agt_gateway_free(g);
  agt_corpus_free(c);
}

}  // namespace
