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

#include <filesystem>

#include <gtest/gtest.h>

#include "common/text.hpp"
#include "corpus/csv.hpp"
#include "orchestrator/augment.hpp"
#include "orchestrator/workflow.hpp"
#include "support/scripted_backend.hpp"

namespace agentopic::workflow {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::AttemptCounter;
using testing::fenced;
using testing::ScriptedBackend;

corpus::Corpus five_docs() {
  corpus::Corpus c;
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"Shares rally", "Business"}, {"Cup final", "Sport"}, {"New phone", "Tech"},
      {"Bank merger", "Business"},  {"Chip shortage", "Tech"}};
  for (std::size_t i = 0; i < rows.size(); ++i)
    c.add({"d" + std::to_string(i + 1), rows[i].first, rows[i].first + " story body", std::nullopt, rows[i].second});
  return c;
}

// "- name: text" lines back into names.
std::vector<std::string> bullet_names(const std::string& bullets) {
  std::vector<std::string> out;
  for (const auto& line : text::split(bullets, '\n')) {
    if (line.rfind("- ", 0) != 0) continue;
    out.push_back(line.substr(2, line.find(':') - 2));
  }
  return out;
}

// Scripted agents. `identify` picks the reply per document and attempt.
struct Script {
  using IdentifyFn = std::function<json(const corpus::Document&, int attempt)>;
  const corpus::Corpus* corpus = nullptr;
  IdentifyFn identify;
  AttemptCounter attempts;
  std::vector<std::string> seen_prior_errors;  // identify prior_errors, d3 only
  std::mutex mu;

  std::string operator()(const llm::PromptRequest& r, std::string_view) {
    const auto& v = r.variables;
    if (r.template_id.rfind("identify_", 0) == 0) {
      const auto& id = v.at("doc_id");
      int attempt = attempts.next(id);
      if (id == "d3") {
        std::lock_guard lock(mu);
        seen_prior_errors.push_back(v.at("prior_errors"));
      }
      return fenced(identify(*corpus->find(id), attempt));
    }
    if (r.template_id == "review_topics") return fenced({{"verdict", "ok"}, {"errors", json::array()}});
    if (r.template_id == "group_topics") {
      // Two groups split by position.
      auto names = bullet_names(v.at("topics"));
      json a = json::array(), b = json::array();
      for (std::size_t i = 0; i < names.size(); ++i) (i % 2 ? b : a).push_back(names[i]);
      json groups = json::array({{{"name", "Group A"}, {"description", "even"}, {"members", a}}});
      if (!b.empty()) groups.push_back({{"name", "Group B"}, {"description", "odd"}, {"members", b}});
      return fenced({{"groups", groups}});
    }
    if (r.template_id == "build_hierarchy") {
      json nodes = json::array();
      for (const auto& line : text::split(v.at("groups"), '\n')) {
        auto name = line.substr(2, line.find(':') - 2);
        auto members = text::split(line.substr(line.find(" | ") + 3), ';');
        json leaves = json::array();
        for (auto& m : members) leaves.push_back(text::trim(m));
        nodes.push_back({{"name", name}, {"description", "from " + name}, {"parent", nullptr}, {"leaves", leaves}});
      }
      return fenced({{"nodes", nodes}});
    }
    ADD_FAILURE() << "unexpected template " << r.template_id;
    return "";
  }
};

json one_label(const corpus::Document& d, const std::string& label) {
  return {{"doc_id", d.id}, {"topics", {{{"name", label}, {"explanation", "because " + d.title}}}}};
}

json category_label(const corpus::Document& d, int) { return one_label(d, *d.category); }

struct Harness {
  corpus::Corpus corpus = five_docs();
  Script script;
  std::shared_ptr<ScriptedBackend> backend;
  std::unique_ptr<llm::Gateway> gateway;
  vecstore::VectorStore store;
  WorkflowConfig config;

  explicit Harness(Script::IdentifyFn identify, Mode mode = Mode::kSeeded) {
    script.corpus = &corpus;
    script.identify = std::move(identify);
    backend = std::make_shared<ScriptedBackend>(std::ref(script));
    llm::GatewayOptions o;
    o.sleep = [](std::chrono::milliseconds) {};
    gateway = std::make_unique<llm::Gateway>(backend, llm::TemplateStore::bundled(), o);
    config.mode = mode;
    if (mode == Mode::kSeeded) config.seeds = agents::SeedSet({"Business", "Sport", "Tech"});
  }

  RunResult go() { return Orchestrator(*gateway, store, config).run(corpus); }
};

std::size_t gateway_entries(const RunResult& r) {
  std::size_t n = 0;
  for (const auto& t : r.trace) n += t.gateway_call ? 1 : 0;
  return n;
}

TEST(WorkflowConfigTest, Checks) {
  WorkflowConfig c;
  EXPECT_THROW(c.check(), InvalidArgument);  // seeded without seeds
  c.seeds = agents::SeedSet({"A"});
  EXPECT_NO_THROW(c.check());
  c.review_retry_budget = 0;
  EXPECT_THROW(c.check(), InvalidArgument);
  c.review_retry_budget = 1;
  c.refinement_iterations = -1;
  EXPECT_THROW(c.check(), InvalidArgument);
  c.refinement_iterations = 0;
  c.concurrency_limit = 0;
  EXPECT_THROW(c.check(), InvalidArgument);
}

TEST(WorkflowTest, SeededHappyPath) {
  Harness run(category_label);
  auto r = run.go();
  ASSERT_EQ(r.assignments.size(), 5u);
  EXPECT_TRUE(r.quarantine.empty());
  EXPECT_EQ(r.stage_count("identify"), 5u);
  EXPECT_EQ(r.stage_count("relevance_review"), 5u);
  EXPECT_EQ(r.stage_count("topic_review"), 5u);
  EXPECT_EQ(r.stage_count("embed"), 5u);
  EXPECT_EQ(r.stage_count("final"), 1u);
  EXPECT_FALSE(r.hierarchy.has_value());
  EXPECT_EQ(r.assignments[2].topics[0].name, "Tech");
  EXPECT_EQ(r.trace.back().summary, "seeded: 5 assignments, 0 quarantined");
  for (std::size_t i = 0; i < r.trace.size(); ++i) EXPECT_EQ(r.trace[i].seq, i + 1);
  EXPECT_EQ(run.gateway->call_count(), gateway_entries(r));
  EXPECT_EQ(run.store.size(), 5u);
}

TEST(WorkflowTest, SeededLabelsAreCanonicalized) {
  Harness run([](const corpus::Document& d, int) { return one_label(d, text::to_lower(*d.category) + " "); });
  auto r = run.go();
  ASSERT_EQ(r.assignments.size(), 5u);
  EXPECT_EQ(r.assignments[0].topics[0].name, "Business");
}

TEST(WorkflowTest, RejectedAssignmentIsRetriedWithErrors) {
  Harness run([](const corpus::Document& d, int attempt) {
    if (d.id == "d3" && attempt <= 2) return one_label(d, "Weather");
    return category_label(d, attempt);
  });
  auto r = run.go();
  EXPECT_EQ(r.assignments.size(), 5u);
  EXPECT_EQ(r.stage_count("identify", "d3"), 3u);
  EXPECT_EQ(r.stage_count("topic_review", "d3"), 3u);
  EXPECT_EQ(r.stage_count("relevance_review", "d3"), 1u);
  EXPECT_EQ(r.stage_count("identify", "d1"), 1u);
  ASSERT_EQ(run.script.seen_prior_errors.size(), 3u);
  EXPECT_EQ(run.script.seen_prior_errors[0], "(none)");
  EXPECT_EQ(run.script.seen_prior_errors[1], "- label not in seed set: Weather");
  EXPECT_EQ(run.gateway->call_count(), gateway_entries(r));
}

TEST(WorkflowTest, NeverValidDocumentIsQuarantined) {
  Harness run([](const corpus::Document& d, int attempt) {
    if (d.id == "d2") return json{{"doc_id", "d2"}, {"topics", json::array()}};
    return category_label(d, attempt);
  });
  run.config.review_retry_budget = 2;
  auto r = run.go();
  EXPECT_EQ(r.assignments.size(), 4u);
  ASSERT_EQ(r.quarantine.size(), 1u);
  EXPECT_EQ(r.quarantine[0], (QuarantineEntry{"d2", {"no topics"}}));
  EXPECT_EQ(r.stage_count("identify", "d2"), 3u);
  EXPECT_EQ(r.stage_count("quarantine", "d2"), 1u);
  EXPECT_EQ(r.trace.back().summary, "seeded: 4 assignments, 1 quarantined");

  auto csv = csv::parse(augment(run.corpus, r, corpus::Format::kCsv));
  ASSERT_EQ(csv.size(), 6u);
  EXPECT_EQ(csv[0].fields, (std::vector<std::string>{"id", "title", "description", "category", "topics",
                                                     "explanations", "group", "group_description", "errors"}));
  EXPECT_EQ(csv[2].fields[4], kUnresolved);
  EXPECT_EQ(csv[2].fields[8], "no topics");
  EXPECT_EQ(csv[1].fields[4], "Business");
  EXPECT_EQ(csv[1].fields[5], "because Shares rally");
}

TEST(WorkflowTest, UnparseableIdentifyCountsAsAttempt) {
  int budget = 1;
  Harness run([](const corpus::Document& d, int attempt) {
    if (d.id == "d1" && attempt == 1) return json{{"doc_id", "d1"}};
    return category_label(d, attempt);
  });
  run.config.review_retry_budget = budget;
  auto r = run.go();
  EXPECT_EQ(r.assignments.size(), 5u);
  EXPECT_EQ(r.stage_count("identify", "d1"), 2u);
  EXPECT_EQ(r.stage_count("topic_review", "d1"), 1u);
}

TEST(WorkflowTest, GenerativeBuildsHierarchy) {
  Harness run(
      [](const corpus::Document& d, int) {
        return json{{"doc_id", d.id},
                    {"topics", {{{"name", *d.category + " news"}, {"explanation", d.title}},
                                {{"name", d.title}, {"explanation", "headline"}}}}};
      },
      Mode::kGenerative);
  auto r = run.go();
  EXPECT_EQ(r.assignments.size(), 5u);
  // 3 category topics shared across docs plus 5 headline topics.
  EXPECT_EQ(r.topics.size(), 8u);
  EXPECT_EQ(r.topics[0], (agents::Topic{"Business news", "Shares rally"}));
  ASSERT_TRUE(r.hierarchy.has_value());
  EXPECT_EQ(hierarchy::stats(*r.hierarchy).topic_count, 8u);
  EXPECT_EQ(r.groups.size(), 2u);
  EXPECT_EQ(r.stage_count("grouping_pass"), 2u);  // default one refinement
  EXPECT_EQ(r.stage_count("prune"), 1u);
  EXPECT_EQ(run.gateway->call_count(), gateway_entries(r));

  std::vector<std::string> dedupe;
  for (const auto& t : r.trace)
    if (t.stage == "dedupe") dedupe.push_back(t.summary);
  EXPECT_EQ(dedupe, (std::vector<std::string>{"Business news: kept explanation from d1; alternates from d4",
                                              "Tech news: kept explanation from d3; alternates from d5",
                                              "8 unique topics from 10 mentions"}));

  auto rows = csv::parse(augment(run.corpus, r, corpus::Format::kCsv));
  EXPECT_EQ(rows[1].fields[4], "Business news; Shares rally");
  EXPECT_EQ(rows[1].fields[5], "Shares rally | headline");
  EXPECT_FALSE(rows[1].fields[6].empty());
}

TEST(WorkflowTest, RefinementIterationsControlPasses) {
  for (int k : {0, 2}) {
    Harness run(category_label, Mode::kGenerative);
    run.config.refinement_iterations = k;
    auto r = run.go();
    EXPECT_EQ(r.stage_count("grouping_pass"), static_cast<std::size_t>(k + 1));
    EXPECT_EQ(run.backend->template_calls("group_topics"), k + 1);
    EXPECT_EQ(run.backend->template_calls("build_hierarchy"), k + 1);
  }
}

TEST(WorkflowTest, GenerativeWithNothingValidSkipsHierarchy) {
  Harness run([](const corpus::Document& d, int) { return json{{"doc_id", d.id}, {"topics", json::array()}}; },
          Mode::kGenerative);
  run.config.review_retry_budget = 1;
  auto r = run.go();
  EXPECT_EQ(r.quarantine.size(), 5u);
  EXPECT_FALSE(r.hierarchy.has_value());
  EXPECT_EQ(r.stage_count("grouping_pass"), 0u);
  EXPECT_EQ(r.trace.back().summary, "generative: 0 assignments, 5 quarantined; no validated topics, hierarchy skipped");
}

TEST(WorkflowTest, ResultIndependentOfConcurrency) {
  auto identify = [](const corpus::Document& d, int attempt) {
    if (d.id == "d4" && attempt == 1) return one_label(d, "Nope");
    return json{{"doc_id", d.id},
                {"topics", {{{"name", *d.category + " news"}, {"explanation", d.title}}}}};
  };
  std::string baseline;
  for (int c : {1, 2, 8}) {
    Harness run(identify, Mode::kGenerative);
    run.config.concurrency_limit = c;
    auto r = run.go();
    auto text = serialize_result(r) + serialize_trace(r.trace) + run.store.serialize();
    if (baseline.empty()) baseline = text;
    EXPECT_EQ(text, baseline) << "concurrency " << c;
  }
}

TEST(WorkflowTest, ResultJsonRoundTrip) {
  Harness run(category_label, Mode::kGenerative);
  auto r = run.go();
  EXPECT_EQ(run_result_from_json(to_json(r)), r);
  EXPECT_THROW(run_result_from_json(json{{"mode", "seeded"}}), ParseError);
  auto lines = text::split(serialize_trace(r.trace), '\n');
  EXPECT_EQ(json::parse(lines[0])["seq"], 1);
}

class CheckpointTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("agentopic_ckpt_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path() const { return (dir_ / "checkpoint.json").string(); }
  fs::path dir_;
};

TEST_F(CheckpointTest, ResumeAfterTransportFailureMatchesUninterruptedRun) {
  auto identify = [](const corpus::Document& d, int) {
    return json{{"doc_id", d.id}, {"topics", {{{"name", *d.category + " news"}, {"explanation", d.title}}}}};
  };
  Harness clean(identify, Mode::kGenerative);
  auto expected = clean.go();

  // First attempt: d4 hits a hard provider failure.
  Harness broken(identify, Mode::kGenerative);
  broken.config.checkpoint_path = path();
  broken.config.checkpoint_every = 1;
  broken.config.concurrency_limit = 1;
  auto inner = broken.script.identify;
  broken.script.identify = [inner](const corpus::Document& d, int attempt) -> json {
    if (d.id == "d4") throw llm::TransportFailure("HTTP 401", false);
    return inner(d, attempt);
  };
  EXPECT_THROW(broken.go(), llm::TransportError);
  ASSERT_TRUE(fs::exists(path()));

  Harness resumed(identify, Mode::kGenerative);
  resumed.config.checkpoint_path = path();
  resumed.config.concurrency_limit = 1;
  resumed.config.resume = true;
  auto r = resumed.go();
  EXPECT_EQ(r, expected);
  // Documents finished before the failure are not asked again.
  EXPECT_EQ(resumed.script.attempts.get("d1"), 0);
  EXPECT_EQ(resumed.script.attempts.get("d4"), 1);
  EXPECT_EQ(resumed.store, clean.store);
}

TEST_F(CheckpointTest, ResumeRejectsDifferentConfiguration) {
  Harness first(category_label);
  first.config.checkpoint_path = path();
  first.go();
  Harness second(category_label);
  second.config.checkpoint_path = path();
  second.config.resume = true;
  second.config.review_retry_budget = 5;
  EXPECT_THROW(second.go(), InvalidArgument);
}

TEST(AugmentTest, EmptyCorpusAndUncoveredDocs) {
  corpus::Corpus empty;
  RunResult r;
  EXPECT_EQ(augment(empty, r, corpus::Format::kCsv),
            csv::format_row({"id", "title", "description", "topics", "explanations", "group", "group_description",
                             "errors"}));
  EXPECT_EQ(augment(empty, r, corpus::Format::kJsonl), "");
  EXPECT_THROW(augment(five_docs(), r, corpus::Format::kCsv), InvalidArgument);
}

TEST(AugmentTest, JsonlKeepsInputKeysFirst) {
  Harness run(category_label);
  auto r = run.go();
  auto lines = text::split(augment(run.corpus, r, corpus::Format::kJsonl), '\n');
  auto j = nlohmann::ordered_json::parse(lines[0]);
  EXPECT_EQ(j["id"], "d1");
  EXPECT_EQ(j["topics"], "Business");
  EXPECT_EQ(j.begin().key(), "id");
}

}  // namespace
}  // namespace agentopic::workflow
