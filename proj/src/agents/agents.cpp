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

#include "agents/agents.hpp"

#include <functional>
#include <map>
#include <set>

#include "agents/validators.hpp"
#include "common/text.hpp"

namespace agentopic::agents {

using nlohmann::json;

namespace {

std::string bullets(const std::vector<std::string>& lines) {
  if (lines.empty()) return "(none)";
  std::string out;
  for (const auto& l : lines) out += "- " + l + "\n";
  out.pop_back();
  return out;
}

std::string topic_lines(const std::vector<Topic>& topics) {
  std::vector<std::string> lines;
  for (const auto& t : topics) lines.push_back(t.name + ": " + t.explanation);
  return bullets(lines);
}

std::string count_summary(std::size_t n, const char* what) {
  return std::to_string(n) + " " + what + (n == 1 ? "" : "s");
}

TopicAssignment assignment_from(const json& j) {
  TopicAssignment a;
  a.doc_id = j.at("doc_id").get<std::string>();
  for (const auto& t : j.at("topics"))
    a.topics.push_back({t.at("name").get<std::string>(), t.at("explanation").get<std::string>()});
  return a;
}

}  // namespace

hierarchy::TopicHierarchy hierarchy_from_nodes(const json& nodes, int max_depth, std::vector<std::string>& errors) {
  struct Flat {
    std::string name, description, parent;
    bool has_parent = false;
    std::vector<std::string> leaves;
  };
  std::vector<Flat> flat;
  std::map<std::string, std::size_t> by_name;
  for (const auto& n : nodes) {
    Flat f;
    f.name = text::trim(n.at("name").get<std::string>());
    f.description = n.at("description").get<std::string>();
    if (!n.at("parent").is_null()) {
      f.parent = text::trim(n.at("parent").get<std::string>());
      f.has_parent = !f.parent.empty();
    }
    f.leaves = n.at("leaves").get<std::vector<std::string>>();
    if (f.name.empty()) {
      errors.push_back("empty node name");
      continue;
    }
    if (!by_name.emplace(text::fold(f.name), flat.size()).second) {
      errors.push_back("duplicate node name: " + f.name);
      continue;
    }
    flat.push_back(std::move(f));
  }

  std::vector<std::vector<std::size_t>> children(flat.size());
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!flat[i].has_parent) {
      roots.push_back(i);
      continue;
    }
    auto it = by_name.find(text::fold(flat[i].parent));
    if (it == by_name.end()) {
      errors.push_back("unknown parent: " + flat[i].parent + " for node " + flat[i].name);
      continue;
    }
    children[it->second].push_back(i);
  }

  std::vector<bool> reached(flat.size(), false);
  std::function<hierarchy::HierarchyNode(std::size_t)> build = [&](std::size_t i) {
    reached[i] = true;
    hierarchy::HierarchyNode node{flat[i].name, flat[i].description, {}, flat[i].leaves};
    for (auto c : children[i]) node.children.push_back(build(c));
    return node;
  };
  hierarchy::TopicHierarchy h;
  h.max_depth = max_depth;
  for (auto r : roots) h.roots.push_back(build(r));

  // Nodes not reachable from a root with a resolvable parent chain sit on a cycle
  // or below one.
  std::set<std::size_t> reported;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (reached[i] || reported.count(i) || !flat[i].has_parent) continue;
    std::vector<std::size_t> chain;
    std::map<std::size_t, std::size_t> pos;
    std::size_t cur = i;
    while (true) {
      if (pos.count(cur)) {
        std::vector<std::string> names;
        for (std::size_t k = pos[cur]; k < chain.size(); ++k) names.push_back(flat[chain[k]].name);
        names.push_back(flat[cur].name);
        bool fresh = true;
        for (std::size_t k = pos[cur]; k < chain.size(); ++k) fresh = reported.insert(chain[k]).second && fresh;
        if (fresh) errors.push_back("cycle: " + text::join(names, " -> "));
        break;
      }
      pos[cur] = chain.size();
      chain.push_back(cur);
      if (!flat[cur].has_parent) break;
      auto it = by_name.find(text::fold(flat[cur].parent));
      if (it == by_name.end()) break;
      cur = it->second;
    }
  }
  return h;
}

AgentTeam::AgentTeam(llm::Gateway& gateway, vecstore::VectorStore* store, AgentOptions options)
    : gateway_(gateway), store_(store), options_(options) {}

llm::StructuredReply AgentTeam::ask(const std::string& template_id, const std::string& schema,
                                    std::map<std::string, std::string> variables) {
  llm::PromptRequest req;
  req.template_id = template_id;
  req.variables = std::move(variables);
  req.response_schema_id = schema;
  req.temperature = options_.temperature;
  req.max_output_tokens = options_.max_output_tokens;
  return gateway_.complete(req);
}

void AgentTeam::embed_and_store(const std::string& id, vecstore::ItemKind kind, const std::string& body,
                                const std::string& doc_id, std::vector<TraceEvent>& events,
                                std::vector<std::string>* merge_candidates) {
  auto vec = gateway_.embed(body);
  events.push_back({"embed", doc_id, id, true});
  if (!store_) return;
  store_->upsert({id, kind, body, vec});
  if (merge_candidates)
    for (const auto& hit : store_->merge_candidates(id, options_.merge_threshold))
      merge_candidates->push_back(id + " ~ " + hit.id);
}

TopicAssignment AgentTeam::identify_topics(const corpus::Document& doc, Mode mode, const SeedSet* seeds,
                                           const std::vector<std::string>& prior_errors,
                                           std::vector<TraceEvent>& events) {
  if (mode == Mode::kSeeded && !seeds) throw InvalidArgument("seeded identification needs a seed set");
  std::map<std::string, std::string> vars = {
      {"doc_id", doc.id},
      {"title", doc.title},
      {"description", doc.description_raw},
      {"prior_errors", bullets(prior_errors)},
  };
  if (mode == Mode::kSeeded) vars["seeds"] = bullets(seeds->labels());
  auto reply = ask(mode == Mode::kSeeded ? "identify_seeded" : "identify_generative", llm::kAssignmentSchema,
                   std::move(vars));
  std::string summary = prior_errors.empty() ? "first attempt"
                                             : "retry with " + count_summary(prior_errors.size(), "prior error");
  if (!reply.ok()) {
    events.push_back(
        {"identify", doc.id, summary + "; unparseable reply: " + text::join(reply.format_errors, "; "), true});
    throw UnparseableReply("identification", reply.format_errors);
  }
  auto a = assignment_from(*reply.parsed);
  std::vector<std::string> names;
  for (const auto& t : a.topics) names.push_back(t.name);
  events.push_back({"identify", doc.id, summary + "; topics: " + text::join(names, "; "), true});
  return a;
}

ReviewVerdict AgentTeam::review_topics(const TopicAssignment& a, const corpus::Document& doc, Mode mode,
                                       const SeedSet* seeds, std::vector<TraceEvent>& events) {
  ReviewVerdict v;
  for (auto& e : check_assignment(a, mode, seeds, doc.id)) v.errors.push_back({doc.id, std::move(e)});

  if (v.ok() && options_.relevance_check) {
    auto reply = ask("review_topics", llm::kRelevanceSchema,
                     {{"doc_id", doc.id},
                      {"title", doc.title},
                      {"description", doc.description_raw},
                      {"topics", topic_lines(a.topics)}});
    std::string summary;
    if (!reply.ok()) {
      // A malformed reviewer reply cannot veto a structurally valid assignment.
      summary = "relevance reply unparseable; ignored";
    } else if ((*reply.parsed)["verdict"] == "reject") {
      auto errs = (*reply.parsed)["errors"].get<std::vector<std::string>>();
      if (errs.empty()) errs.push_back("rejected by reviewer");
      for (auto& e : errs) v.errors.push_back({doc.id, "relevance: " + e});
      summary = "reject: " + count_summary(errs.size(), "error");
    } else {
      summary = "ok";
    }
    events.push_back({"relevance_review", doc.id, summary, true});
  }

  events.push_back({"topic_review", doc.id,
                    v.ok() ? "ok" : "rejected: " + text::join(v.messages(), "; "), false});
  return v;
}

std::vector<std::string> AgentTeam::index_topics(const TopicAssignment& a, std::vector<TraceEvent>& events) {
  std::vector<std::string> candidates;
  for (const auto& t : a.topics)
    embed_and_store("topic/" + a.doc_id + "/" + t.name, vecstore::ItemKind::kTopic, t.name + ": " + t.explanation,
                    a.doc_id, events, &candidates);
  if (!candidates.empty()) events.push_back({"merge_candidates", a.doc_id, text::join(candidates, "; "), false});
  return candidates;
}

std::vector<TopicGroup> AgentTeam::group_topics(const std::vector<Topic>& topics,
                                                const hierarchy::TopicHierarchy* prior,
                                                const std::vector<std::string>& prior_errors,
                                                std::vector<TraceEvent>& events) {
  if (topics.empty()) throw InvalidArgument("grouping needs at least one topic");
  std::vector<std::string> prior_groups;
  if (prior) {
    std::function<void(const hierarchy::HierarchyNode&)> walk = [&](const hierarchy::HierarchyNode& n) {
      prior_groups.push_back(n.name + ": " + n.description);
      for (const auto& c : n.children) walk(c);
    };
    for (const auto& r : prior->roots) walk(r);
  }
  auto reply = ask("group_topics", llm::kGroupingSchema,
                   {{"topics", topic_lines(topics)},
                    {"prior_groups", bullets(prior_groups)},
                    {"prior_errors", bullets(prior_errors)}});
  if (!reply.ok()) {
    events.push_back({"group", "-", "unparseable reply", true});
    throw UnparseableReply("grouping", reply.format_errors);
  }
  std::vector<TopicGroup> groups;
  for (const auto& g : (*reply.parsed)["groups"])
    groups.push_back({g.at("name").get<std::string>(), g.at("description").get<std::string>(),
                      g.at("members").get<std::vector<std::string>>()});
  events.push_back({"group", "-", count_summary(groups.size(), "group"), true});
  return groups;
}

ReviewVerdict AgentTeam::review_groups(const std::vector<TopicGroup>& groups,
                                       const std::vector<std::string>& topic_names,
                                       std::vector<TraceEvent>& events) {
  ReviewVerdict v;
  for (auto& e : check_groups(groups, topic_names)) v.errors.push_back({"-", std::move(e)});
  events.push_back({"group_review", "-", v.ok() ? "ok" : "rejected: " + text::join(v.messages(), "; "), false});
  if (v.ok())
    for (const auto& g : groups)
      embed_and_store("group/" + g.name, vecstore::ItemKind::kGroup, g.name + ": " + g.description, "-", events,
                      nullptr);
  return v;
}

hierarchy::TopicHierarchy AgentTeam::build_hierarchy(const std::vector<TopicGroup>& groups,
                                                     const hierarchy::TopicHierarchy* prior, int max_depth,
                                                     int retry_budget, std::vector<TraceEvent>& events) {
  if (max_depth < 2) throw InvalidArgument("max_depth must be at least 2");
  std::vector<std::string> group_lines;
  std::vector<std::string> members;
  std::set<std::string> member_keys;
  for (const auto& g : groups) {
    group_lines.push_back(g.name + ": " + g.description + " | " + text::join(g.members, "; "));
    for (const auto& m : g.members)
      if (member_keys.insert(text::fold(m)).second) members.push_back(m);
  }
  const std::string prior_text =
      prior ? hierarchy::export_hierarchy(*prior, hierarchy::ExportFormat::kStructured) : "(none)";

  std::vector<std::string> errors;
  for (int attempt = 0; attempt <= retry_budget; ++attempt) {
    auto reply = ask("build_hierarchy", llm::kHierarchySchema,
                     {{"groups", bullets(group_lines)},
                      {"prior_hierarchy", prior_text},
                      {"prior_errors", bullets(errors)},
                      {"max_depth", std::to_string(max_depth)}});
    errors.clear();
    if (!reply.ok()) {
      errors = reply.format_errors;
      events.push_back({"hierarchy", "-", "unparseable reply", true});
      continue;
    }
    auto h = hierarchy_from_nodes((*reply.parsed)["nodes"], max_depth, errors);
    std::vector<std::string> notes;
    h = hierarchy::prune_redundant(h, &notes);
    for (auto& m : hierarchy::violation_messages(hierarchy::validate(h))) errors.push_back(std::move(m));
    std::set<std::string> placed;
    for (const auto& t : hierarchy::leaf_topics(h)) {
      placed.insert(text::fold(t));
      if (!member_keys.count(text::fold(t))) errors.push_back("unknown leaf: " + t);
    }
    for (const auto& m : members)
      if (!placed.count(text::fold(m))) errors.push_back("missing topic: " + m);

    std::string summary = errors.empty() ? "ok: " + count_summary(h.roots.size(), "root")
                                         : "rejected: " + text::join(errors, "; ");
    if (!notes.empty()) summary += "; " + text::join(notes, "; ");
    events.push_back({"hierarchy", "-", summary, true});
    if (errors.empty()) return h;
  }
  throw StructuralViolation("hierarchy construction", errors);
}

}  // namespace agentopic::agents
