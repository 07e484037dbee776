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

#include "llm/mock.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "common/text.hpp"
#include "llm/schema.hpp"

namespace agentopic::llm {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void add_direction(std::vector<double>& acc, std::uint64_t state) {
  for (auto& x : acc) {
    // 53 random bits mapped to [-1, 1).
    double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    x += 2.0 * u - 1.0;
  }
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lc >= 'a' && lc <= 'z') {
      cur += lc;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct SeedCues {
  const char* label;
  std::vector<std::string> keywords;
};

const std::vector<SeedCues>& seed_cues() {
  static const std::vector<SeedCues> cues = {
      {"business",
       {"company", "profit", "profits", "shares", "market", "markets", "economy", "economic", "bank",
        "sales", "firm", "growth", "investors", "oil", "prices", "dollar", "financial", "executive",
        "stock", "trade", "jobs", "inflation", "debt", "accounts", "regulators", "takeover",
        "retail", "airline", "bn"}},
      {"entertainment",
       {"film", "films", "music", "album", "band", "singer", "award", "awards", "oscar", "actor",
        "actress", "tv", "television", "festival", "box", "chart", "comedy", "director", "movie",
        "theatre", "song", "celebrity", "show", "series"}},
      {"politics",
       {"government", "minister", "labour", "tory", "tories", "election", "party", "mp", "mps",
        "blair", "parliament", "vote", "voters", "policy", "lords", "secretary", "campaign",
        "conservative", "liberal", "democrats", "chancellor", "bill"}},
      {"sport",
       {"match", "cup", "team", "player", "players", "coach", "season", "champion", "championship",
        "league", "football", "rugby", "tennis", "olympic", "race", "medal", "injury", "club",
        "goal", "squad", "athletics", "cricket", "hurdler", "indoor", "final", "striker"}},
      {"tech",
       {"technology", "software", "computer", "computers", "mobile", "phone", "phones", "internet",
        "online", "web", "digital", "broadband", "users", "net", "games", "gaming", "microsoft",
        "google", "device", "devices", "network", "virus", "security", "website", "gadget",
        "consoles"}},
  };
  return cues;
}

struct TaxonomyTopic {
  const char* name;
  const char* group;
  std::vector<std::string> keywords;
};

struct TaxonomyGroup {
  const char* name;
  const char* theme;
  const char* description;
};

// Broad themes first, then groups, in output order.
const std::vector<TaxonomyGroup>& taxonomy_groups() {
  static const std::vector<TaxonomyGroup> groups = {
      {"Economy and Markets", "Industry and Environment",
       "These topics cover economic conditions, financial markets, banking and investment."},
      {"Business and Industry", "Industry and Environment",
       "These topics cover corporate performance, deals, energy and industrial sectors."},
      {"Law and Regulation", "Legal and Regulatory",
       "These topics cover courts, regulators, inquiries and legal disputes."},
      {"Politics and Government", "Legal and Regulatory",
       "These topics cover elections, government policy and international relations."},
      {"Team Sports", "Sports and Events",
       "This group includes topics related to team competitions, clubs and matches."},
      {"Individual Sports", "Sports and Events",
       "This group includes topics related to athletes, individual disciplines and championships."},
      {"Sports Management and Health", "Sports and Events",
       "This group includes topics related to injuries, fitness and the management of sport."},
      {"Film and Television", "Entertainment and Media",
       "These topics cover cinema, broadcasting and screen performers."},
      {"Music and Performance", "Entertainment and Media",
       "These topics cover music releases, live performance, awards and celebrity culture."},
      {"Technology and Digital Media", "Entertainment and Media",
       "These topics cover consumer devices, the internet, software, games and online security."},
      {"Other Topics", "Miscellaneous", "These topics did not match a known theme."},
  };
  return groups;
}

const std::vector<TaxonomyTopic>& taxonomy_topics() {
  static const std::vector<TaxonomyTopic> topics = {
      {"Economy and Finance", "Economy and Markets",
       {"economy", "economic", "growth", "inflation", "rate", "rates", "bank", "dollar", "market",
        "markets", "shares", "stock", "investors", "profit", "profits", "bn"}},
      {"Corporate Affairs", "Business and Industry",
       {"company", "firm", "executive", "takeover", "deal", "merger", "sales", "retail", "accounts",
        "airline"}},
      {"Energy and Environment", "Business and Industry",
       {"oil", "energy", "gas", "climate", "environment", "emissions", "fuel"}},
      {"Legal Affairs", "Law and Regulation",
       {"court", "judge", "legal", "law", "regulators", "inquiry", "trial", "lawyers", "fraud"}},
      {"Elections", "Politics and Government",
       {"election", "vote", "voters", "campaign", "poll", "party", "labour", "tory", "tories"}},
      {"Government Policy", "Politics and Government",
       {"government", "minister", "policy", "parliament", "mps", "tax", "secretary", "lords",
        "chancellor", "bill"}},
      {"International Relations", "Politics and Government",
       {"eu", "europe", "international", "foreign", "talks", "iraq", "treaty"}},
      {"Football", "Team Sports",
       {"football", "league", "club", "goal", "striker", "premiership", "cup", "manager"}},
      {"Rugby", "Team Sports", {"rugby", "nations", "scrum", "lions", "try"}},
      {"Athletics", "Individual Sports",
       {"athletics", "hurdler", "sprinter", "indoor", "medal", "marathon", "olympic", "race"}},
      {"Tennis", "Individual Sports", {"tennis", "wimbledon", "slam", "seed", "open"}},
      {"Sports Injuries", "Sports Management and Health",
       {"injury", "injured", "fitness", "hamstring", "surgery"}},
      {"Film", "Film and Television",
       {"film", "films", "movie", "oscar", "actor", "actress", "director", "box", "cinema"}},
      {"Television", "Film and Television",
       {"tv", "television", "show", "series", "channel", "viewers", "comedy"}},
      {"Music", "Music and Performance",
       {"music", "album", "band", "singer", "song", "chart", "concert", "tour"}},
      {"Awards and Celebrity", "Music and Performance",
       {"award", "awards", "celebrity", "star", "stars", "prize", "ceremony", "festival"}},
      {"Consumer Technology", "Technology and Digital Media",
       {"mobile", "phone", "phones", "gadget", "device", "devices", "camera", "digital"}},
      {"Internet and Software", "Technology and Digital Media",
       {"internet", "online", "web", "software", "broadband", "microsoft", "google", "net", "users",
        "website", "computer", "computers"}},
      {"Cyber Security", "Technology and Digital Media",
       {"virus", "security", "hackers", "spam", "phishing", "worm"}},
      {"Video Games", "Technology and Digital Media",
       {"games", "gaming", "console", "consoles", "nintendo", "sony", "xbox"}},
  };
  return topics;
}

struct Score {
  int hits = 0;
  std::vector<std::string> cues;  // distinct matched keywords, strongest first
};

Score score(const std::map<std::string, int>& counts, const std::vector<std::string>& keywords) {
  Score s;
  std::vector<std::pair<int, std::string>> found;
  for (const auto& k : keywords) {
    auto it = counts.find(k);
    if (it == counts.end()) continue;
    s.hits += it->second;
    found.emplace_back(-it->second, k);
  }
  std::sort(found.begin(), found.end());
  for (auto& [n, k] : found) s.cues.push_back(k);
  return s;
}

std::string cue_phrase(const std::vector<std::string>& cues) {
  std::vector<std::string> top(cues.begin(), cues.begin() + std::min<std::size_t>(3, cues.size()));
  if (top.size() == 1) return top[0];
  std::string last = top.back();
  top.pop_back();
  return text::join(top, ", ") + " and " + last;
}

std::map<std::string, int> article_counts(const PromptRequest& r) {
  std::map<std::string, int> counts;
  auto var = [&](const char* k) {
    auto it = r.variables.find(k);
    return it == r.variables.end() ? std::string() : it->second;
  };
  for (const auto& w : words(var("title"))) counts[w] += 2;
  for (const auto& w : words(var("description"))) counts[w] += 1;
  return counts;
}

std::string var(const PromptRequest& r, const char* key) {
  auto it = r.variables.find(key);
  return it == r.variables.end() ? std::string() : it->second;
}

// Parses "- head: tail" lines.
std::vector<std::pair<std::string, std::string>> bullet_lines(const std::string& block) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& raw : text::split(block, '\n')) {
    auto line = text::trim(raw);
    if (line.rfind("- ", 0) != 0) continue;
    line = line.substr(2);
    auto colon = line.find(": ");
    if (colon == std::string::npos) {
      out.emplace_back(text::trim(line), "");
    } else {
      out.emplace_back(text::trim(line.substr(0, colon)), text::trim(line.substr(colon + 2)));
    }
  }
  return out;
}

std::string fenced(const json& payload) {
  return "Here is the result.\n```json\n" + payload.dump(2) + "\n```\n";
}

std::string identify_seeded(const PromptRequest& r) {
  auto counts = article_counts(r);
  std::vector<std::string> seeds;
  for (const auto& line : text::split(var(r, "seeds"), '\n')) {
    auto s = text::trim(line);
    if (s.rfind("- ", 0) == 0) s = text::trim(s.substr(2));
    if (!s.empty()) seeds.push_back(s);
  }
  std::string best;
  Score best_score;
  for (const auto& seed : seeds) {
    std::vector<std::string> keywords = words(seed);
    for (const auto& c : seed_cues())
      if (text::fold(seed) == c.label) keywords.insert(keywords.end(), c.keywords.begin(), c.keywords.end());
    auto s = score(counts, keywords);
    if (best.empty() || s.hits > best_score.hits) {
      best = seed;
      best_score = s;
    }
  }
  std::string explanation =
      best_score.cues.empty()
          ? "The text gives no strong cue for any label; " + best + " is the closest fit."
          : "The text discusses " + cue_phrase(best_score.cues) + ", all related to " + best + ".";
  return fenced({{"doc_id", var(r, "doc_id")},
                 {"topics", json::array({{{"name", best}, {"explanation", explanation}}})}});
}

std::string identify_generative(const PromptRequest& r) {
  auto counts = article_counts(r);
  std::vector<std::pair<int, std::size_t>> ranked;
  std::vector<Score> scores;
  for (std::size_t i = 0; i < taxonomy_topics().size(); ++i) {
    scores.push_back(score(counts, taxonomy_topics()[i].keywords));
    if (scores.back().hits > 0) ranked.emplace_back(-scores.back().hits, i);
  }
  std::sort(ranked.begin(), ranked.end());
  json topics = json::array();
  for (std::size_t k = 0; k < ranked.size() && topics.size() < 2; ++k) {
    auto [neg, i] = ranked[k];
    if (k > 0 && -neg < 3) break;
    const auto& t = taxonomy_topics()[i];
    topics.push_back({{"name", t.name},
                      {"explanation", "The text discusses " + cue_phrase(scores[i].cues) +
                                          ", which relate to " + text::to_lower(t.name) + "."}});
  }
  if (topics.empty())
    topics.push_back({{"name", "General News"},
                      {"explanation", "The text reports a general news story without a dominant theme."}});
  return fenced({{"doc_id", var(r, "doc_id")}, {"topics", topics}});
}

const TaxonomyGroup& group_of(const std::string& topic) {
  const auto& groups = taxonomy_groups();
  for (const auto& t : taxonomy_topics())
    if (text::fold(t.name) == text::fold(topic))
      for (const auto& g : groups)
        if (std::string(g.name) == t.group) return g;
  return groups.back();
}

std::string group_topics(const PromptRequest& r) {
  std::map<std::string, std::vector<std::string>> members;
  for (const auto& [name, expl] : bullet_lines(var(r, "topics"))) members[group_of(name).name].push_back(name);
  json groups = json::array();
  for (const auto& g : taxonomy_groups()) {
    auto it = members.find(g.name);
    if (it == members.end()) continue;
    groups.push_back({{"name", g.name}, {"description", g.description}, {"members", it->second}});
  }
  return fenced({{"groups", groups}});
}

std::string build_hierarchy(const PromptRequest& r) {
  // "- Group: description | a; b; c"
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  for (const auto& [name, rest] : bullet_lines(var(r, "groups"))) {
    auto bar = rest.rfind(" | ");
    std::vector<std::string> leaves;
    if (bar != std::string::npos)
      for (const auto& m : text::split(rest.substr(bar + 3), ';'))
        if (auto t = text::trim(m); !t.empty()) leaves.push_back(t);
    groups.emplace_back(name, std::move(leaves));
  }
  json nodes = json::array();
  std::set<std::string> themes_done;
  for (const auto& [name, leaves] : groups) {
    std::string theme = "Miscellaneous";
    for (const auto& g : taxonomy_groups())
      if (text::fold(g.name) == text::fold(name)) theme = g.theme;
    if (themes_done.insert(theme).second)
      nodes.push_back({{"name", theme},
                       {"description", "Broad theme grouping related topic groups."},
                       {"parent", nullptr},
                       {"leaves", json::array()}});
  }
  for (const auto& [name, leaves] : groups) {
    std::string theme = "Miscellaneous";
    std::string description = "Topics grouped under " + name + ".";
    for (const auto& g : taxonomy_groups())
      if (text::fold(g.name) == text::fold(name)) {
        theme = g.theme;
        description = g.description;
      }
    nodes.push_back({{"name", name}, {"description", description}, {"parent", theme}, {"leaves", leaves}});
  }
  return fenced({{"nodes", nodes}});
}

}  // namespace

std::vector<double> mock_hash_embedding(std::string_view t, std::size_t dim, std::uint64_t seed) {
  std::vector<double> v(dim, 0.0);
  auto ws = words(t);
  if (ws.empty()) {
    add_direction(v, fnv1a(t, seed));
  } else {
    for (const auto& w : ws) add_direction(v, fnv1a(w, seed));
  }
  double norm = 0;
  for (double x : v) norm += x * x;
  if (norm == 0) v[0] = 1.0;
  return v;
}

MockBackend::MockBackend(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim == 0) throw InvalidArgument("embedding dimension must be positive");
}

std::string MockBackend::chat(const PromptRequest& r, std::string_view) {
  if (r.template_id == "identify_seeded") return identify_seeded(r);
  if (r.template_id == "identify_generative") return identify_generative(r);
  if (r.template_id == "review_topics")
    return fenced({{"verdict", "ok"}, {"errors", json::array()}});
  if (r.template_id == "group_topics") return group_topics(r);
  if (r.template_id == "build_hierarchy") return build_hierarchy(r);
  throw TransportFailure("mock backend does not understand template " + r.template_id, false);
}

std::vector<double> MockBackend::embed(std::string_view t) { return mock_hash_embedding(t, dim_, seed_); }

}  // namespace agentopic::llm
