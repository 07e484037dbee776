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

#include "common/errors.hpp"
#include "common/text.hpp"
#include "corpus/corpus.hpp"

namespace agentopic::corpus {
namespace {

TEST(CorpusTest, LoadsCsvWithCaseInsensitiveHeader) {
  auto c = parse_corpus("ID,Title,Description,Category,extra\n1,T,D,sport,x\n2,U,E,,y\n", Format::kCsv);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.documents()[0].category, "sport");
  EXPECT_FALSE(c.documents()[1].category.has_value());
  EXPECT_EQ(c.label_set(), (std::set<std::string>{"sport"}));
  EXPECT_NE(c.find("2"), nullptr);
  EXPECT_EQ(c.find("3"), nullptr);
}

TEST(CorpusTest, JsonlSkipsBlankLines) {
  auto c = parse_corpus("{\"id\":\"a\",\"title\":\"t\",\"description\":\"d\"}\n\n"
                        "{\"id\":\"b\",\"title\":\"t\",\"description\":\"d\",\"category\":\"tech\"}\n",
                        Format::kJsonl);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.documents()[1].category, "tech");
}

TEST(CorpusTest, MissingColumnNamesTheHeaderLine) {
  try {
    parse_corpus("id,title\n1,x\n", Format::kCsv);
    FAIL();
  } catch (const MalformedRecord& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("description"), std::string::npos);
  }
}

TEST(CorpusTest, FieldCountMismatchNamesTheLine) {
  try {
    parse_corpus("id,title,description\n1,a,b\n2,a\n", Format::kCsv);
    FAIL();
  } catch (const MalformedRecord& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(CorpusTest, JsonlMissingKey) {
  try {
    parse_corpus("{\"id\":\"a\",\"title\":\"t\"}\n", Format::kJsonl);
    FAIL();
  } catch (const MalformedRecord& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.reason(), "missing key: description");
  }
}

TEST(CorpusTest, DuplicateIdsAndEmptyInput) {
  EXPECT_THROW(parse_corpus("id,title,description\n1,a,b\n1,c,d\n", Format::kCsv), DuplicateId);
  EXPECT_THROW(parse_corpus("", Format::kCsv), EmptyInput);
  EXPECT_THROW(parse_corpus("\n\n", Format::kJsonl), EmptyInput);
}

TEST(CorpusTest, MissingFile) {
  EXPECT_THROW(load_corpus("/nonexistent/corpus.csv", Format::kCsv), FileNotFound);
}

TEST(CorpusTest, RoundTripsBothFormats) {
  Corpus c;
  c.add({"1", "Title, with comma", "Line one\nline \"two\"", std::string("clean text"), std::string("tech")});
  c.add({"2", "Other", "Body", std::string(""), std::nullopt});
  for (auto f : {Format::kCsv, Format::kJsonl}) {
    auto back = parse_corpus(serialize_corpus(c, f), f);
    EXPECT_EQ(back, c) << (f == Format::kCsv ? "csv" : "jsonl");
  }
}

TEST(CorpusTest, FixtureCorpusLoads) {
  auto c = load_corpus(std::string(AGENTOPIC_FIXTURES) + "/bbc50.csv", Format::kCsv);
  EXPECT_EQ(c.size(), 50u);
  EXPECT_EQ(c.label_set().size(), 5u);
}

TEST(CorpusTest, FormatFromPath) {
  EXPECT_EQ(format_from_path("x/y.jsonl"), Format::kJsonl);
  EXPECT_EQ(format_from_path("x/y.csv"), Format::kCsv);
  EXPECT_EQ(parse_format("jsonl"), Format::kJsonl);
  EXPECT_FALSE(parse_format("xml").has_value());
}

}  // namespace
}  // namespace agentopic::corpus
