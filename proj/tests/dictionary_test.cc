//
// Copyright 2026 The CSC Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <random>
#include <sstream>

#include "csc/corpus.h"
#include "csc/dictionary.h"
#include "csc/error.h"
#include "csc/segment.h"
#include "doctest.h"
#include "testing/fixtures.h"
#include "testing/oracles.h"

using csc::AsmCountMode;
using csc::UserDictionary;
using fixture::u;

namespace {

UserDictionary dict_of(const std::set<std::u32string>& terms) {
  return UserDictionary(fixture::as_vector(terms));
}

std::u32string random_text(std::mt19937_64& rng, std::size_t n, std::size_t alphabet) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet - 1);
  std::u32string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(U'a' + static_cast<char32_t>(pick(rng)));
  return s;
}

}  // namespace

TEST_CASE("loading: dedup, comments, short terms") {
  std::istringstream in("人民检察院\n审查案件\n\n# note\n审查案件\n  案件 \n人\n");
  std::vector<std::string> warnings;
  const auto d = csc::load_dictionary(in, &warnings);
  CHECK(d.size() == 3);
  CHECK(d.contains(u("案件")));
  CHECK_FALSE(d.contains(u("人")));
  CHECK(warnings.size() == 1);

  std::istringstream empty("");
  warnings.clear();
  CHECK(csc::load_dictionary(empty, &warnings).empty());
  CHECK(warnings.size() == 1);

  std::istringstream two("人民检察院\n审查案件\n");
  CHECK(csc::load_dictionary(two).size() == 2);
}

TEST_CASE("raw span matches") {
  const auto d = dict_of({u("审查案件")});
  const auto spans = csc::rsm_spans(u("依法审查案件"), d);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0] == csc::SpanMatch{2, 6, u("审查案件")});
  CHECK(csc::rsm_spans(u("今天天气"), d).empty());
  const auto both = csc::rsm_spans(u("依法审查案件"), dict_of({u("案件"), u("审查案件")}));
  CHECK(both.size() == 2);
}

TEST_CASE("raw span matches equal a substring scan") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1500; ++trial) {
    std::set<std::u32string> terms;
    const int count = static_cast<int>(rng() % 6);
    for (int t = 0; t < count; ++t) terms.insert(random_text(rng, 2 + rng() % 4, 3));
    const auto text = random_text(rng, 1 + rng() % 20, 3);
    std::vector<oracle::Span> got;
    for (const auto& s : csc::rsm_spans(text, dict_of(terms))) {
      got.push_back({s.start, s.end, s.term});
    }
    CHECK(got == oracle::substring_spans(text, terms));
  }
}

TEST_CASE("incremental matching reports the same term ends as whole-string matching") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    std::set<std::u32string> terms;
    for (int t = 0; t < 5; ++t) terms.insert(random_text(rng, 2 + rng() % 4, 3));
    const auto d = dict_of(terms);
    const auto text = random_text(rng, 25, 3);
    std::set<std::pair<std::size_t, std::size_t>> events;  // (end, length)
    auto state = csc::TermMatcher::kRoot;
    for (std::size_t i = 0; i < text.size(); ++i) {
      state = d.matcher().next(state, text[i]);
      CHECK(d.matcher().depth(state) <= i + 1);
      for (auto len : d.matcher().outputs(state)) events.insert({i + 1, len});
    }
    std::set<std::pair<std::size_t, std::size_t>> expected;
    for (const auto& s : oracle::substring_spans(text, terms)) {
      expected.insert({s.end, s.end - s.start});
    }
    CHECK(events == expected);
  }
}

TEST_CASE("altered span reward") {
  const auto d = dict_of({u("人民检察院")});
  const auto input = u("人民监查员依法审查案件");
  const auto path = u("人民检察院依法审查案件");
  CHECK(csc::asm_reward(input, path, d) == 5);
  CHECK(csc::asm_reward(input, path, d, AsmCountMode::kAlteredPositions) == 3);
  CHECK(csc::asm_reward(input, input, d) == 0);
  // 审查案件 occurs in the path, but over unaltered positions only.
  CHECK(csc::asm_reward(input, input, dict_of({u("审查案件")})) == 0);
  CHECK_THROWS_AS(csc::asm_reward(input, u("人民"), d), csc::ContractViolation);
}

TEST_CASE("altered span reward equals the oracle, is monotone and bounded") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto input = random_text(rng, n, 3);
    auto path = input;
    for (auto& c : path) {
      if (rng() % 3 == 0) c = U'a' + static_cast<char32_t>(rng() % 3);
    }
    std::set<std::u32string> terms;
    const int count = static_cast<int>(rng() % 5);
    for (int t = 0; t < count; ++t) terms.insert(random_text(rng, 2 + rng() % 3, 3));
    const auto d = dict_of(terms);
    const int covered = csc::asm_reward(input, path, d);
    const int altered = csc::asm_reward(input, path, d, AsmCountMode::kAlteredPositions);
    CHECK(covered == oracle::asm_reward(input, path, terms, false));
    CHECK(altered == oracle::asm_reward(input, path, terms, true));
    CHECK(altered <= covered);
    CHECK(covered <= static_cast<int>(n));
    CHECK(csc::asm_reward(input, input, d) == 0);
    auto more = terms;
    more.insert(random_text(rng, 2 + rng() % 3, 3));
    CHECK(csc::asm_reward(input, path, dict_of(more)) >= covered);
  }
}

TEST_CASE("overly long terms are rejected") {
  std::vector<std::string> warnings;
  const UserDictionary d(std::vector<std::u32string>{std::u32string(65, U'a'), U"ab"},
                         &warnings);
  CHECK(d.size() == 1);
  CHECK(warnings.size() == 1);
}

TEST_CASE("gold error phrases widen diffs to word boundaries") {
  const std::vector<csc::SentencePair> data{
      {"1", u("人民监查员依法审查案件"), u("人民检察院依法审查案件")},
      {"2", u("今天天汽很好"), u("今天天气很好")},
      {"3", u("没有错误"), u("没有错误")}};
  const csc::Segmenter seg({u("人民"), u("检察院"), u("天气"), u("今天"), u("审查")});
  const auto phrases = csc::gold_error_phrases(data, seg);
  CHECK(phrases == std::vector<std::u32string>{u("天气"), u("检察院")});
}

TEST_CASE("ideal dictionary sampling") {
  std::vector<csc::SentencePair> data;
  const char* words[] = {"检察", "审查", "案件", "天气", "依法", "咪唑", "剂量", "苯甲", "报道", "此事"};
  const csc::Segmenter seg(
      [&] {
        std::vector<std::u32string> w;
        for (const char* x : words) w.push_back(u(x));
        return w;
      }());
  for (int i = 0; i < 10; ++i) {
    auto target = u(words[i]);
    auto source = target;
    source[1] = U'错';
    data.push_back({std::to_string(i), source, target});
  }
  CHECK(csc::build_ideal_dictionary(data, 0.0, 1, &seg).empty());
  CHECK(csc::build_ideal_dictionary(data, 1.0, 1, &seg).size() == 10);
  const auto half = csc::build_ideal_dictionary(data, 0.5, 7, &seg);
  CHECK(half.size() == 5);
  CHECK(csc::build_ideal_dictionary(data, 0.5, 7, &seg).terms() == half.terms());
  CHECK_THROWS_AS(csc::build_ideal_dictionary(data, 1.5, 7, &seg), csc::ContractViolation);
  CHECK_THROWS_AS(csc::build_ideal_dictionary(data, -0.1, 7, &seg), csc::ContractViolation);
}
