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

#include <cmath>
#include <sstream>

#include "csc/confusion.h"
#include "csc/ecm.h"
#include "csc/error.h"
#include "csc/random.h"
#include "doctest.h"
#include "testing/fixtures.h"

using csc::ErrorType;
using fixture::u;

namespace {

struct Resources {
  csc::CharConfusion chars;
  csc::NgramConfusion ngrams;
  csc::EcmResources view() const { return {&chars, &ngrams, chars.inventory()}; }
};

Resources sample_resources() {
  Resources r;
  std::istringstream in(
      "报\tP\t抱,暴\n报\tM\t极\n导\tP\t道,到\n导\tM\t异\n新\tP\t心,欣\n新\tM\t亲\n"
      "华\tP\t话,花\n华\tM\t毕\n社\tP\t设,射\n社\tM\t杜\n了\tP\t乐\n此\tP\t次,词\n"
      "此\tM\t比\n事\tP\t是,市\n事\tM\t争\n");
  r.chars = csc::load_char_confusion(in);
  r.ngrams.insert_symmetric(u("报导"), u("抱到"));
  r.ngrams.insert_symmetric(u("此事"), u("次是"));
  r.ngrams.insert_symmetric(u("新华社"), u("心话设"));
  return r;
}

csc::EcmConfig only(ErrorType type) {
  csc::EcmConfig cfg;
  cfg.p_pronunciation = type == ErrorType::kPronunciation;
  cfg.p_shape = type == ErrorType::kShape;
  cfg.p_random = type == ErrorType::kRandom;
  cfg.p_unchanged = type == ErrorType::kUnchanged;
  return cfg;
}

}  // namespace

TEST_CASE("unchanged type is the identity") {
  const auto res = sample_resources();
  csc::Rng rng(1);
  const auto rec = csc::corrupt_sentence(u("新华社报导了此事"), res.view(),
                                         only(ErrorType::kUnchanged), rng);
  CHECK(rec.source == rec.target);
  CHECK(rec.edits.empty());
  CHECK_FALSE(rec.degraded);
  CHECK(csc::format_record_tsv(rec) == "新华社报导了此事\t新华社报导了此事\tunchanged\t-");
}

TEST_CASE("pronunciation edits come from the phonetic or fragment sets") {
  const auto res = sample_resources();
  auto cfg = only(ErrorType::kPronunciation);
  cfg.max_ratio = 0.5;  // room for several edits on a short sentence
  const auto target = u("新华社报导了此事");
  bool saw_fragment = false;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    csc::Rng rng(seed);
    const auto rec = csc::corrupt_sentence(target, res.view(), cfg, rng);
    REQUIRE(rec.source.size() == target.size());
    CHECK(rec.error_type == ErrorType::kPronunciation);
    CHECK(csc::edited_chars(rec) <= 4);
    for (const auto& e : rec.edits) {
      CHECK(target.compare(e.pos, e.original.size(), e.original) == 0);
      CHECK(rec.source.compare(e.pos, e.replacement.size(), e.replacement) == 0);
      if (e.original.size() == 1) {
        CHECK(res.chars.phonetic_of(e.original[0]).count(e.replacement[0]));
      } else {
        saw_fragment = true;
        CHECK(res.ngrams.lookup(e.original).count(e.replacement));
      }
    }
  }
  CHECK(saw_fragment);
}

TEST_CASE("shape and random edits are single characters") {
  const auto res = sample_resources();
  const auto target = u("新华社报导了此事");
  for (auto type : {ErrorType::kShape, ErrorType::kRandom}) {
    auto cfg = only(type);
    cfg.max_ratio = 0.5;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      csc::Rng rng(seed);
      const auto rec = csc::corrupt_sentence(target, res.view(), cfg, rng);
      for (const auto& e : rec.edits) {
        CHECK(e.original.size() == 1);
        CHECK(e.replacement != e.original);
        if (type == ErrorType::kShape) {
          CHECK(res.chars.morphological_of(e.original[0]).count(e.replacement[0]));
        }
      }
    }
  }
}

TEST_CASE("budget: a ten-character sentence gets at most one edited character") {
  const auto res = sample_resources();
  const auto target = u("新华社报导了此事新华");
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    csc::Rng rng(seed);
    const auto rec = csc::corrupt_sentence(target, res.view(), csc::EcmConfig{}, rng);
    CHECK(csc::edited_chars(rec) <= 1);
  }
}

TEST_CASE("sentences without candidates degrade and are flagged") {
  const auto res = sample_resources();
  const std::vector<std::u32string> corpus(50, u("天地玄黄宇宙洪荒日月盈昃辰宿列张"));
  auto cfg = only(ErrorType::kShape);
  csc::EcmSummary summary;
  const auto records = csc::generate_corpus(corpus, res.view(), cfg, &summary);
  for (const auto& r : records) {
    CHECK(r.degraded);
    CHECK(r.error_type == ErrorType::kUnchanged);
    CHECK(r.source == r.target);
    CHECK(csc::format_record_tsv(r).ends_with("\tunchanged\tdegraded:shape"));
  }
  CHECK(summary.degraded == 50);
}

TEST_CASE("non-Han characters are never edited") {
  const auto res = sample_resources();
  auto cfg = only(ErrorType::kRandom);
  cfg.max_ratio = 1.0;
  const auto target = u("A1新,华。2B");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    csc::Rng rng(seed);
    const auto rec = csc::corrupt_sentence(target, res.view(), cfg, rng);
    for (const auto& e : rec.edits) CHECK((e.pos == 2 || e.pos == 4));
  }
}

TEST_CASE("generation is reproducible and independent of the thread count") {
  const auto res = sample_resources();
  std::vector<std::u32string> corpus;
  for (int i = 0; i < 400; ++i) corpus.push_back(u("新华社报导了此事，新华社报导了此事"));
  const auto a = csc::generate_corpus(corpus, res.view(), {}, nullptr, 1);
  const auto b = csc::generate_corpus(corpus, res.view(), {}, nullptr, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(csc::format_record_tsv(a[i]) == csc::format_record_tsv(b[i]));
  }
  csc::EcmConfig other;
  other.seed = 43;
  const auto c = csc::generate_corpus(corpus, res.view(), other);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    differ += csc::format_record_tsv(a[i]) != csc::format_record_tsv(c[i]);
  }
  CHECK(differ > 0);
}

TEST_CASE("config validation") {
  csc::EcmConfig cfg;
  cfg.p_shape = 0.5;
  CHECK_THROWS_AS(cfg.validate(), csc::ContractViolation);
  cfg = {};
  cfg.max_ratio = 0;
  CHECK_THROWS_AS(cfg.validate(), csc::ContractViolation);
  cfg = {};
  cfg.p_random = -0.1;
  cfg.p_unchanged = 0.5;
  CHECK_THROWS_AS(cfg.validate(), csc::ContractViolation);
  CHECK_NOTHROW(csc::EcmConfig{}.validate());
}

TEST_CASE("error type names round trip") {
  for (auto t : {ErrorType::kPronunciation, ErrorType::kShape, ErrorType::kRandom,
                 ErrorType::kUnchanged}) {
    CHECK(csc::parse_error_type(csc::to_string(t)) == t);
  }
  CHECK_FALSE(csc::parse_error_type("sound").has_value());
}

TEST_CASE("rng bounded draws are uniform enough and per-item streams differ") {
  csc::Rng rng(9);
  std::array<int, 7> hist{};
  for (int i = 0; i < 70000; ++i) ++hist[rng.below(7)];
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
  CHECK(csc::Rng::for_item(1, 0).next() != csc::Rng::for_item(1, 1).next());
  CHECK(csc::Rng::for_item(1, 5).next() == csc::Rng::for_item(1, 5).next());
}
