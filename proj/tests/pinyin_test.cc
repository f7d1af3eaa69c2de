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

#include <fstream>
#include <sstream>
#include <string>

#include "csc/confusion.h"
#include "csc/error.h"
#include "csc/pinyin.h"
#include "doctest.h"

using csc::decompose;
using csc::PhoneticMatch;
using csc::PinyinSyllable;

namespace {

const csc::PinyinTable& bundled_table() {
  static const csc::PinyinTable table =
      csc::PinyinTable::load_file(std::string(CSC_DATA_DIR) + "/pinyin.tsv");
  return table;
}

}  // namespace

TEST_CASE("decompose splits initial, final and tone") {
  CHECK(decompose("cha1") == PinyinSyllable{"ch", "a", 1});
  CHECK(decompose("ca1") == PinyinSyllable{"c", "a", 1});
  CHECK(decompose("ai4") == PinyinSyllable{"", "ai", 4});
  CHECK(decompose("zhuang4") == PinyinSyllable{"zh", "uang", 4});
  CHECK(decompose("lv3") == PinyinSyllable{"l", "v", 3});
  CHECK(decompose("er2") == PinyinSyllable{"", "er", 2});
  CHECK(decompose("yi1") == PinyinSyllable{"y", "i", 1});
  CHECK(decompose("de5") == PinyinSyllable{"d", "e", 5});
}

TEST_CASE("decompose rejects malformed syllables and names them") {
  for (const char* bad : {"", "cha", "cha6", "xyz1", "zh1", "CHA1", "a1b"}) {
    try {
      decompose(bad);
      FAIL("accepted " << bad);
    } catch (const csc::Error& e) {
      CHECK(std::string(e.what()).find(bad) != std::string::npos);
    }
  }
}

TEST_CASE("diacritic input is normalized to tone digits") {
  CHECK(csc::normalize_pinyin("chā") == "cha1");
  CHECK(csc::normalize_pinyin("cā") == "ca1");
  CHECK(csc::normalize_pinyin("lǜ") == "lv4");
  CHECK(csc::normalize_pinyin("ma") == "ma5");
  CHECK(csc::normalize_pinyin("nian2") == "nian2");
}

TEST_CASE("phonetic similarity") {
  const PinyinSyllable cha{"ch", "a", 1}, ca{"c", "a", 1};
  CHECK(csc::phonetic_similar(cha, ca));
  CHECK_FALSE(csc::phonetic_similar(cha, ca, PhoneticMatch::kExact));
  CHECK(csc::phonetic_similar(cha, cha));
  CHECK_FALSE(csc::phonetic_similar({"b", "ao", 4}, {"y", "i", 4}));
  CHECK(csc::phonetic_similar({"s", "i", 4}, {"sh", "i", 4}));
  CHECK(csc::phonetic_similar({"n", "ei", 4}, {"l", "ei", 4}));
  CHECK(csc::phonetic_similar({"f", "u", 2}, {"h", "u", 2}));
  CHECK(csc::phonetic_similar({"y", "i", 1}, {"y", "i", 4}));  // tone ignored
  CHECK_FALSE(csc::phonetic_similar({"r", "en", 2}, {"l", "en", 2}));
}

TEST_CASE("bundled table: every reading recomposes and similarity is symmetric") {
  const auto& table = bundled_table();
  CHECK(table.size() > 6000);
  std::vector<PinyinSyllable> sample;
  for (char32_t c = 0x4E00; c < 0x9FA6; ++c) {
    for (const auto& s : table.readings(c)) {
      CHECK(decompose(s.integral()) == s);
      if (sample.size() < 300 && (c % 37) == 0) sample.push_back(s);
    }
  }
  for (const auto& a : sample) {
    CHECK(csc::phonetic_similar(a, a));
    for (const auto& b : sample) {
      CHECK(csc::phonetic_similar(a, b) == csc::phonetic_similar(b, a));
    }
  }
}

TEST_CASE("bundled table covers the sample confusion set") {
  std::ifstream in(std::string(CSC_DATA_DIR) + "/char_confusion.tsv");
  REQUIRE(in);
  const auto conf = csc::load_char_confusion(in);
  for (char32_t c : conf.inventory()) CHECK(bundled_table().contains(c));
}

TEST_CASE("table lookups and polyphones") {
  std::istringstream in("# comment\n行\txing2,hang2\n形\txing2\n杭\thang2\n");
  const auto t = csc::PinyinTable::load(in);
  CHECK(t.readings(U'行').size() == 2);
  CHECK(t.primary(U'行')->integral() == "xing2");
  CHECK(t.primary(U'无') == nullptr);
  CHECK(t.similar(U'行', U'杭'));  // second reading matches
  const auto alikes = t.sound_alikes(U'行', PhoneticMatch::kExact);
  CHECK(alikes == std::vector<char32_t>{U'形', U'杭'});

  std::istringstream bad("好\thao9\n");
  CHECK_THROWS_AS(csc::PinyinTable::load(bad), csc::ParseError);
}

TEST_CASE("sound-alikes follow fuzzy groups only when asked") {
  const auto& t = bundled_table();
  const auto fuzzy = t.sound_alikes(U'四');
  const auto exact = t.sound_alikes(U'四', PhoneticMatch::kExact);
  auto has = [](const std::vector<char32_t>& v, char32_t c) {
    return std::find(v.begin(), v.end(), c) != v.end();
  };
  CHECK(has(fuzzy, U'室'));
  CHECK_FALSE(has(exact, U'室'));
  CHECK(has(exact, U'寺'));
  CHECK_FALSE(has(fuzzy, U'四'));
}
