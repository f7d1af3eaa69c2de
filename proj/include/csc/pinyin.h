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

#ifndef CSC_PINYIN_H_
#define CSC_PINYIN_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace csc {

// A toned pinyin syllable split into onset, rime and tone. The integral
// form is `initial + final + tone digit`, e.g. "zhuang4" = "zh" + "uang" + 4.
// Tone 5 is the neutral tone. u-umlaut may be spelled "v" or "ü"; the
// spelling is preserved.
struct PinyinSyllable {
  std::string initial;
  std::string final;
  int tone = 5;

  std::string integral() const;
  // Integral form without the tone digit.
  std::string toneless() const;

  bool operator==(const PinyinSyllable&) const = default;
};

// How strictly two syllables must agree to count as sounding alike.
enum class PhoneticMatch {
  kExact,  // same syllable, tone ignored
  kFuzzy,  // additionally z/zh, c/ch, s/sh, l/n, f/h are interchangeable
};

// The 23 initials (including y and w) and the recognised finals.
std::span<const std::string_view> pinyin_initials();
std::span<const std::string_view> pinyin_finals();

// Splits "cha1" into ("ch", "a", 1). The initial is matched longest-first;
// if the remainder is not a final, shorter initials (down to none) are
// tried. Throws csc::Error naming the syllable when no split exists.
PinyinSyllable decompose(std::string_view integral);

// Converts tone-marked input ("chā", "lǜ") to the digit form ("cha1",
// "lv4"). Already-digit input is returned lower-cased. Unmarked syllables
// get tone 5.
std::string normalize_pinyin(std::string_view syllable);

bool phonetic_similar(const PinyinSyllable& a, const PinyinSyllable& b,
                      PhoneticMatch match = PhoneticMatch::kFuzzy);

// Equivalence key for phonetic_similar: two syllables are similar iff
// their keys are equal.
std::string phonetic_key(const PinyinSyllable& s,
                         PhoneticMatch match = PhoneticMatch::kFuzzy);

// Character -> readings map. The first reading of each character is its
// most frequent one.
class PinyinTable {
 public:
  PinyinTable() = default;

  // `char<TAB>syl1,syl2,...`, '#' comments. Throws ParseError (line index)
  // on malformed lines or syllables that do not decompose.
  static PinyinTable load(std::istream& in);
  static PinyinTable load_file(const std::string& path);

  void add(char32_t c, std::vector<PinyinSyllable> readings);

  bool contains(char32_t c) const { return table_.count(c) != 0; }
  std::size_t size() const { return table_.size(); }

  // Empty span for unknown characters.
  std::span<const PinyinSyllable> readings(char32_t c) const;
  // Most frequent reading, or nullptr.
  const PinyinSyllable* primary(char32_t c) const;

  // True iff some reading of `a` is phonetic_similar to some reading of `b`.
  bool similar(char32_t a, char32_t b,
               PhoneticMatch match = PhoneticMatch::kFuzzy) const;

  // All characters sharing a phonetic key with any reading of `c`
  // (excluding `c`), sorted by code point.
  std::vector<char32_t> sound_alikes(char32_t c,
                                     PhoneticMatch match = PhoneticMatch::kFuzzy) const;

 private:
  std::unordered_map<char32_t, std::vector<PinyinSyllable>> table_;
  std::unordered_map<std::string, std::vector<char32_t>> by_fuzzy_key_;
  std::unordered_map<std::string, std::vector<char32_t>> by_exact_key_;
};

}  // namespace csc

#endif  // CSC_PINYIN_H_
