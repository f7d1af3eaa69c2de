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

#include "csc/pinyin.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>

#include "csc/corpus.h"
#include "csc/error.h"
#include "csc/utf8.h"

namespace csc {
namespace {

constexpr std::array<std::string_view, 23> kInitials = {
    "b", "p", "m", "f", "d", "t", "n", "l", "g", "k", "h", "j",
    "q", "x", "zh", "ch", "sh", "r", "z", "c", "s", "y", "w"};

// Both "v" and "ü" spellings of the u-umlaut finals are accepted.
constexpr std::string_view kFinals[] = {
    "a",   "o",    "e",    "ai",  "ei",  "ao",   "ou",  "an",   "en",   "ang",
    "eng", "ong",  "er",   "i",   "ia",  "ie",   "iao", "iu",   "ian",  "in",
    "iang", "ing", "iong", "io",  "u",   "ua",   "uo",  "uai",  "ui",   "uan",
    "un",  "uang", "ueng", "ue",  "v",   "ve",   "van", "vn",   "ü",    "üe",
    "üan", "ün",   "m",    "n",   "ng",  "ê"};

bool is_initial(std::string_view s) {
  return std::find(kInitials.begin(), kInitials.end(), s) != kInitials.end();
}

bool is_final(std::string_view s) {
  return std::find(std::begin(kFinals), std::end(kFinals), s) != std::end(kFinals);
}

std::string fold_umlaut(std::string_view s) {
  std::string out;
  static constexpr std::string_view kUmlaut = "ü";
  for (std::size_t i = 0; i < s.size();) {
    if (s.substr(i, kUmlaut.size()) == kUmlaut) {
      out.push_back('v');
      i += kUmlaut.size();
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

std::string_view fuzzy_initial(std::string_view initial) {
  if (initial == "zh") return "z";
  if (initial == "ch") return "c";
  if (initial == "sh") return "s";
  if (initial == "n") return "l";
  if (initial == "h") return "f";
  return initial;
}

struct ToneMark {
  char32_t marked;
  char base;
  int tone;
};

constexpr std::array<ToneMark, 28> kToneMarks = {{
    {U'ā', 'a', 1}, {U'á', 'a', 2}, {U'ǎ', 'a', 3}, {U'à', 'a', 4},
    {U'ē', 'e', 1}, {U'é', 'e', 2}, {U'ě', 'e', 3}, {U'è', 'e', 4},
    {U'ī', 'i', 1}, {U'í', 'i', 2}, {U'ǐ', 'i', 3}, {U'ì', 'i', 4},
    {U'ō', 'o', 1}, {U'ó', 'o', 2}, {U'ǒ', 'o', 3}, {U'ò', 'o', 4},
    {U'ū', 'u', 1}, {U'ú', 'u', 2}, {U'ǔ', 'u', 3}, {U'ù', 'u', 4},
    {U'ǖ', 'v', 1}, {U'ǘ', 'v', 2}, {U'ǚ', 'v', 3}, {U'ǜ', 'v', 4},
    {U'ń', 'n', 2}, {U'ň', 'n', 3}, {U'ǹ', 'n', 4}, {U'ḿ', 'm', 2},
}};

}  // namespace

std::string PinyinSyllable::integral() const {
  return initial + final + std::to_string(tone);
}

std::string PinyinSyllable::toneless() const { return initial + final; }

std::span<const std::string_view> pinyin_initials() { return kInitials; }
std::span<const std::string_view> pinyin_finals() { return kFinals; }

PinyinSyllable decompose(std::string_view integral) {
  auto fail = [&](const char* why) -> Error {
    return Error("cannot decompose pinyin \"" + std::string(integral) + "\": " + why);
  };
  if (integral.size() < 2) throw fail("too short");
  const char tone_char = integral.back();
  if (tone_char < '1' || tone_char > '5') throw fail("missing tone digit 1-5");
  const std::string_view body = integral.substr(0, integral.size() - 1);
  for (std::size_t i = 0; i < body.size(); ++i) {
    const auto b = static_cast<unsigned char>(body[i]);
    if (!(b >= 'a' && b <= 'z') && b < 0x80) throw fail("unexpected character");
  }
  for (std::size_t len = std::min<std::size_t>(2, body.size()); ; --len) {
    const std::string_view initial = body.substr(0, len);
    if (len == 0 || is_initial(initial)) {
      const std::string_view rest = body.substr(len);
      if (is_final(rest)) {
        return {std::string(initial), std::string(rest), tone_char - '0'};
      }
    }
    if (len == 0) break;
  }
  throw fail("no initial/final split");
}

std::string normalize_pinyin(std::string_view syllable) {
  std::u32string text = utf8_decode(syllable);
  int tone = 0;
  std::string out;
  for (char32_t c : text) {
    if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
    if (c >= U'1' && c <= U'5') {
      tone = static_cast<int>(c - U'0');
      continue;
    }
    const auto mark = std::find_if(kToneMarks.begin(), kToneMarks.end(),
                                   [c](const ToneMark& m) { return m.marked == c; });
    if (mark != kToneMarks.end()) {
      out.push_back(mark->base);
      tone = mark->tone;
    } else if (c == U'ü') {
      out.push_back('v');
    } else {
      out += utf8_encode(c);
    }
  }
  return out + std::to_string(tone == 0 ? 5 : tone);
}

std::string phonetic_key(const PinyinSyllable& s, PhoneticMatch match) {
  const std::string final = fold_umlaut(s.final);
  if (match == PhoneticMatch::kExact) return s.initial + "|" + final;
  return std::string(fuzzy_initial(s.initial)) + "|" + final;
}

bool phonetic_similar(const PinyinSyllable& a, const PinyinSyllable& b,
                      PhoneticMatch match) {
  return phonetic_key(a, match) == phonetic_key(b, match);
}

PinyinTable PinyinTable::load(std::istream& in) {
  PinyinTable table;
  std::string line;
  for (std::size_t line_no = 0; std::getline(in, line); ++line_no) {
    const std::string_view view = strip_cr(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_fields(view, '\t');
    if (fields.size() != 2) throw ParseError(line_no, "expected char<TAB>readings");
    std::u32string chars;
    try {
      chars = utf8_decode(fields[0]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (chars.size() != 1) throw ParseError(line_no, "key must be one character");
    std::vector<PinyinSyllable> readings;
    for (std::string_view syl : split_fields(fields[1], ',')) {
      if (syl.empty()) continue;
      try {
        readings.push_back(decompose(normalize_pinyin(syl)));
      } catch (const Error& e) {
        throw ParseError(line_no, e.what());
      }
    }
    if (readings.empty()) throw ParseError(line_no, "no readings");
    table.add(chars.front(), std::move(readings));
  }
  if (in.bad()) throw Error("I/O error while reading pinyin table");
  return table;
}

PinyinTable PinyinTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pinyin table " + path);
  return load(in);
}

void PinyinTable::add(char32_t c, std::vector<PinyinSyllable> readings) {
  auto& slot = table_[c];
  for (auto& r : readings) {
    if (std::find(slot.begin(), slot.end(), r) != slot.end()) continue;
    for (auto* index : {&by_fuzzy_key_, &by_exact_key_}) {
      const auto match = index == &by_fuzzy_key_ ? PhoneticMatch::kFuzzy
                                                 : PhoneticMatch::kExact;
      auto& bucket = (*index)[phonetic_key(r, match)];
      if (std::find(bucket.begin(), bucket.end(), c) == bucket.end()) {
        bucket.push_back(c);
      }
    }
    slot.push_back(std::move(r));
  }
}

std::span<const PinyinSyllable> PinyinTable::readings(char32_t c) const {
  const auto it = table_.find(c);
  if (it == table_.end()) return {};
  return it->second;
}

const PinyinSyllable* PinyinTable::primary(char32_t c) const {
  const auto it = table_.find(c);
  return it == table_.end() ? nullptr : &it->second.front();
}

bool PinyinTable::similar(char32_t a, char32_t b, PhoneticMatch match) const {
  for (const auto& ra : readings(a)) {
    for (const auto& rb : readings(b)) {
      if (phonetic_similar(ra, rb, match)) return true;
    }
  }
  return false;
}

std::vector<char32_t> PinyinTable::sound_alikes(char32_t c,
                                                PhoneticMatch match) const {
  const auto& index = match == PhoneticMatch::kFuzzy ? by_fuzzy_key_ : by_exact_key_;
  std::vector<char32_t> out;
  for (const auto& r : readings(c)) {
    const auto it = index.find(phonetic_key(r, match));
    if (it == index.end()) continue;
    for (char32_t other : it->second) {
      if (other != c) out.push_back(other);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace csc
