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

#ifndef CSC_CONFUSION_H_
#define CSC_CONFUSION_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csc/pinyin.h"

namespace csc {

using CharSet = std::set<char32_t>;

// Single-character confusion sets split by error type. A character never
// appears in its own set.
struct CharConfusion {
  std::map<char32_t, CharSet> phonetic;
  std::map<char32_t, CharSet> morphological;

  // Empty set for unknown characters.
  const CharSet& phonetic_of(char32_t c) const;
  const CharSet& morphological_of(char32_t c) const;

  bool empty() const { return phonetic.empty() && morphological.empty(); }

  // Every character occurring as a key or a candidate, sorted.
  std::vector<char32_t> inventory() const;
};

// `char<TAB>P|M<TAB>cand1,cand2,...`; '#' comments and blank lines are
// ignored. Unknown type tags raise ParseError; a character listed as its
// own candidate is dropped and reported through `warnings`.
CharConfusion load_char_confusion(std::istream& in,
                                  std::vector<std::string>* warnings = nullptr);
void write_char_confusion(std::ostream& out, const CharConfusion& conf);

// Fragment-level confusion set. Keys and candidates are 2..4 characters
// long, candidates have the key's length and differ from it.
class NgramConfusion {
 public:
  using Entries = std::map<std::u32string, std::set<std::u32string>, std::less<>>;

  static constexpr std::size_t kMinLength = 2;
  static constexpr std::size_t kMaxLength = 4;

  // Inserts a -> b and b -> a. Returns false (and inserts nothing) when the
  // pair is invalid: equal fragments, unequal lengths, or length out of range.
  bool insert_symmetric(const std::u32string& a, const std::u32string& b);

  // Candidates for `fragment`, possibly empty. Throws ContractViolation when
  // the fragment length is outside [2, 4].
  const std::set<std::u32string>& lookup(std::u32string_view fragment) const;

  // Number of keys.
  std::size_t size() const { return entries_.size(); }
  const Entries& entries() const { return entries_; }

 private:
  Entries entries_;
};

// `fragment<TAB>cand1,cand2,...`. Entries are re-inserted symmetrically.
NgramConfusion load_ngram_confusion(std::istream& in);
void write_ngram_confusion(std::ostream& out, const NgramConfusion& conf);

struct NgramBuildOptions {
  // Step 1: spans seen fewer times than this are not harvested.
  std::size_t min_gram_count = 2;
  // Step 3: phrases at least this frequent are "medium/high frequency".
  std::size_t phrase_min_count = 5;
  PhoneticMatch match = PhoneticMatch::kFuzzy;
  bool enable_phrase_step = true;
  // Step 3 keeps at most this many reconverted candidates per phrase, most
  // frequent first.
  std::size_t max_phrase_candidates = 5;
};

struct NgramBuildReport {
  std::size_t harvested_grams = 0;
  std::size_t span_pairs = 0;     // Step 2 pairs (one per unordered pair)
  std::size_t phrase_pairs = 0;   // Step 3 pairs not already found by Step 2
  std::size_t phrases = 0;        // distinct medium/high-frequency phrases
  std::size_t skipped_chars = 0;  // distinct characters missing from pinyin
};

// Builds the fragment confusion set from a raw corpus:
//   1. harvest all-Han 2/3/4-gram spans with count >= min_gram_count;
//   2. pair equal-length spans whose characters are position-wise equal or
//      sound-alike (listed in `chars.phonetic`, or similar under `pinyin`);
//   3. segment the corpus greedily, convert frequent phrases to their
//      toneless pinyin and map them back to the most frequent other
//      character sequences observed with the same pinyin.
// Throws csc::Error on an empty corpus.
NgramConfusion build_ngram_confusion(std::span<const std::u32string> corpus,
                                     const CharConfusion& chars,
                                     const PinyinTable& pinyin,
                                     const NgramBuildOptions& options = {},
                                     NgramBuildReport* report = nullptr);

}  // namespace csc

#endif  // CSC_CONFUSION_H_
