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

#ifndef CSC_DICTIONARY_H_
#define CSC_DICTIONARY_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "csc/corpus.h"

namespace csc {

class Segmenter;

// Aho-Corasick automaton over code points. Matching is incremental: feed
// one character at a time with next() and read the terms ending at the new
// state with outputs(). A state is a small integer, so a search hypothesis
// can carry its own matcher position by value.
class TermMatcher {
 public:
  using State = std::uint32_t;
  static constexpr State kRoot = 0;

  TermMatcher();
  explicit TermMatcher(std::span<const std::u32string> terms);

  State next(State state, char32_t c) const;

  // Lengths of all terms that end at `state`, longest first.
  std::span<const std::uint32_t> outputs(State state) const {
    const Node& n = nodes_[state];
    return {outputs_.data() + n.out_begin, n.out_end - n.out_begin};
  }

  // Length of the string spelled by the path from the root to `state`:
  // the longest suffix of the input read so far that is a term prefix.
  std::uint32_t depth(State state) const { return nodes_[state].depth; }

  std::size_t state_count() const { return nodes_.size(); }
  std::size_t max_term_length() const { return max_term_length_; }

 private:
  struct Node {
    State fail = kRoot;
    std::uint32_t depth = 0;
    std::uint32_t out_begin = 0;
    std::uint32_t out_end = 0;
  };

  static std::uint64_t edge_key(State s, char32_t c) {
    return (static_cast<std::uint64_t>(s) << 32) | c;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, State> edges_;
  std::vector<std::uint32_t> outputs_;
  std::size_t max_term_length_ = 0;
};

// An occurrence of a dictionary term at [start, end).
struct SpanMatch {
  std::size_t start = 0;
  std::size_t end = 0;
  std::u32string term;

  bool operator==(const SpanMatch&) const = default;
  auto operator<=>(const SpanMatch&) const = default;
};

// What the altered-span reward counts among term occurrences that contain
// at least one altered position.
enum class AsmCountMode {
  kCoveredPositions,  // every position covered by such an occurrence
  kAlteredPositions,  // only the altered positions inside them
};

// A set of domain terms of length 2..kMaxTermLength with its matcher.
class UserDictionary {
 public:
  static constexpr std::size_t kMaxTermLength = 64;

  UserDictionary() = default;
  // Terms shorter than 2 or longer than kMaxTermLength characters are
  // rejected and reported through `warnings`.
  explicit UserDictionary(std::span<const std::u32string> terms,
                          std::vector<std::string>* warnings = nullptr);

  const std::set<std::u32string>& terms() const { return terms_; }
  const TermMatcher& matcher() const { return matcher_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool contains(const std::u32string& term) const { return terms_.count(term) != 0; }

 private:
  std::set<std::u32string> terms_;
  TermMatcher matcher_;
};

// One term per line; '#' comments and blank lines are ignored, surrounding
// whitespace is trimmed, duplicates collapse.
UserDictionary load_dictionary(std::istream& in,
                               std::vector<std::string>* warnings = nullptr);
void write_dictionary(std::ostream& out, const UserDictionary& dict);

// Every occurrence of every term in `input`, overlaps included, sorted by
// (start, end).
std::vector<SpanMatch> rsm_spans(std::u32string_view input, const UserDictionary& dict);

// Altered-span reward of `path` against `input`: among the term occurrences
// in `path` that contain at least one position where path != input, the
// number of distinct positions counted under `mode`. Throws
// ContractViolation on a length mismatch.
int asm_reward(std::u32string_view input, std::u32string_view path,
               const UserDictionary& dict,
               AsmCountMode mode = AsmCountMode::kCoveredPositions);

// Ideal dictionary for upper-bound studies. Each maximal run of corrected
// positions in a gold target is widened to the words it overlaps (greedy
// segmentation) and the resulting phrase becomes a candidate; phrases of a
// single character cannot be terms and are dropped. A seeded uniform sample
// of round(proportion * #distinct phrases) phrases is returned.
// `segmenter` defaults to one built from the targets' frequent grams.
UserDictionary build_ideal_dictionary(std::span<const SentencePair> dataset,
                                      double proportion, std::uint64_t seed,
                                      const Segmenter* segmenter = nullptr);

// The distinct candidate phrases build_ideal_dictionary samples from.
std::vector<std::u32string> gold_error_phrases(std::span<const SentencePair> dataset,
                                               const Segmenter& segmenter);

}  // namespace csc

#endif  // CSC_DICTIONARY_H_
