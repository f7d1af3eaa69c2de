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

#ifndef CSC_SEGMENT_H_
#define CSC_SEGMENT_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace csc {

// [begin, end) character offsets.
using Span = std::pair<std::size_t, std::size_t>;

// Greedy longest-match word segmenter. Characters not covered by any word
// become single-character segments.
class Segmenter {
 public:
  Segmenter() = default;
  explicit Segmenter(const std::vector<std::u32string>& words);

  // Word list = every all-Han 2..max_len gram occurring at least
  // `min_count` times in `corpus`.
  static Segmenter from_corpus(std::span<const std::u32string> corpus,
                               std::size_t min_count, std::size_t max_len = 4);

  std::vector<Span> segment(std::u32string_view text) const;

  bool contains(std::u32string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::u32string> words_;
  std::size_t max_len_ = 0;
};

}  // namespace csc

#endif  // CSC_SEGMENT_H_
