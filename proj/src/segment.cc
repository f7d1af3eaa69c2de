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

#include "csc/segment.h"

#include <algorithm>
#include <unordered_map>

#include "csc/utf8.h"

namespace csc {

Segmenter::Segmenter(const std::vector<std::u32string>& words) {
  for (const auto& w : words) {
    if (w.size() < 2) continue;
    words_.insert(w);
    max_len_ = std::max(max_len_, w.size());
  }
}

Segmenter Segmenter::from_corpus(std::span<const std::u32string> corpus,
                                 std::size_t min_count, std::size_t max_len) {
  std::unordered_map<std::u32string, std::size_t> counts;
  for (const auto& sentence : corpus) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      for (std::size_t len = 2; len <= max_len && i + len <= sentence.size(); ++len) {
        if (!is_han(sentence[i + len - 1])) break;
        if (!is_han(sentence[i])) break;
        ++counts[sentence.substr(i, len)];
      }
    }
  }
  std::vector<std::u32string> words;
  for (const auto& [gram, count] : counts) {
    if (count >= min_count) words.push_back(gram);
  }
  return Segmenter(words);
}

std::vector<Span> Segmenter::segment(std::u32string_view text) const {
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t taken = 1;
    for (std::size_t len = std::min(max_len_, text.size() - i); len >= 2; --len) {
      if (words_.count(std::u32string(text.substr(i, len)))) {
        taken = len;
        break;
      }
    }
    out.emplace_back(i, i + taken);
    i += taken;
  }
  return out;
}

bool Segmenter::contains(std::u32string_view word) const {
  return words_.count(std::u32string(word)) != 0;
}

}  // namespace csc
