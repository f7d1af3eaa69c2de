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

#ifndef CSC_CORPUS_H_
#define CSC_CORPUS_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace csc {

// A gold-annotated sentence: `source` may contain spelling errors,
// `target` is its correction. Both have the same length in characters.
struct SentencePair {
  std::string id;
  std::u32string source;
  std::u32string target;
};

// Splits on `sep` without collapsing empty fields.
std::vector<std::string_view> split_fields(std::string_view line, char sep);

// Drops a trailing '\r' (files written on Windows).
std::string_view strip_cr(std::string_view line);

// One sentence per line; blank lines are skipped. Errors carry the 0-based
// line number.
std::vector<std::u32string> read_sentences(std::istream& in);

// `id<TAB>source<TAB>target` per line, '#' comments and blank lines
// ignored. Source/target length mismatch is a ParseError.
std::vector<SentencePair> read_dataset_tsv(std::istream& in);

void write_dataset_tsv(std::ostream& out, const std::vector<SentencePair>& pairs);

// Positions where `a` and `b` differ. Both must have equal length.
std::vector<std::size_t> diff_positions(std::u32string_view a,
                                        std::u32string_view b);

}  // namespace csc

#endif  // CSC_CORPUS_H_
