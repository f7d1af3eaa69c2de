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

#include "csc/corpus.h"

#include <istream>
#include <ostream>

#include "csc/error.h"
#include "csc/utf8.h"

namespace csc {

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = line.find(sep, begin);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, end - begin));
    begin = end + 1;
  }
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::vector<std::u32string> read_sentences(std::istream& in) {
  std::vector<std::u32string> out;
  std::string line;
  for (std::size_t line_no = 0; std::getline(in, line); ++line_no) {
    const std::string_view view = strip_cr(line);
    if (view.empty()) continue;
    try {
      out.push_back(utf8_decode(view));
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (in.bad()) throw Error("I/O error while reading sentences");
  return out;
}

std::vector<SentencePair> read_dataset_tsv(std::istream& in) {
  std::vector<SentencePair> out;
  std::string line;
  for (std::size_t line_no = 0; std::getline(in, line); ++line_no) {
    const std::string_view view = strip_cr(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_fields(view, '\t');
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 tab-separated fields, got " +
                                    std::to_string(fields.size()));
    }
    SentencePair pair;
    pair.id = std::string(fields[0]);
    try {
      pair.source = utf8_decode(fields[1]);
      pair.target = utf8_decode(fields[2]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (pair.source.size() != pair.target.size()) {
      throw ParseError(line_no, "source and target lengths differ (" +
                                    std::to_string(pair.source.size()) + " vs " +
                                    std::to_string(pair.target.size()) + ")");
    }
    out.push_back(std::move(pair));
  }
  if (in.bad()) throw Error("I/O error while reading dataset");
  return out;
}

void write_dataset_tsv(std::ostream& out, const std::vector<SentencePair>& pairs) {
  for (const auto& p : pairs) {
    out << p.id << '\t' << utf8_encode(p.source) << '\t' << utf8_encode(p.target)
        << '\n';
  }
}

std::vector<std::size_t> diff_positions(std::u32string_view a,
                                        std::u32string_view b) {
  if (a.size() != b.size()) {
    throw ContractViolation("diff_positions: length mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) out.push_back(i);
  }
  return out;
}

}  // namespace csc
