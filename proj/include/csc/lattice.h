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

#ifndef CSC_LATTICE_H_
#define CSC_LATTICE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace csc {

// One entry of a speller's top-k output: a character and its natural-log
// probability.
struct Candidate {
  char32_t token = 0;
  double logp = 0.0;

  bool operator==(const Candidate&) const = default;
};

// Per-position top-k candidates for one sentence. Candidate lists are
// sorted by logp descending and contain no duplicate tokens; there is one
// list per input character.
struct Lattice {
  std::string id;
  std::u32string input;
  std::vector<std::vector<Candidate>> positions;

  std::size_t size() const { return input.size(); }
  bool operator==(const Lattice&) const = default;
};

// Candidate pruning. A position whose best candidate scores strictly above
// `max_logp` is fixed to that candidate; otherwise candidates strictly below
// `min_logp` are discarded. At most `k` candidates survive per position.
struct PruneConfig {
  double min_logp = -11.0;
  double max_logp = -0.001;
  std::size_t k = 5;

  // A configuration under which prune() is the identity on valid lattices.
  static PruneConfig disabled() {
    return {-std::numeric_limits<double>::infinity(), 0.0,
            std::numeric_limits<std::size_t>::max()};
  }

  // Throws ContractViolation unless min_logp < max_logp <= 0 and k >= 1.
  void validate() const;
};

// A full assignment of one token per position, with its scores.
//   raw_score  = sum of the chosen candidates' logp
//   dict_score = dictionary reward (number of matched characters)
//   total      = raw_score + eta * dict_score
struct CorrectionPath {
  std::u32string tokens;
  double raw_score = 0.0;
  int dict_score = 0;
  double total = 0.0;
};

// Throws ParseError (index = record_index) on any invariant violation.
void validate(const Lattice& lattice, std::size_t record_index = 0);

// Sorts every position by logp descending, ties by code point ascending.
Lattice canonicalize(Lattice lattice);

// One JSON record per line:
//   {"id": str, "input": str, "positions": [[{"t": str, "lp": float}, ...], ...]}
// Blank lines are skipped. Malformed records raise ParseError carrying the
// 0-based record index; candidate order is preserved.
std::vector<Lattice> parse_lattices(std::istream& in);
Lattice parse_lattice_record(std::string_view line, std::size_t record_index = 0);

// Canonical single-line serialization (no trailing newline).
std::string serialize(const Lattice& lattice);
void write_lattices(std::ostream& out, std::span<const Lattice> lattices);

Lattice prune(const Lattice& lattice, const PruneConfig& config);

// Per-position argmax. Throws ContractViolation on an empty position.
CorrectionPath greedy_path(const Lattice& lattice);

// Number of distinct paths through a lattice. Large counts saturate the
// integer field; `log_count` (natural log) is always exact up to rounding.
struct PathCount {
  double log_count = 0.0;
  std::uint64_t count = 1;
  bool saturated = false;
};

PathCount candidate_path_count(const Lattice& lattice);
PathCount candidate_path_count(const Lattice& lattice, const PruneConfig& config);

// Mean post-prune path count over a corpus (0 for an empty corpus).
double average_path_count(std::span<const Lattice> lattices,
                          const PruneConfig& config);

}  // namespace csc

#endif  // CSC_LATTICE_H_
