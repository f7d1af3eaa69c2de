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

#ifndef CSC_DECODER_H_
#define CSC_DECODER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csc/dictionary.h"
#include "csc/error.h"
#include "csc/lattice.h"

namespace csc {

// Dictionary-guided rescoring of a speller lattice. A path's score is
//   total = sum of chosen logp + eta * asm_reward(path)
// and the search maximizes it. Ties go to the higher raw score, then to
// fewer altered positions, then to the lexicographically smallest tokens.
// Raw scores are accumulated on a fixed grid of 2^-32 nats (logp values are
// rounded to it), which keeps the sums associative; every decoder here ranks
// and reports on that grid, so they agree exactly on equal-score paths.
struct DecodeConfig {
  double eta = 4.0;
  std::size_t beam_size = 20;
  PruneConfig prune;
  AsmCountMode asm_count_mode = AsmCountMode::kCoveredPositions;
  // Raw span match: input spans that are dictionary terms are kept as is.
  // Ignored when eta is 0, which switches the dictionary off entirely.
  bool use_rsm = true;
  // decode_exhaustive refuses lattices with more paths than this.
  std::size_t exhaustive_limit = 1'000'000;
  // decode_corpus runs decode_exhaustive per sentence instead of decode.
  bool exhaustive = false;

  // Throws ContractViolation unless eta >= 0, beam_size >= 1 and the prune
  // config is valid.
  void validate() const;
};

// Candidate lists the search actually explores: the pruned lattice with
// RSM-covered positions reduced to the input character.
struct SearchSpace {
  std::u32string input;
  std::vector<std::vector<Candidate>> positions;
  std::vector<bool> rsm_fixed;
};

// An RSM-fixed position keeps the input character's logp from the original
// lattice, or the position's lowest logp when the speller did not list it.
// Throws ContractViolation if the lattice has an empty position.
SearchSpace build_search_space(const Lattice& lattice, const UserDictionary& dict,
                               const DecodeConfig& config);

// Beam search over the search space. Dictionary rewards accrue as term
// occurrences complete, tracked with one matcher state per hypothesis;
// hypotheses that agree on matcher state and on which of the still
// reachable positions are already rewarded have identical futures and
// are merged.
CorrectionPath decode(const Lattice& lattice, const UserDictionary& dict,
                      const DecodeConfig& config = {});

class SearchTooLarge : public Error {
 public:
  using Error::Error;
};

// Scores every path of the search space and returns the best one under the
// same ordering as decode(). Throws SearchTooLarge when the path count
// exceeds config.exhaustive_limit.
CorrectionPath decode_exhaustive(const Lattice& lattice, const UserDictionary& dict,
                                 const DecodeConfig& config = {});

// Scores a given token sequence from scratch against the search space.
// Throws ContractViolation if a token is not available at its position.
CorrectionPath score_path(const Lattice& lattice, std::u32string_view tokens,
                          const UserDictionary& dict, const DecodeConfig& config = {});

struct DecodeOutcome {
  std::string id;
  std::u32string input;
  std::optional<CorrectionPath> path;
  std::string error;  // set when path is empty
};

struct CorpusDiagnostics {
  std::size_t sentences = 0;
  std::size_t failures = 0;
  // Mean post-prune candidate-path count per sentence.
  double avg_path_count = 0.0;
  // Output differs from the input.
  std::size_t changed_sentences = 0;
  // Output differs from the greedy path of the pruned lattice.
  std::size_t flipped_sentences = 0;
  std::size_t flipped_positions = 0;
};

// Decodes every lattice; a failing record is reported in its outcome and
// the rest continue. `jobs` > 1 decodes in parallel; output order always
// matches input order.
std::vector<DecodeOutcome> decode_corpus(std::span<const Lattice> lattices,
                                         const UserDictionary& dict,
                                         const DecodeConfig& config,
                                         CorpusDiagnostics* diagnostics = nullptr,
                                         unsigned jobs = 1);

// `{"id", "output", "raw_score", "dict_score", "total", "edits": [...]}`
// with one edit object `{"pos", "from", "to"}` per changed position.
std::string decode_record_json(const DecodeOutcome& outcome);

}  // namespace csc

#endif  // CSC_DECODER_H_
