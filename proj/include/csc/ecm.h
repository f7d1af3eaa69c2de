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

#ifndef CSC_ECM_H_
#define CSC_ECM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csc/confusion.h"
#include "csc/random.h"

namespace csc {

// Error-consistent corruption: every corrupted sentence carries errors of a
// single type, as produced by one input method.
enum class ErrorType { kPronunciation = 0, kShape = 1, kRandom = 2, kUnchanged = 3 };

inline constexpr std::size_t kErrorTypeCount = 4;

std::string_view to_string(ErrorType type);
std::optional<ErrorType> parse_error_type(std::string_view name);

struct EcmConfig {
  double p_pronunciation = 0.30;
  double p_shape = 0.30;
  double p_random = 0.20;
  double p_unchanged = 0.20;
  // Replaced characters per sentence <= floor(max_ratio * length).
  double max_ratio = 0.15;
  std::uint64_t seed = 42;
  // Failed position draws allowed per edit before giving up on it.
  int max_retries = 8;
  // Chance of a fragment (continuous) edit at a pronunciation site where the
  // n-gram set offers one.
  double p_continuous = 0.5;

  // Throws ContractViolation unless the probabilities are >= 0 and sum to 1
  // (within 1e-9), 0 < max_ratio <= 1 and max_retries >= 1.
  void validate() const;
};

struct Edit {
  std::size_t pos = 0;
  std::u32string original;
  std::u32string replacement;

  bool operator==(const Edit&) const = default;
};

struct CorruptionRecord {
  std::u32string source;  // corrupted
  std::u32string target;  // original
  // Type drawn for the sentence, and the type actually realised: a sentence
  // where no edit could be made degrades to kUnchanged with `degraded` set.
  ErrorType drawn_type = ErrorType::kUnchanged;
  ErrorType error_type = ErrorType::kUnchanged;
  std::vector<Edit> edits;  // sorted by position, non-overlapping
  bool degraded = false;
  std::size_t failed_draws = 0;
};

// Read-only inputs shared by all sentences.
struct EcmResources {
  const CharConfusion* chars = nullptr;
  const NgramConfusion* ngrams = nullptr;
  // Replacement pool for the random type, sorted and deduplicated.
  std::vector<char32_t> inventory;
};

// Corrupts one sentence. Only Han characters are edited. The number of
// edits is uniform in 1..budget; each picks a fresh position uniformly.
// Pronunciation edits replace one character from its phonetic set or, with
// probability p_continuous when available, a 2-4 character fragment from the
// n-gram set; shape edits use the morphological set; random edits draw from
// the inventory.
CorruptionRecord corrupt_sentence(std::u32string_view sentence,
                                  const EcmResources& resources,
                                  const EcmConfig& config, Rng& rng);

struct EcmSummary {
  std::size_t records = 0;
  std::array<std::size_t, kErrorTypeCount> drawn{};
  std::array<std::size_t, kErrorTypeCount> realised{};
  std::size_t degraded = 0;
  std::size_t edits = 0;
  std::size_t continuous_edits = 0;
  std::size_t edited_chars = 0;
  std::size_t failed_draws = 0;
};

// One record per sentence; sentence i uses Rng::for_item(config.seed, i), so
// the output does not depend on `jobs`.
std::vector<CorruptionRecord> generate_corpus(std::span<const std::u32string> corpus,
                                              const EcmResources& resources,
                                              const EcmConfig& config,
                                              EcmSummary* summary = nullptr,
                                              unsigned jobs = 1);

// `source<TAB>target<TAB>error_type<TAB>edit_spec`; edit_spec joins
// `pos:orig>repl` with ';'. Degraded records are typed "unchanged" and
// carry edit_spec "degraded:<drawn type>"; other unedited records use "-".
std::string format_record_tsv(const CorruptionRecord& record);

// The summary as '#'-prefixed lines.
void write_summary(std::ostream& out, const EcmSummary& summary);

// Total number of replaced characters.
std::size_t edited_chars(const CorruptionRecord& record);

}  // namespace csc

#endif  // CSC_ECM_H_
