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

#ifndef CSC_EVAL_H_
#define CSC_EVAL_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csc/corpus.h"

namespace csc {

struct EvalRecord {
  std::string id;
  std::u32string input;
  std::u32string gold;
  std::u32string pred;
};

enum class MetricStyle {
  // Precision over every sentence the system changed.
  kFaspell,
  // SIGHAN bake-off convention: a changed sentence counts against precision
  // only when its gold sentence is error-free; a wrong change on an erroneous
  // sentence is a miss.
  kOfficial,
};

enum class MetricLevel { kDetection, kCorrection };

std::string_view to_string(MetricStyle style);
std::string_view to_string(MetricLevel level);

struct MetricsReport {
  MetricLevel level = MetricLevel::kDetection;
  MetricStyle style = MetricStyle::kFaspell;
  double acc = 0.0;
  double pre = 0.0;
  double rec = 0.0;
  double f1 = 0.0;
  std::size_t records = 0;
  std::size_t true_positives = 0;
  std::size_t flagged = 0;      // pred != input
  std::size_t gold_errors = 0;  // gold != input
  std::size_t true_negatives = 0;
  std::size_t false_positives = 0;
};

// Sentence-level accuracy, precision, recall and F1. A sentence is a
// detection hit when the system changed exactly the gold error positions,
// and a correction hit when its output equals the gold sentence. 0/0 is
// reported as 0. Throws ParseError naming the record index on a length
// mismatch.
MetricsReport sentence_metrics(std::span<const EvalRecord> records, MetricStyle style,
                               MetricLevel level);

// `id<TAB>input<TAB>gold<TAB>pred`, '#' comments.
std::vector<EvalRecord> read_eval_tsv(std::istream& in);

// Table-style corpus statistics. Lengths are in characters of the source
// side; they are empty for an empty dataset. Perplexity needs an external
// language model and is not computed.
struct DatasetStats {
  std::size_t sentences = 0;
  std::size_t error_sentences = 0;
  // Sentences with at least one run of >= 2 adjacent corrected characters.
  std::size_t continuous_error_sentences = 0;
  std::optional<std::size_t> min_length;
  std::optional<std::size_t> max_length;
  std::optional<double> avg_length;
};

DatasetStats dataset_stats(std::span<const SentencePair> dataset);

// Aligned human-readable rendering.
void print_metrics(std::ostream& out, const MetricsReport& report);
void print_stats(std::ostream& out, const DatasetStats& stats);

}  // namespace csc

#endif  // CSC_EVAL_H_
