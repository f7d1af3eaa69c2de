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

#include "csc/eval.h"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>

#include "csc/error.h"
#include "csc/utf8.h"

namespace csc {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string_view to_string(MetricStyle style) {
  return style == MetricStyle::kFaspell ? "faspell" : "official";
}

std::string_view to_string(MetricLevel level) {
  return level == MetricLevel::kDetection ? "detection" : "correction";
}

MetricsReport sentence_metrics(std::span<const EvalRecord> records, MetricStyle style,
                               MetricLevel level) {
  MetricsReport r;
  r.level = level;
  r.style = style;
  r.records = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const EvalRecord& rec = records[i];
    if (rec.input.size() != rec.gold.size() || rec.input.size() != rec.pred.size()) {
      throw ParseError(i, "record \"" + rec.id + "\": input/gold/pred lengths differ");
    }
    const bool flagged = rec.pred != rec.input;
    const bool has_error = rec.gold != rec.input;
    if (flagged) ++r.flagged;
    if (has_error) ++r.gold_errors;
    if (!flagged && !has_error) ++r.true_negatives;
    if (flagged && !has_error) ++r.false_positives;
    bool hit = false;
    if (flagged && has_error) {
      hit = level == MetricLevel::kDetection
                ? diff_positions(rec.pred, rec.input) == diff_positions(rec.gold, rec.input)
                : rec.pred == rec.gold;
    }
    if (hit) ++r.true_positives;
  }
  const std::size_t precision_den = style == MetricStyle::kFaspell
                                        ? r.flagged
                                        : r.true_positives + r.false_positives;
  r.pre = ratio(r.true_positives, precision_den);
  r.rec = ratio(r.true_positives, r.gold_errors);
  r.acc = ratio(r.true_positives + r.true_negatives, r.records);
  r.f1 = r.pre + r.rec > 0.0 ? 2.0 * r.pre * r.rec / (r.pre + r.rec) : 0.0;
  return r;
}

std::vector<EvalRecord> read_eval_tsv(std::istream& in) {
  std::vector<EvalRecord> out;
  std::string line;
  for (std::size_t line_no = 0; std::getline(in, line); ++line_no) {
    const std::string_view view = strip_cr(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_fields(view, '\t');
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected id<TAB>input<TAB>gold<TAB>pred");
    }
    EvalRecord r;
    r.id = std::string(fields[0]);
    try {
      r.input = utf8_decode(fields[1]);
      r.gold = utf8_decode(fields[2]);
      r.pred = utf8_decode(fields[3]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (r.input.size() != r.gold.size() || r.input.size() != r.pred.size()) {
      throw ParseError(line_no, "input/gold/pred lengths differ");
    }
    out.push_back(std::move(r));
  }
  if (in.bad()) throw Error("I/O error while reading evaluation file");
  return out;
}

DatasetStats dataset_stats(std::span<const SentencePair> dataset) {
  DatasetStats s;
  s.sentences = dataset.size();
  std::size_t total_length = 0;
  for (const auto& p : dataset) {
    const std::size_t len = p.source.size();
    total_length += len;
    s.min_length = std::min(s.min_length.value_or(len), len);
    s.max_length = std::max(s.max_length.value_or(len), len);
    const auto diffs = diff_positions(p.source, p.target);
    if (diffs.empty()) continue;
    ++s.error_sentences;
    for (std::size_t k = 1; k < diffs.size(); ++k) {
      if (diffs[k] == diffs[k - 1] + 1) {
        ++s.continuous_error_sentences;
        break;
      }
    }
  }
  if (!dataset.empty()) {
    s.avg_length = static_cast<double>(total_length) / static_cast<double>(dataset.size());
  }
  return s;
}

void print_metrics(std::ostream& out, const MetricsReport& r) {
  out << to_string(r.style) << ' ' << to_string(r.level) << "  acc " << fixed(r.acc, 4)
      << "  pre " << fixed(r.pre, 4) << "  rec " << fixed(r.rec, 4) << "  f1 "
      << fixed(r.f1, 4) << "  (tp " << r.true_positives << ", flagged " << r.flagged
      << ", gold errors " << r.gold_errors << ", n " << r.records << ")\n";
}

void print_stats(std::ostream& out, const DatasetStats& s) {
  auto opt = [](const auto& v, int digits) -> std::string {
    if (!v) return "n/a";
    return fixed(static_cast<double>(*v), digits);
  };
  out << "error sents/sents       " << s.error_sentences << '/' << s.sentences << '\n'
      << "min length              " << opt(s.min_length, 0) << '\n'
      << "max length              " << opt(s.max_length, 0) << '\n'
      << "avg length              " << opt(s.avg_length, 1) << '\n'
      << "continuous error sents  " << s.continuous_error_sentences << '\n';
}

}  // namespace csc
