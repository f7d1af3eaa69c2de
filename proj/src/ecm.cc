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

#include "csc/ecm.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <ostream>
#include <thread>

#include "csc/error.h"
#include "csc/utf8.h"

namespace csc {
namespace {

constexpr std::array<std::string_view, kErrorTypeCount> kTypeNames = {
    "pronunciation", "shape", "random", "unchanged"};

template <typename Set>
auto pick(const Set& set, Rng& rng) {
  return *std::next(set.begin(), static_cast<std::ptrdiff_t>(rng.below(set.size())));
}

ErrorType draw_type(const EcmConfig& config, Rng& rng) {
  const double u = rng.uniform();
  double acc = config.p_pronunciation;
  if (u < acc) return ErrorType::kPronunciation;
  acc += config.p_shape;
  if (u < acc) return ErrorType::kShape;
  acc += config.p_random;
  if (u < acc) return ErrorType::kRandom;
  return ErrorType::kUnchanged;
}

class SentenceCorruptor {
 public:
  SentenceCorruptor(std::u32string_view sentence, const EcmResources& resources,
                    const EcmConfig& config, Rng& rng)
      : text_(sentence),
        res_(resources),
        config_(config),
        rng_(rng),
        used_(sentence.size(), false) {}

  // Tries to place one edit of `type` starting at `pos` using at most
  // `chars_left` characters.
  std::optional<Edit> try_edit(ErrorType type, std::size_t pos, std::size_t chars_left) {
    const char32_t original = text_[pos];
    switch (type) {
      case ErrorType::kPronunciation: {
        std::vector<std::size_t> lengths;
        for (std::size_t len = NgramConfusion::kMinLength;
             len <= NgramConfusion::kMaxLength && len <= chars_left; ++len) {
          if (!free_run(pos, len)) break;
          if (!res_.ngrams->lookup(text_.substr(pos, len)).empty()) lengths.push_back(len);
        }
        const CharSet& single = res_.chars->phonetic_of(original);
        if (!lengths.empty() && (single.empty() || rng_.uniform() < config_.p_continuous)) {
          const std::size_t len = lengths[rng_.below(lengths.size())];
          const std::u32string fragment(text_.substr(pos, len));
          return Edit{pos, fragment, pick(res_.ngrams->lookup(fragment), rng_)};
        }
        if (single.empty()) return std::nullopt;
        return Edit{pos, std::u32string(1, original), std::u32string(1, pick(single, rng_))};
      }
      case ErrorType::kShape: {
        const CharSet& shapes = res_.chars->morphological_of(original);
        if (shapes.empty()) return std::nullopt;
        return Edit{pos, std::u32string(1, original), std::u32string(1, pick(shapes, rng_))};
      }
      case ErrorType::kRandom: {
        const auto& pool = res_.inventory;
        if (pool.empty() || (pool.size() == 1 && pool.front() == original)) {
          return std::nullopt;
        }
        for (int attempt = 0; attempt < config_.max_retries; ++attempt) {
          const char32_t c = pool[rng_.below(pool.size())];
          if (c != original) return Edit{pos, std::u32string(1, original), std::u32string(1, c)};
        }
        return std::nullopt;
      }
      case ErrorType::kUnchanged:
        break;
    }
    return std::nullopt;
  }

  bool free_run(std::size_t pos, std::size_t len) const {
    if (pos + len > text_.size()) return false;
    for (std::size_t p = pos; p < pos + len; ++p) {
      if (used_[p] || !is_han(text_[p])) return false;
    }
    return true;
  }

  void mark_used(const Edit& e) {
    for (std::size_t p = e.pos; p < e.pos + e.original.size(); ++p) used_[p] = true;
  }

 private:
  std::u32string_view text_;
  const EcmResources& res_;
  const EcmConfig& config_;
  Rng& rng_;
  std::vector<bool> used_;
};

}  // namespace

std::string_view to_string(ErrorType type) {
  return kTypeNames[static_cast<std::size_t>(type)];
}

std::optional<ErrorType> parse_error_type(std::string_view name) {
  for (std::size_t i = 0; i < kTypeNames.size(); ++i) {
    if (kTypeNames[i] == name) return static_cast<ErrorType>(i);
  }
  return std::nullopt;
}

void EcmConfig::validate() const {
  const double probs[] = {p_pronunciation, p_shape, p_random, p_unchanged};
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ContractViolation("ECM probabilities must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ContractViolation("ECM probabilities must sum to 1");
  if (!(max_ratio > 0.0 && max_ratio <= 1.0)) {
    throw ContractViolation("ECM max_ratio must lie in (0, 1]");
  }
  if (max_retries < 1) throw ContractViolation("ECM max_retries must be >= 1");
  if (!(p_continuous >= 0.0 && p_continuous <= 1.0)) {
    throw ContractViolation("ECM p_continuous must lie in [0, 1]");
  }
}

std::size_t edited_chars(const CorruptionRecord& record) {
  std::size_t n = 0;
  for (const auto& e : record.edits) n += e.original.size();
  return n;
}

CorruptionRecord corrupt_sentence(std::u32string_view sentence,
                                  const EcmResources& resources,
                                  const EcmConfig& config, Rng& rng) {
  if (resources.chars == nullptr || resources.ngrams == nullptr) {
    throw ContractViolation("corrupt_sentence: confusion sets not loaded");
  }
  CorruptionRecord record;
  record.target = std::u32string(sentence);
  record.source = record.target;
  record.drawn_type = draw_type(config, rng);
  record.error_type = record.drawn_type;
  if (record.drawn_type == ErrorType::kUnchanged) return record;

  const auto budget = static_cast<std::size_t>(
      std::floor(config.max_ratio * static_cast<double>(sentence.size())));
  std::vector<std::size_t> available;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (is_han(sentence[i])) available.push_back(i);
  }

  if (budget > 0 && !available.empty()) {
    SentenceCorruptor corruptor(sentence, resources, config, rng);
    const std::size_t wanted = 1 + rng.below(budget);
    std::size_t chars_left = budget;
    while (record.edits.size() < wanted && chars_left > 0) {
      bool placed = false;
      for (int failures = 0; failures < config.max_retries && !available.empty();) {
        const std::size_t slot = rng.below(available.size());
        const std::size_t pos = available[slot];
        auto edit = corruptor.try_edit(record.drawn_type, pos, chars_left);
        if (!edit) {
          available.erase(available.begin() + static_cast<std::ptrdiff_t>(slot));
          ++failures;
          ++record.failed_draws;
          continue;
        }
        corruptor.mark_used(*edit);
        chars_left -= edit->original.size();
        std::erase_if(available, [&](std::size_t p) {
          return p >= edit->pos && p < edit->pos + edit->original.size();
        });
        record.edits.push_back(std::move(*edit));
        placed = true;
        break;
      }
      if (!placed) break;
    }
  }

  if (record.edits.empty()) {
    record.error_type = ErrorType::kUnchanged;
    record.degraded = true;
    return record;
  }
  std::sort(record.edits.begin(), record.edits.end(),
            [](const Edit& a, const Edit& b) { return a.pos < b.pos; });
  for (const auto& e : record.edits) {
    record.source.replace(e.pos, e.replacement.size(), e.replacement);
  }
  return record;
}

std::vector<CorruptionRecord> generate_corpus(std::span<const std::u32string> corpus,
                                              const EcmResources& resources,
                                              const EcmConfig& config,
                                              EcmSummary* summary, unsigned jobs) {
  config.validate();
  std::vector<CorruptionRecord> records(corpus.size());
  auto work = [&](std::size_t i) {
    Rng rng = Rng::for_item(config.seed, i);
    records[i] = corrupt_sentence(corpus[i], resources, config, rng);
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1 || corpus.size() < 2) {
    for (std::size_t i = 0; i < corpus.size(); ++i) work(i);
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) {
      threads.emplace_back([&, t] {
        for (std::size_t i = t; i < corpus.size(); i += jobs) work(i);
      });
    }
    for (auto& th : threads) th.join();
  }
  if (summary) {
    EcmSummary s;
    s.records = records.size();
    for (const auto& r : records) {
      ++s.drawn[static_cast<std::size_t>(r.drawn_type)];
      ++s.realised[static_cast<std::size_t>(r.error_type)];
      if (r.degraded) ++s.degraded;
      s.edits += r.edits.size();
      for (const auto& e : r.edits) {
        if (e.original.size() > 1) ++s.continuous_edits;
      }
      s.edited_chars += edited_chars(r);
      s.failed_draws += r.failed_draws;
    }
    *summary = s;
  }
  return records;
}

std::string format_record_tsv(const CorruptionRecord& record) {
  std::string spec;
  if (record.degraded) {
    spec = "degraded:" + std::string(to_string(record.drawn_type));
  } else if (record.edits.empty()) {
    spec = "-";
  } else {
    for (const auto& e : record.edits) {
      if (!spec.empty()) spec.push_back(';');
      spec += std::to_string(e.pos) + ":" + utf8_encode(e.original) + ">" +
              utf8_encode(e.replacement);
    }
  }
  return utf8_encode(record.source) + "\t" + utf8_encode(record.target) + "\t" +
         std::string(to_string(record.error_type)) + "\t" + spec;
}

void write_summary(std::ostream& out, const EcmSummary& s) {
  out << "# records\t" << s.records << '\n';
  for (std::size_t t = 0; t < kErrorTypeCount; ++t) {
    const auto name = to_string(static_cast<ErrorType>(t));
    out << "# drawn." << name << '\t' << s.drawn[t] << '\n';
    out << "# realised." << name << '\t' << s.realised[t] << '\n';
  }
  out << "# degraded\t" << s.degraded << '\n'
      << "# edits\t" << s.edits << '\n'
      << "# continuous_edits\t" << s.continuous_edits << '\n'
      << "# edited_chars\t" << s.edited_chars << '\n'
      << "# failed_draws\t" << s.failed_draws << '\n';
}

}  // namespace csc
