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

#ifndef CSC_SCORER_H_
#define CSC_SCORER_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "csc/confusion.h"
#include "csc/lattice.h"

namespace csc {

// Character n-gram model with add-alpha smoothing:
//   P(c | h) = (count(h, c) + alpha) / (count(h) + alpha * |V|)
// where h is the previous `order` characters, padded with a sentence-start
// marker. Unseen histories therefore fall back to the uniform 1/|V|.
class NgramModel {
 public:
  // Throws csc::Error on an empty corpus.
  static NgramModel train(std::span<const std::u32string> corpus, std::size_t order = 2,
                          double alpha = 0.1);

  double prob(std::u32string_view history, char32_t c) const;
  double log_prob(std::u32string_view history, char32_t c) const;

  bool in_vocab(char32_t c) const { return vocab_index_.count(c) != 0; }
  std::size_t order() const { return order_; }
  double alpha() const { return alpha_; }
  const std::vector<char32_t>& vocab() const { return vocab_; }

  // Counts-TSV:
  //   #csc-ngram-model v1
  //   order<TAB>N
  //   alpha<TAB>A
  //   vocab<TAB>c          (one line per character)
  //   ngram<TAB>h<TAB>c<TAB>count
  // where h lists the history characters separated by spaces, "<s>" marking
  // the sentence start. Lines are sorted, so equal models have equal bytes.
  void save(std::ostream& out) const;
  static NgramModel load(std::istream& in);

  // The (padded) history preceding position `j` of `sentence`.
  std::u32string history(std::u32string_view sentence, std::size_t j) const;

 private:
  struct HistoryCounts {
    std::size_t total = 0;
    std::map<char32_t, std::size_t> next;
  };

  void index_vocab();

  std::size_t order_ = 2;
  double alpha_ = 0.1;
  std::vector<char32_t> vocab_;
  std::unordered_map<char32_t, std::size_t> vocab_index_;
  std::map<std::u32string, HistoryCounts> counts_;
};

// Noisy channel P(observed | intended): the observed character is kept with
// probability p_keep; the rest is split uniformly over the observed
// character's confusion candidates (phonetic and morphological).
struct ChannelModel {
  double p_keep = 0.97;
  const CharConfusion* confusion = nullptr;

  // The observed character followed by its confusion candidates.
  std::vector<char32_t> candidates(char32_t observed) const;
  double prob(char32_t observed, char32_t intended) const;
};

struct ScoreDiagnostics {
  std::size_t positions = 0;
  std::size_t out_of_vocab = 0;
};

// Emits a top-k lattice for `sentence`. Each candidate c at position j is
// scored log P_lm(c | history) + log P_ch(s_j | c), and scores are
// renormalised over the position's candidate set. Zero-probability
// candidates are dropped.
Lattice score_sentence(std::u32string_view sentence, const NgramModel& lm,
                       const ChannelModel& channel, std::size_t k, std::string id = {},
                       ScoreDiagnostics* diagnostics = nullptr);

}  // namespace csc

#endif  // CSC_SCORER_H_
