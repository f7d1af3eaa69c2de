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

#include "csc/scorer.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "csc/corpus.h"
#include "csc/error.h"
#include "csc/utf8.h"

namespace csc {
namespace {

// U+0000 never occurs in decoded text and marks the sentence start.
constexpr char32_t kBos = 0;
constexpr std::string_view kModelMagic = "#csc-ngram-model v1";

std::string encode_history(std::u32string_view h) {
  std::string out;
  for (char32_t c : h) {
    if (!out.empty()) out.push_back(' ');
    out += c == kBos ? std::string("<s>") : utf8_encode(c);
  }
  return out;
}

std::u32string decode_history(std::string_view s, std::size_t line_no) {
  std::u32string out;
  if (s.empty()) return out;
  for (std::string_view tok : split_fields(s, ' ')) {
    if (tok == "<s>") {
      out.push_back(kBos);
      continue;
    }
    std::u32string c;
    try {
      c = utf8_decode(tok);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (c.size() != 1) throw ParseError(line_no, "history token must be one character");
    out.push_back(c.front());
  }
  return out;
}

}  // namespace

NgramModel NgramModel::train(std::span<const std::u32string> corpus, std::size_t order,
                             double alpha) {
  if (corpus.empty()) throw Error("n-gram training: corpus is empty");
  if (!(alpha > 0.0)) throw ContractViolation("n-gram training: alpha must be > 0");
  NgramModel model;
  model.order_ = order;
  model.alpha_ = alpha;
  std::set<char32_t> vocab;
  for (const auto& sentence : corpus) {
    for (std::size_t j = 0; j < sentence.size(); ++j) {
      vocab.insert(sentence[j]);
      auto& h = model.counts_[model.history(sentence, j)];
      ++h.total;
      ++h.next[sentence[j]];
    }
  }
  if (vocab.empty()) throw Error("n-gram training: corpus has no characters");
  model.vocab_.assign(vocab.begin(), vocab.end());
  model.index_vocab();
  return model;
}

void NgramModel::index_vocab() {
  vocab_index_.clear();
  for (std::size_t i = 0; i < vocab_.size(); ++i) vocab_index_[vocab_[i]] = i;
}

std::u32string NgramModel::history(std::u32string_view sentence, std::size_t j) const {
  std::u32string h(order_, kBos);
  for (std::size_t i = 0; i < order_; ++i) {
    if (j >= order_ - i) h[i] = sentence[j - (order_ - i)];
  }
  return h;
}

double NgramModel::prob(std::u32string_view history, char32_t c) const {
  const double v = static_cast<double>(vocab_.size());
  const auto it = counts_.find(std::u32string(history));
  if (it == counts_.end()) return 1.0 / v;
  const auto n = it->second.next.find(c);
  const double count = n == it->second.next.end() ? 0.0 : static_cast<double>(n->second);
  return (count + alpha_) / (static_cast<double>(it->second.total) + alpha_ * v);
}

double NgramModel::log_prob(std::u32string_view history, char32_t c) const {
  return std::log(prob(history, c));
}

void NgramModel::save(std::ostream& out) const {
  std::ostringstream alpha;
  alpha.precision(17);
  alpha << alpha_;
  out << kModelMagic << '\n' << "order\t" << order_ << '\n' << "alpha\t" << alpha.str() << '\n';
  for (char32_t c : vocab_) out << "vocab\t" << utf8_encode(c) << '\n';
  for (const auto& [h, hc] : counts_) {
    const std::string hs = encode_history(h);
    for (const auto& [c, count] : hc.next) {
      out << "ngram\t" << hs << '\t' << utf8_encode(c) << '\t' << count << '\n';
    }
  }
}

NgramModel NgramModel::load(std::istream& in) {
  NgramModel model;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || strip_cr(line) != kModelMagic) {
    throw ParseError(0, "not a csc n-gram model (missing header)");
  }
  bool have_order = false;
  std::set<char32_t> vocab;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = strip_cr(line);
    if (view.empty()) continue;
    const auto f = split_fields(view, '\t');
    try {
      if (f[0] == "order" && f.size() == 2) {
        model.order_ = std::stoul(std::string(f[1]));
        have_order = true;
      } else if (f[0] == "alpha" && f.size() == 2) {
        model.alpha_ = std::stod(std::string(f[1]));
      } else if (f[0] == "vocab" && f.size() == 2) {
        const std::u32string c = utf8_decode(f[1]);
        if (c.size() != 1) throw ParseError(line_no, "vocab entry must be one character");
        vocab.insert(c.front());
      } else if (f[0] == "ngram" && f.size() == 4) {
        const std::u32string h = decode_history(f[1], line_no);
        if (h.size() != model.order_) throw ParseError(line_no, "history length != order");
        const std::u32string c = utf8_decode(f[2]);
        if (c.size() != 1) throw ParseError(line_no, "ngram target must be one character");
        const std::size_t count = std::stoul(std::string(f[3]));
        auto& hc = model.counts_[h];
        hc.next[c.front()] += count;
        hc.total += count;
      } else {
        throw ParseError(line_no, "unrecognised model line");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_order || vocab.empty()) throw ParseError(line_no, "model lacks order or vocabulary");
  model.vocab_.assign(vocab.begin(), vocab.end());
  model.index_vocab();
  return model;
}

std::vector<char32_t> ChannelModel::candidates(char32_t observed) const {
  std::vector<char32_t> out{observed};
  if (confusion == nullptr) return out;
  std::set<char32_t> alts(confusion->phonetic_of(observed).begin(),
                          confusion->phonetic_of(observed).end());
  alts.insert(confusion->morphological_of(observed).begin(),
              confusion->morphological_of(observed).end());
  alts.erase(observed);
  out.insert(out.end(), alts.begin(), alts.end());
  return out;
}

double ChannelModel::prob(char32_t observed, char32_t intended) const {
  if (observed == intended) return p_keep;
  const auto cands = candidates(observed);
  if (cands.size() <= 1 ||
      std::find(cands.begin() + 1, cands.end(), intended) == cands.end()) {
    return 0.0;
  }
  return (1.0 - p_keep) / static_cast<double>(cands.size() - 1);
}

Lattice score_sentence(std::u32string_view sentence, const NgramModel& lm,
                       const ChannelModel& channel, std::size_t k, std::string id,
                       ScoreDiagnostics* diagnostics) {
  if (k < 1) throw ContractViolation("score_sentence: k must be >= 1");
  if (!(channel.p_keep >= 0.0 && channel.p_keep <= 1.0)) {
    throw ContractViolation("score_sentence: p_keep must lie in [0, 1]");
  }
  Lattice lat;
  lat.id = std::move(id);
  lat.input = std::u32string(sentence);
  ScoreDiagnostics diag;
  for (std::size_t j = 0; j < sentence.size(); ++j) {
    const char32_t observed = sentence[j];
    ++diag.positions;
    if (!lm.in_vocab(observed)) ++diag.out_of_vocab;
    const std::u32string history = lm.history(sentence, j);
    std::vector<Candidate> cands;
    for (char32_t c : channel.candidates(observed)) {
      const double ch = channel.prob(observed, c);
      if (ch <= 0.0) continue;
      cands.push_back({c, lm.log_prob(history, c) + std::log(ch)});
    }
    if (cands.empty()) {
      // p_keep == 0 with no alternatives: the observed character is all
      // there is.
      cands.push_back({observed, 0.0});
    }
    double max_score = -std::numeric_limits<double>::infinity();
    for (const auto& c : cands) max_score = std::max(max_score, c.logp);
    double sum = 0.0;
    for (const auto& c : cands) sum += std::exp(c.logp - max_score);
    const double log_norm = max_score + std::log(sum);
    for (auto& c : cands) c.logp = std::min(0.0, c.logp - log_norm);
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      return a.logp != b.logp ? a.logp > b.logp : a.token < b.token;
    });
    if (cands.size() > k) cands.resize(k);
    lat.positions.push_back(std::move(cands));
  }
  if (diagnostics) *diagnostics = diag;
  return lat;
}

}  // namespace csc
