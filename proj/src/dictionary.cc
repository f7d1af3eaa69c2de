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

#include "csc/dictionary.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>

#include "csc/error.h"
#include "csc/random.h"
#include "csc/segment.h"
#include "csc/utf8.h"

namespace csc {

TermMatcher::TermMatcher() : nodes_(1) {}

TermMatcher::TermMatcher(std::span<const std::u32string> terms) : nodes_(1) {
  std::vector<std::vector<std::pair<char32_t, State>>> children(1);
  std::vector<std::uint32_t> terminal_length(1, 0);
  for (const auto& term : terms) {
    if (term.empty()) continue;
    State s = kRoot;
    for (char32_t c : term) {
      const auto it = edges_.find(edge_key(s, c));
      if (it != edges_.end()) {
        s = it->second;
        continue;
      }
      const State child = static_cast<State>(nodes_.size());
      nodes_.push_back({kRoot, nodes_[s].depth + 1, 0, 0});
      children.emplace_back();
      terminal_length.push_back(0);
      edges_.emplace(edge_key(s, c), child);
      children[s].emplace_back(c, child);
      s = child;
    }
    terminal_length[s] = static_cast<std::uint32_t>(term.size());
    max_term_length_ = std::max(max_term_length_, term.size());
  }

  // Breadth-first: a node's failure target is always shallower, so its
  // outputs are final by the time the node is reached.
  std::vector<std::vector<std::uint32_t>> outs(nodes_.size());
  std::deque<State> queue;
  for (const auto& [c, child] : children[kRoot]) {
    nodes_[child].fail = kRoot;
    queue.push_back(child);
  }
  while (!queue.empty()) {
    const State u = queue.front();
    queue.pop_front();
    if (terminal_length[u] != 0) outs[u].push_back(terminal_length[u]);
    const auto& inherited = outs[nodes_[u].fail];
    outs[u].insert(outs[u].end(), inherited.begin(), inherited.end());
    for (const auto& [c, v] : children[u]) {
      State f = nodes_[u].fail;
      while (true) {
        const auto it = edges_.find(edge_key(f, c));
        if (it != edges_.end()) {
          nodes_[v].fail = it->second;
          break;
        }
        if (f == kRoot) {
          nodes_[v].fail = kRoot;
          break;
        }
        f = nodes_[f].fail;
      }
      queue.push_back(v);
    }
  }
  for (State s = 0; s < nodes_.size(); ++s) {
    nodes_[s].out_begin = static_cast<std::uint32_t>(outputs_.size());
    outputs_.insert(outputs_.end(), outs[s].begin(), outs[s].end());
    nodes_[s].out_end = static_cast<std::uint32_t>(outputs_.size());
  }
}

TermMatcher::State TermMatcher::next(State state, char32_t c) const {
  while (true) {
    const auto it = edges_.find(edge_key(state, c));
    if (it != edges_.end()) return it->second;
    if (state == kRoot) return kRoot;
    state = nodes_[state].fail;
  }
}

UserDictionary::UserDictionary(std::span<const std::u32string> terms,
                               std::vector<std::string>* warnings) {
  for (const auto& term : terms) {
    if (term.size() < 2 || term.size() > kMaxTermLength) {
      if (warnings) {
        warnings->push_back("rejected term \"" + utf8_encode(term) + "\" (length " +
                            std::to_string(term.size()) + ")");
      }
      continue;
    }
    terms_.insert(term);
  }
  const std::vector<std::u32string> sorted(terms_.begin(), terms_.end());
  matcher_ = TermMatcher(sorted);
}

UserDictionary load_dictionary(std::istream& in, std::vector<std::string>* warnings) {
  std::vector<std::u32string> terms;
  std::string line;
  for (std::size_t line_no = 0; std::getline(in, line); ++line_no) {
    std::string_view view = strip_cr(line);
    while (!view.empty() && (view.front() == ' ' || view.front() == '\t')) {
      view.remove_prefix(1);
    }
    while (!view.empty() && (view.back() == ' ' || view.back() == '\t')) {
      view.remove_suffix(1);
    }
    if (view.empty() || view.front() == '#') continue;
    try {
      terms.push_back(utf8_decode(view));
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (in.bad()) throw Error("I/O error while reading dictionary");
  UserDictionary dict(terms, warnings);
  if (dict.empty() && warnings) warnings->push_back("dictionary has no valid terms");
  return dict;
}

void write_dictionary(std::ostream& out, const UserDictionary& dict) {
  for (const auto& term : dict.terms()) out << utf8_encode(term) << '\n';
}

std::vector<SpanMatch> rsm_spans(std::u32string_view input, const UserDictionary& dict) {
  std::vector<SpanMatch> out;
  const TermMatcher& m = dict.matcher();
  TermMatcher::State s = TermMatcher::kRoot;
  for (std::size_t j = 0; j < input.size(); ++j) {
    s = m.next(s, input[j]);
    for (std::uint32_t len : m.outputs(s)) {
      const std::size_t start = j + 1 - len;
      out.push_back({start, j + 1, std::u32string(input.substr(start, len))});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int asm_reward(std::u32string_view input, std::u32string_view path,
               const UserDictionary& dict, AsmCountMode mode) {
  if (input.size() != path.size()) {
    throw ContractViolation("asm_reward: path length " + std::to_string(path.size()) +
                            " != input length " + std::to_string(input.size()));
  }
  std::vector<bool> counted(path.size(), false);
  const TermMatcher& m = dict.matcher();
  TermMatcher::State s = TermMatcher::kRoot;
  for (std::size_t j = 0; j < path.size(); ++j) {
    s = m.next(s, path[j]);
    for (std::uint32_t len : m.outputs(s)) {
      const std::size_t start = j + 1 - len;
      bool altered = false;
      for (std::size_t p = start; p <= j && !altered; ++p) altered = path[p] != input[p];
      if (!altered) continue;
      for (std::size_t p = start; p <= j; ++p) {
        if (mode == AsmCountMode::kCoveredPositions || path[p] != input[p]) {
          counted[p] = true;
        }
      }
    }
  }
  return static_cast<int>(std::count(counted.begin(), counted.end(), true));
}

std::vector<std::u32string> gold_error_phrases(std::span<const SentencePair> dataset,
                                               const Segmenter& segmenter) {
  std::set<std::u32string> phrases;
  for (const auto& pair : dataset) {
    const auto diffs = diff_positions(pair.source, pair.target);
    if (diffs.empty()) continue;
    const auto segments = segmenter.segment(pair.target);
    std::size_t i = 0;
    while (i < diffs.size()) {
      std::size_t run_end = i + 1;
      while (run_end < diffs.size() && diffs[run_end] == diffs[run_end - 1] + 1) ++run_end;
      const std::size_t a = diffs[i];
      const std::size_t b = diffs[run_end - 1] + 1;
      std::size_t lo = a;
      std::size_t hi = b;
      for (const auto& [sb, se] : segments) {
        if (sb < b && se > a) {
          lo = std::min(lo, sb);
          hi = std::max(hi, se);
        }
      }
      if (hi - lo >= 2 && hi - lo <= UserDictionary::kMaxTermLength) {
        phrases.insert(pair.target.substr(lo, hi - lo));
      }
      i = run_end;
    }
  }
  return {phrases.begin(), phrases.end()};
}

UserDictionary build_ideal_dictionary(std::span<const SentencePair> dataset,
                                      double proportion, std::uint64_t seed,
                                      const Segmenter* segmenter) {
  if (!(proportion >= 0.0 && proportion <= 1.0)) {
    throw ContractViolation("ideal dictionary: proportion must lie in [0, 1]");
  }
  Segmenter fallback;
  if (segmenter == nullptr) {
    std::vector<std::u32string> targets;
    targets.reserve(dataset.size());
    for (const auto& p : dataset) targets.push_back(p.target);
    fallback = Segmenter::from_corpus(targets, 2);
    segmenter = &fallback;
  }
  std::vector<std::u32string> phrases = gold_error_phrases(dataset, *segmenter);
  const auto take = static_cast<std::size_t>(
      std::llround(proportion * static_cast<double>(phrases.size())));
  Rng rng(seed);
  rng.shuffle(phrases);
  phrases.resize(std::min(take, phrases.size()));
  return UserDictionary(phrases);
}

}  // namespace csc
