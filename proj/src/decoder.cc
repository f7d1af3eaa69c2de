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

#include "csc/decoder.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "csc/utf8.h"
#include "json.hpp"

namespace csc {
namespace {

using State = TermMatcher::State;

// Scores are summed on a fixed grid of 2^-32 nats so that addition is
// associative: a partial-path comparison then predicts the full-path one
// exactly, which beam merging relies on.
using Fixed = __int128;
constexpr int kGridBits = 32;

Fixed to_fixed(double v) {
  // Anything below -2^30 nats is treated as -2^30.
  v = std::max(v, -0x1p30);
  return static_cast<Fixed>(std::llround(std::ldexp(v, kGridBits)));
}

double from_fixed(Fixed f) { return std::ldexp(static_cast<double>(f), -kGridBits); }

Fixed fixed_eta(const DecodeConfig& config) {
  return static_cast<Fixed>(std::llround(std::ldexp(config.eta, kGridBits)));
}

std::uint64_t low_bits(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Prefix tree of kept hypotheses; each node is one chosen token.
struct TokenNode {
  char32_t token;
  std::int32_t parent;
};

struct Hypothesis {
  Fixed raw = 0;
  Fixed total = 0;
  int reward = 0;
  int altered = 0;
  State state = TermMatcher::kRoot;
  // Bit i refers to position (current - i).
  std::uint64_t altered_mask = 0;
  std::uint64_t counted_mask = 0;
  std::int32_t parent = -1;  // arena node of the previous token
  char32_t token = 0;        // token at the current position
  std::uint64_t merge_mask = 0;
};

std::u32string materialize(const std::vector<TokenNode>& arena, std::int32_t node,
                           std::size_t length) {
  std::u32string out(length, U'\0');
  for (std::size_t i = length; i > 0 && node >= 0; --i) {
    out[i - 1] = arena[node].token;
    node = arena[node].parent;
  }
  return out;
}

// Strict weak "a ranks before b" on equal-length prefixes.
bool ranks_before(Fixed total_a, Fixed raw_a, int altered_a, Fixed total_b, Fixed raw_b,
                  int altered_b) {
  if (total_a != total_b) return total_a > total_b;
  if (raw_a != raw_b) return raw_a > raw_b;
  return altered_a < altered_b;
}

bool tied(const Hypothesis& a, const Hypothesis& b) {
  return a.total == b.total && a.raw == b.raw && a.altered == b.altered;
}

}  // namespace

void DecodeConfig::validate() const {
  if (!(eta >= 0.0 && eta <= 1e6)) throw ContractViolation("eta must lie in [0, 1e6]");
  if (beam_size < 1) throw ContractViolation("beam size must be >= 1");
  prune.validate();
}

SearchSpace build_search_space(const Lattice& lattice, const UserDictionary& dict,
                               const DecodeConfig& config) {
  config.validate();
  if (lattice.positions.size() != lattice.input.size()) {
    throw ContractViolation("lattice position count does not match input length");
  }
  for (std::size_t j = 0; j < lattice.positions.size(); ++j) {
    if (lattice.positions[j].empty()) {
      throw ContractViolation("lattice position " + std::to_string(j) +
                              " has no candidates");
    }
  }
  const Lattice pruned = prune(lattice, config.prune);
  SearchSpace space;
  space.input = lattice.input;
  space.positions = pruned.positions;
  space.rsm_fixed.assign(lattice.input.size(), false);
  // With eta == 0 the dictionary carries no weight at all, pinning included.
  if (!config.use_rsm || config.eta == 0.0 || dict.empty()) return space;
  for (const auto& span : rsm_spans(lattice.input, dict)) {
    for (std::size_t j = span.start; j < span.end; ++j) space.rsm_fixed[j] = true;
  }
  for (std::size_t j = 0; j < space.positions.size(); ++j) {
    if (!space.rsm_fixed[j]) continue;
    const auto& original = lattice.positions[j];
    const auto it = std::find_if(original.begin(), original.end(), [&](const Candidate& c) {
      return c.token == lattice.input[j];
    });
    const double logp = it != original.end() ? it->logp : original.back().logp;
    space.positions[j] = {Candidate{lattice.input[j], logp}};
  }
  return space;
}

CorrectionPath decode(const Lattice& lattice, const UserDictionary& dict,
                      const DecodeConfig& config) {
  const SearchSpace space = build_search_space(lattice, dict, config);
  const TermMatcher& matcher = dict.matcher();
  const bool use_dict = !dict.empty();
  const std::size_t n = space.input.size();
  const Fixed eta = fixed_eta(config);

  std::vector<TokenNode> arena;
  std::vector<Hypothesis> beam(1);
  std::vector<Hypothesis> next;
  std::size_t prefix_length = 0;

  auto before = [&](const Hypothesis& a, const Hypothesis& b) {
    if (!tied(a, b)) {
      return ranks_before(a.total, a.raw, a.altered, b.total, b.raw, b.altered);
    }
    std::u32string ta = materialize(arena, a.parent, prefix_length);
    std::u32string tb = materialize(arena, b.parent, prefix_length);
    ta.push_back(a.token);
    tb.push_back(b.token);
    return ta < tb;
  };

  for (std::size_t j = 0; j < n; ++j) {
    const char32_t observed = space.input[j];
    next.clear();
    for (const Hypothesis& h : beam) {
      for (const Candidate& cand : space.positions[j]) {
        Hypothesis e;
        e.raw = h.raw + to_fixed(cand.logp);
        e.reward = h.reward;
        const bool altered = cand.token != observed;
        e.altered = h.altered + (altered ? 1 : 0);
        e.altered_mask = (h.altered_mask << 1) | (altered ? 1 : 0);
        e.counted_mask = h.counted_mask << 1;
        e.parent = h.parent;
        e.token = cand.token;
        if (use_dict) {
          e.state = matcher.next(h.state, cand.token);
          for (std::uint32_t len : matcher.outputs(e.state)) {
            const std::uint64_t window = low_bits(len);
            if ((e.altered_mask & window) == 0) continue;
            const std::uint64_t add =
                config.asm_count_mode == AsmCountMode::kCoveredPositions
                    ? window
                    : (e.altered_mask & window);
            e.reward += std::popcount(add & ~e.counted_mask);
            e.counted_mask |= add;
          }
          e.merge_mask = e.counted_mask & low_bits(matcher.depth(e.state));
        }
        e.total = e.raw + eta * e.reward;
        next.push_back(e);
      }
    }

    // Merge hypotheses with identical futures, keeping the best of each.
    if (use_dict) {
      std::sort(next.begin(), next.end(), [&](const Hypothesis& a, const Hypothesis& b) {
        if (a.state != b.state) return a.state < b.state;
        if (a.merge_mask != b.merge_mask) return a.merge_mask < b.merge_mask;
        return before(a, b);
      });
      std::size_t kept = 0;
      for (std::size_t i = 0; i < next.size(); ++i) {
        if (kept > 0 && next[kept - 1].state == next[i].state &&
            next[kept - 1].merge_mask == next[i].merge_mask) {
          continue;
        }
        next[kept++] = next[i];
      }
      next.resize(kept);
    }
    if (next.size() > config.beam_size) {
      std::partial_sort(next.begin(), next.begin() + config.beam_size, next.end(), before);
      next.resize(config.beam_size);
    }

    for (Hypothesis& h : next) {
      arena.push_back({h.token, h.parent});
      h.parent = static_cast<std::int32_t>(arena.size() - 1);
    }
    beam.swap(next);
    prefix_length = j + 1;
  }

  // All survivors now end in their own arena node; compare on full paths.
  const Hypothesis* best = &beam.front();
  for (const Hypothesis& h : beam) {
    if (&h == best) continue;
    if (!tied(h, *best)) {
      if (ranks_before(h.total, h.raw, h.altered, best->total, best->raw, best->altered)) {
        best = &h;
      }
    } else if (materialize(arena, h.parent, n) < materialize(arena, best->parent, n)) {
      best = &h;
    }
  }
  CorrectionPath path;
  path.tokens = materialize(arena, best->parent, n);
  path.raw_score = from_fixed(best->raw);
  path.dict_score = best->reward;
  path.total = path.raw_score + config.eta * path.dict_score;
  return path;
}

CorrectionPath decode_exhaustive(const Lattice& lattice, const UserDictionary& dict,
                                 const DecodeConfig& config) {
  const SearchSpace space = build_search_space(lattice, dict, config);
  const std::size_t n = space.input.size();
  std::uint64_t count = 1;
  for (const auto& cands : space.positions) {
    if (count > config.exhaustive_limit / cands.size()) {
      throw SearchTooLarge("exhaustive decode: more than " +
                           std::to_string(config.exhaustive_limit) + " paths");
    }
    count *= cands.size();
  }

  const Fixed eta = fixed_eta(config);
  std::vector<std::size_t> choice(n, 0);
  std::u32string tokens(n, U'\0');
  std::u32string best_tokens;
  Fixed best_raw = 0, best_total = 0;
  int best_reward = 0, best_altered = 0;
  bool have_best = false;
  auto result = [&] {
    CorrectionPath p;
    p.tokens = best_tokens;
    p.raw_score = from_fixed(best_raw);
    p.dict_score = best_reward;
    p.total = p.raw_score + config.eta * p.dict_score;
    return p;
  };
  while (true) {
    Fixed raw = 0;
    int altered = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Candidate& c = space.positions[j][choice[j]];
      tokens[j] = c.token;
      raw += to_fixed(c.logp);
      if (c.token != space.input[j]) ++altered;
    }
    const int reward = asm_reward(space.input, tokens, dict, config.asm_count_mode);
    const Fixed total = raw + eta * reward;
    bool take = !have_best;
    if (have_best) {
      if (total != best_total || raw != best_raw || altered != best_altered) {
        take = ranks_before(total, raw, altered, best_total, best_raw, best_altered);
      } else {
        take = tokens < best_tokens;
      }
    }
    if (take) {
      best_tokens = tokens;
      best_raw = raw;
      best_total = total;
      best_reward = reward;
      best_altered = altered;
      have_best = true;
    }
    // Odometer increment, last position fastest.
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++choice[j] < space.positions[j].size()) break;
      choice[j] = 0;
      if (j == 0) return result();
    }
    if (n == 0) return result();
  }
}

CorrectionPath score_path(const Lattice& lattice, std::u32string_view tokens,
                          const UserDictionary& dict, const DecodeConfig& config) {
  const SearchSpace space = build_search_space(lattice, dict, config);
  if (tokens.size() != space.input.size()) {
    throw ContractViolation("score_path: token count does not match lattice length");
  }
  CorrectionPath path;
  path.tokens = std::u32string(tokens);
  Fixed raw = 0;
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    const auto& cands = space.positions[j];
    const auto it = std::find_if(cands.begin(), cands.end(),
                                 [&](const Candidate& c) { return c.token == tokens[j]; });
    if (it == cands.end()) {
      throw ContractViolation("score_path: token " + utf8_encode(tokens[j]) +
                              " is not a candidate at position " + std::to_string(j));
    }
    raw += to_fixed(it->logp);
  }
  path.raw_score = from_fixed(raw);
  path.dict_score = asm_reward(space.input, tokens, dict, config.asm_count_mode);
  path.total = path.raw_score + config.eta * path.dict_score;
  return path;
}

std::vector<DecodeOutcome> decode_corpus(std::span<const Lattice> lattices,
                                         const UserDictionary& dict,
                                         const DecodeConfig& config,
                                         CorpusDiagnostics* diagnostics,
                                         unsigned jobs) {
  config.validate();
  std::vector<DecodeOutcome> outcomes(lattices.size());
  std::vector<double> path_counts(lattices.size(), 0.0);
  std::vector<std::size_t> flips(lattices.size(), 0);

  auto work = [&](std::size_t i) {
    const Lattice& lat = lattices[i];
    DecodeOutcome& out = outcomes[i];
    out.id = lat.id;
    out.input = lat.input;
    try {
      out.path = config.exhaustive ? decode_exhaustive(lat, dict, config)
                                   : decode(lat, dict, config);
      const Lattice pruned = prune(lat, config.prune);
      const PathCount pc = candidate_path_count(pruned);
      path_counts[i] = pc.saturated ? std::exp(pc.log_count) : static_cast<double>(pc.count);
      const std::u32string greedy = greedy_path(pruned).tokens;
      for (std::size_t j = 0; j < greedy.size(); ++j) {
        if (greedy[j] != out.path->tokens[j]) ++flips[i];
      }
    } catch (const Error& e) {
      out.path.reset();
      out.error = e.what();
    }
  };

  jobs = std::max(1u, jobs);
  if (jobs == 1 || lattices.size() < 2) {
    for (std::size_t i = 0; i < lattices.size(); ++i) work(i);
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) {
      threads.emplace_back([&, t] {
        for (std::size_t i = t; i < lattices.size(); i += jobs) work(i);
      });
    }
    for (auto& th : threads) th.join();
  }

  if (diagnostics) {
    CorpusDiagnostics d;
    d.sentences = lattices.size();
    double sum = 0.0;
    std::size_t ok = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (!outcomes[i].path) {
        ++d.failures;
        continue;
      }
      ++ok;
      sum += path_counts[i];
      if (outcomes[i].path->tokens != outcomes[i].input) ++d.changed_sentences;
      if (flips[i] > 0) ++d.flipped_sentences;
      d.flipped_positions += flips[i];
    }
    d.avg_path_count = ok == 0 ? 0.0 : sum / static_cast<double>(ok);
    *diagnostics = d;
  }
  return outcomes;
}

std::string decode_record_json(const DecodeOutcome& outcome) {
  nlohmann::ordered_json j;
  j["id"] = outcome.id;
  if (!outcome.path) {
    j["error"] = outcome.error;
    return j.dump();
  }
  const CorrectionPath& p = *outcome.path;
  j["output"] = utf8_encode(p.tokens);
  j["raw_score"] = p.raw_score;
  j["dict_score"] = p.dict_score;
  j["total"] = p.total;
  nlohmann::ordered_json edits = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < p.tokens.size() && i < outcome.input.size(); ++i) {
    if (p.tokens[i] == outcome.input[i]) continue;
    nlohmann::ordered_json e;
    e["pos"] = i;
    e["from"] = utf8_encode(outcome.input[i]);
    e["to"] = utf8_encode(p.tokens[i]);
    edits.push_back(std::move(e));
  }
  j["edits"] = std::move(edits);
  return j.dump();
}

}  // namespace csc
