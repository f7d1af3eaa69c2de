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

// Hand-built lattices and random generators shared by unit and acceptance
// tests.

#ifndef CSC_TESTS_TESTING_FIXTURES_H_
#define CSC_TESTS_TESTING_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "csc/lattice.h"
#include "csc/utf8.h"

namespace fixture {

inline std::u32string u(const char* s) { return csc::utf8_decode(s); }
inline std::string s8(const std::u32string& s) { return csc::utf8_encode(s); }

// A lattice whose top-1 everywhere is the input character at logp `top`.
inline csc::Lattice confident(const std::u32string& input, double top = -0.0005) {
  csc::Lattice lat;
  lat.input = input;
  for (char32_t c : input) lat.positions.push_back({{c, top}});
  return lat;
}

// "人民监查员依法审查案件": rank-2 candidates at positions 2..4 spell the
// intended 检察院, 3.6 nats below the input characters. 审查案件 also has a
// tempting alternative at position 8 that the raw input span pins down.
inline csc::Lattice procuratorate() {
  csc::Lattice lat = confident(u("人民监查员依法审查案件"));
  lat.id = "procuratorate";
  lat.positions[2] = {{U'监', -0.3}, {U'检', -1.5}, {U'兼', -4.0}};
  lat.positions[3] = {{U'查', -0.2}, {U'察', -1.8}, {U'茶', -3.5}};
  lat.positions[4] = {{U'员', -0.4}, {U'院', -1.2}, {U'原', -3.0}};
  lat.positions[8] = {{U'察', -0.5}, {U'查', -0.9}};
  lat.positions[6] = {{U'法', -0.05}, {U'发', -3.1}};
  return lat;
}

inline std::set<std::u32string> procuratorate_terms() {
  return {u("人民检察院"), u("审查案件")};
}

// "患者需要按照剂量服用甲苯米坐片。": the raw speller prefers 计 over 剂
// and keeps 米坐; the intended output restores 剂量 and writes 咪唑.
inline csc::Lattice mebendazole() {
  csc::Lattice lat = confident(u("患者需要按照剂量服用甲苯米坐片。"), -0.0001);
  lat.id = "mebendazole";
  lat.positions[6] = {{U'计', -0.4}, {U'剂', -1.2}, {U'济', -3.3}};
  lat.positions[12] = {{U'米', -0.3}, {U'咪', -1.6}, {U'迷', -2.9}};
  lat.positions[13] = {{U'坐', -0.2}, {U'唑', -2.0}, {U'座', -2.2}};
  lat.positions[8] = {{U'服', -0.02}, {U'伏', -4.4}};
  return lat;
}

inline std::set<std::u32string> mebendazole_terms() { return {u("剂量"), u("甲苯咪唑")}; }

inline std::vector<std::u32string> as_vector(const std::set<std::u32string>& s) {
  return {s.begin(), s.end()};
}

struct RandomLatticeSpec {
  std::size_t max_n = 6;
  std::size_t max_k = 3;
  std::size_t vocab = 20;
  double min_logp = -16.0;  // spans both pruning thresholds
  bool allow_near_zero = true;
  // When false, logps within a position are distinct so the per-position
  // argmax is unique.
  bool ties = true;
};

// Vocabulary: consecutive CJK code points starting at U+4E00.
inline char32_t vocab_char(std::size_t i) { return static_cast<char32_t>(0x4E00 + i); }

inline csc::Lattice random_lattice(std::mt19937_64& rng, const RandomLatticeSpec& spec) {
  std::uniform_int_distribution<std::size_t> n_dist(1, spec.max_n);
  std::uniform_int_distribution<std::size_t> k_dist(1, spec.max_k);
  std::uniform_int_distribution<std::size_t> v_dist(0, spec.vocab - 1);
  std::uniform_real_distribution<double> lp_dist(spec.min_logp, 0.0);
  std::bernoulli_distribution near_zero(0.15);
  std::bernoulli_distribution coarse(0.3);
  csc::Lattice lat;
  const std::size_t n = n_dist(rng);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = std::min(k_dist(rng), spec.vocab);
    std::set<char32_t> used;
    std::vector<csc::Candidate> cands;
    while (cands.size() < k) {
      const char32_t c = vocab_char(v_dist(rng));
      if (!used.insert(c).second) continue;
      double lp = lp_dist(rng);
      // Coarse values make exact score ties between paths common.
      if (coarse(rng)) lp = std::round(lp);
      if (spec.allow_near_zero && near_zero(rng)) lp = -0.0005;
      const bool clash = std::any_of(cands.begin(), cands.end(),
                                     [&](const csc::Candidate& x) { return x.logp == lp; });
      // Two candidates above -0.001 would carry probability mass above 1.
      const bool second_confident =
          lp > -0.001 && std::any_of(cands.begin(), cands.end(),
                                     [](const csc::Candidate& x) { return x.logp > -0.001; });
      if ((!spec.ties && clash) || second_confident) {
        used.erase(c);
        continue;
      }
      cands.push_back({c, lp});
    }
    std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
      return a.logp != b.logp ? a.logp > b.logp : a.token < b.token;
    });
    lat.positions.push_back(cands);
    // The input is usually the top candidate but sometimes another one, or
    // a character absent from the list.
    std::uniform_int_distribution<int> pick(0, 9);
    const int r = pick(rng);
    if (r < 6) {
      lat.input.push_back(cands.front().token);
    } else if (r < 8) {
      lat.input.push_back(cands.back().token);
    } else {
      lat.input.push_back(vocab_char(v_dist(rng)));
    }
  }
  return lat;
}

// Up to `max_terms` terms of length 2..4, mostly cut from random paths
// through the lattice so that they actually match sometimes.
inline std::set<std::u32string> random_terms(std::mt19937_64& rng, const csc::Lattice& lat,
                                             std::size_t max_terms, std::size_t vocab) {
  std::set<std::u32string> terms;
  std::uniform_int_distribution<std::size_t> count(0, max_terms);
  std::uniform_int_distribution<std::size_t> len_dist(2, 4);
  std::uniform_int_distribution<std::size_t> v_dist(0, vocab - 1);
  std::bernoulli_distribution from_lattice(0.8);
  const std::size_t want = count(rng);
  for (std::size_t t = 0; t < want; ++t) {
    const std::size_t len = len_dist(rng);
    std::u32string term;
    if (from_lattice(rng) && lat.size() >= len) {
      std::uniform_int_distribution<std::size_t> start(0, lat.size() - len);
      const std::size_t s = start(rng);
      for (std::size_t j = s; j < s + len; ++j) {
        const auto& cands = lat.positions[j];
        std::uniform_int_distribution<std::size_t> pick(0, cands.size());
        const std::size_t p = pick(rng);
        term.push_back(p == cands.size() ? lat.input[j] : cands[p].token);
      }
    } else {
      for (std::size_t j = 0; j < len; ++j) term.push_back(vocab_char(v_dist(rng)));
    }
    terms.insert(term);
  }
  return terms;
}

}  // namespace fixture

#endif  // CSC_TESTS_TESTING_FIXTURES_H_
