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

#include "csc/lattice.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "csc/error.h"
#include "csc/utf8.h"
#include "json.hpp"

namespace csc {
namespace {

using ordered_json = nlohmann::ordered_json;

bool canonical_less(const Candidate& a, const Candidate& b) {
  if (a.logp != b.logp) return a.logp > b.logp;
  return a.token < b.token;
}

char32_t single_char(const std::string& s, std::size_t record_index) {
  std::u32string decoded;
  try {
    decoded = utf8_decode(s);
  } catch (const Error& e) {
    throw ParseError(record_index, e.what());
  }
  if (decoded.size() != 1) {
    throw ParseError(record_index, "candidate token \"" + s +
                                       "\" is not exactly one character");
  }
  return decoded.front();
}

}  // namespace

void PruneConfig::validate() const {
  if (!(min_logp < max_logp) || !(max_logp <= 0.0)) {
    throw ContractViolation("prune thresholds must satisfy min < max <= 0");
  }
  if (k < 1) throw ContractViolation("prune k must be >= 1");
}

void validate(const Lattice& lattice, std::size_t record_index) {
  if (lattice.positions.size() != lattice.input.size()) {
    throw ParseError(record_index,
                     "position count " + std::to_string(lattice.positions.size()) +
                         " != input length " + std::to_string(lattice.input.size()));
  }
  for (std::size_t j = 0; j < lattice.positions.size(); ++j) {
    const auto& cands = lattice.positions[j];
    std::unordered_set<char32_t> seen;
    for (std::size_t r = 0; r < cands.size(); ++r) {
      const double lp = cands[r].logp;
      if (!std::isfinite(lp) || lp > 0.0) {
        throw ParseError(record_index, "position " + std::to_string(j) +
                                           ": logp must be finite and <= 0");
      }
      if (r > 0 && lp > cands[r - 1].logp) {
        throw ParseError(record_index, "position " + std::to_string(j) +
                                           ": candidates not sorted by logp");
      }
      if (!seen.insert(cands[r].token).second) {
        throw ParseError(record_index, "position " + std::to_string(j) +
                                           ": duplicate candidate token");
      }
    }
  }
}

Lattice canonicalize(Lattice lattice) {
  for (auto& cands : lattice.positions) {
    std::sort(cands.begin(), cands.end(), canonical_less);
  }
  return lattice;
}

Lattice parse_lattice_record(std::string_view line, std::size_t record_index) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const ordered_json::exception& e) {
    throw ParseError(record_index, e.what());
  }
  Lattice lat;
  try {
    lat.id = j.at("id").get<std::string>();
    try {
      lat.input = utf8_decode(j.at("input").get<std::string>());
    } catch (const Error& e) {
      throw ParseError(record_index, e.what());
    }
    const auto& positions = j.at("positions");
    if (!positions.is_array()) throw ParseError(record_index, "positions is not an array");
    lat.positions.reserve(positions.size());
    for (const auto& pos : positions) {
      if (!pos.is_array()) throw ParseError(record_index, "position is not an array");
      std::vector<Candidate> cands;
      cands.reserve(pos.size());
      for (const auto& c : pos) {
        cands.push_back({single_char(c.at("t").get<std::string>(), record_index),
                         c.at("lp").get<double>()});
      }
      lat.positions.push_back(std::move(cands));
    }
  } catch (const ordered_json::exception& e) {
    throw ParseError(record_index, e.what());
  }
  validate(lat, record_index);
  return lat;
}

std::vector<Lattice> parse_lattices(std::istream& in) {
  std::vector<Lattice> out;
  std::string line;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_lattice_record(line, record++));
  }
  if (in.bad()) throw Error("I/O error while reading lattices");
  return out;
}

std::string serialize(const Lattice& lattice) {
  const Lattice canon = canonicalize(lattice);
  ordered_json j;
  j["id"] = canon.id;
  j["input"] = utf8_encode(canon.input);
  ordered_json positions = ordered_json::array();
  for (const auto& cands : canon.positions) {
    ordered_json pos = ordered_json::array();
    for (const auto& c : cands) {
      ordered_json cand;
      cand["t"] = utf8_encode(c.token);
      cand["lp"] = c.logp;
      pos.push_back(std::move(cand));
    }
    positions.push_back(std::move(pos));
  }
  j["positions"] = std::move(positions);
  return j.dump();
}

void write_lattices(std::ostream& out, std::span<const Lattice> lattices) {
  for (const auto& lat : lattices) out << serialize(lat) << '\n';
}

Lattice prune(const Lattice& lattice, const PruneConfig& config) {
  config.validate();
  Lattice out;
  out.id = lattice.id;
  out.input = lattice.input;
  out.positions.reserve(lattice.positions.size());
  for (const auto& cands : lattice.positions) {
    std::vector<Candidate> kept;
    if (!cands.empty()) {
      if (cands.front().logp > config.max_logp) {
        kept.push_back(cands.front());
      } else {
        for (const auto& c : cands) {
          if (kept.size() == config.k) break;
          if (!(c.logp < config.min_logp)) kept.push_back(c);
        }
        // Never leave a position empty.
        if (kept.empty()) kept.push_back(cands.front());
      }
    }
    out.positions.push_back(std::move(kept));
  }
  return out;
}

CorrectionPath greedy_path(const Lattice& lattice) {
  CorrectionPath path;
  path.tokens.reserve(lattice.positions.size());
  for (std::size_t j = 0; j < lattice.positions.size(); ++j) {
    const auto& cands = lattice.positions[j];
    if (cands.empty()) {
      throw ContractViolation("greedy_path: position " + std::to_string(j) +
                              " has no candidates");
    }
    path.tokens.push_back(cands.front().token);
    path.raw_score += cands.front().logp;
  }
  path.total = path.raw_score;
  return path;
}

PathCount candidate_path_count(const Lattice& lattice) {
  PathCount result;
  for (const auto& cands : lattice.positions) {
    const std::uint64_t m = cands.size();
    if (m == 0) return {-std::numeric_limits<double>::infinity(), 0, false};
    result.log_count += std::log(static_cast<double>(m));
    if (!result.saturated) {
      if (result.count > std::numeric_limits<std::uint64_t>::max() / m) {
        result.saturated = true;
        result.count = std::numeric_limits<std::uint64_t>::max();
      } else {
        result.count *= m;
      }
    }
  }
  return result;
}

PathCount candidate_path_count(const Lattice& lattice, const PruneConfig& config) {
  return candidate_path_count(prune(lattice, config));
}

double average_path_count(std::span<const Lattice> lattices,
                          const PruneConfig& config) {
  if (lattices.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& lat : lattices) {
    const PathCount pc = candidate_path_count(lat, config);
    sum += pc.saturated ? std::exp(pc.log_count) : static_cast<double>(pc.count);
  }
  return sum / static_cast<double>(lattices.size());
}

}  // namespace csc
