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

#include "csc/confusion.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "csc/corpus.h"
#include "csc/error.h"
#include "csc/segment.h"
#include "csc/utf8.h"

namespace csc {
namespace {

const CharSet kEmptyCharSet;
const std::set<std::u32string> kEmptyFragmentSet;

std::u32string decode_field(std::string_view field, std::size_t line_no) {
  try {
    return utf8_decode(field);
  } catch (const Error& e) {
    throw ParseError(line_no, e.what());
  }
}

using GramCounts = std::unordered_map<std::u32string, std::size_t>;

GramCounts count_grams(std::span<const std::u32string> corpus) {
  GramCounts counts;
  for (const auto& sentence : corpus) {
    std::size_t run_start = 0;
    for (std::size_t i = 0; i <= sentence.size(); ++i) {
      if (i < sentence.size() && is_han(sentence[i])) continue;
      // [run_start, i) is a maximal all-Han run.
      for (std::size_t b = run_start; b < i; ++b) {
        for (std::size_t len = NgramConfusion::kMinLength;
             len <= NgramConfusion::kMaxLength && b + len <= i; ++len) {
          ++counts[sentence.substr(b, len)];
        }
      }
      run_start = i + 1;
    }
  }
  return counts;
}

// Sound-alike candidates for one character: the prior phonetic set (both
// directions) plus pinyin similarity.
class SoundAlikes {
 public:
  SoundAlikes(const CharConfusion& chars, const PinyinTable& pinyin,
              PhoneticMatch match)
      : chars_(chars), pinyin_(pinyin), match_(match) {
    for (const auto& [key, cands] : chars.phonetic) {
      for (char32_t c : cands) reverse_[c].push_back(key);
    }
  }

  const std::vector<char32_t>& of(char32_t c) {
    const auto it = memo_.find(c);
    if (it != memo_.end()) return it->second;
    std::vector<char32_t> out = pinyin_.sound_alikes(c, match_);
    const auto& fwd = chars_.phonetic_of(c);
    out.insert(out.end(), fwd.begin(), fwd.end());
    if (const auto r = reverse_.find(c); r != reverse_.end()) {
      out.insert(out.end(), r->second.begin(), r->second.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::erase(out, c);
    return memo_.emplace(c, std::move(out)).first->second;
  }

 private:
  const CharConfusion& chars_;
  const PinyinTable& pinyin_;
  PhoneticMatch match_;
  std::unordered_map<char32_t, std::vector<char32_t>> reverse_;
  std::unordered_map<char32_t, std::vector<char32_t>> memo_;
};

// Enumerates harvested grams reachable from `gram` by replacing characters
// with sound-alikes, walking only prefixes that exist in `prefixes`.
void collect_variants(const std::u32string& gram, std::size_t depth,
                      std::u32string& prefix,
                      const std::unordered_set<std::u32string>& prefixes,
                      SoundAlikes& alikes, std::vector<std::u32string>& out) {
  if (depth == gram.size()) {
    if (prefix != gram) out.push_back(prefix);
    return;
  }
  const char32_t original = gram[depth];
  auto visit = [&](char32_t c) {
    prefix.push_back(c);
    if (prefixes.count(prefix)) {
      collect_variants(gram, depth + 1, prefix, prefixes, alikes, out);
    }
    prefix.pop_back();
  };
  visit(original);
  // Copy: recursion may grow the memo and invalidate references.
  const std::vector<char32_t> alts = alikes.of(original);
  for (char32_t c : alts) visit(c);
}

std::string pinyin_key(std::u32string_view text, const PinyinTable& pinyin) {
  std::string key;
  for (char32_t c : text) {
    const PinyinSyllable* p = pinyin.primary(c);
    if (p == nullptr) return {};
    if (!key.empty()) key.push_back(' ');
    key += p->toneless();
  }
  return key;
}

}  // namespace

const CharSet& CharConfusion::phonetic_of(char32_t c) const {
  const auto it = phonetic.find(c);
  return it == phonetic.end() ? kEmptyCharSet : it->second;
}

const CharSet& CharConfusion::morphological_of(char32_t c) const {
  const auto it = morphological.find(c);
  return it == morphological.end() ? kEmptyCharSet : it->second;
}

std::vector<char32_t> CharConfusion::inventory() const {
  CharSet all;
  for (const auto* table : {&phonetic, &morphological}) {
    for (const auto& [key, cands] : *table) {
      all.insert(key);
      all.insert(cands.begin(), cands.end());
    }
  }
  return {all.begin(), all.end()};
}

CharConfusion load_char_confusion(std::istream& in,
                                  std::vector<std::string>* warnings) {
  CharConfusion conf;
  std::string line;
  for (std::size_t line_no = 0; std::getline(in, line); ++line_no) {
    const std::string_view view = strip_cr(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_fields(view, '\t');
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected char<TAB>P|M<TAB>candidates");
    }
    const std::u32string key = decode_field(fields[0], line_no);
    if (key.size() != 1) throw ParseError(line_no, "key must be one character");
    CharSet* target = nullptr;
    if (fields[1] == "P") {
      target = &conf.phonetic[key.front()];
    } else if (fields[1] == "M") {
      target = &conf.morphological[key.front()];
    } else {
      throw ParseError(line_no, "unknown type tag \"" + std::string(fields[1]) +
                                    "\" (expected P or M)");
    }
    // Candidates are comma-separated; a token holding several characters
    // lists each of them.
    for (std::string_view token : split_fields(fields[2], ',')) {
      for (char32_t c : decode_field(token, line_no)) {
        if (c == U' ') continue;
        if (c == key.front()) {
          if (warnings) {
            warnings->push_back("line " + std::to_string(line_no) +
                                ": dropped self-candidate " + utf8_encode(c));
          }
          continue;
        }
        target->insert(c);
      }
    }
  }
  if (in.bad()) throw Error("I/O error while reading confusion set");
  std::erase_if(conf.phonetic, [](const auto& kv) { return kv.second.empty(); });
  std::erase_if(conf.morphological, [](const auto& kv) { return kv.second.empty(); });
  return conf;
}

void write_char_confusion(std::ostream& out, const CharConfusion& conf) {
  auto write = [&](const std::map<char32_t, CharSet>& table, char tag) {
    for (const auto& [key, cands] : table) {
      out << utf8_encode(key) << '\t' << tag << '\t';
      bool first = true;
      for (char32_t c : cands) {
        if (!first) out << ',';
        out << utf8_encode(c);
        first = false;
      }
      out << '\n';
    }
  };
  write(conf.phonetic, 'P');
  write(conf.morphological, 'M');
}

bool NgramConfusion::insert_symmetric(const std::u32string& a,
                                      const std::u32string& b) {
  if (a == b || a.size() != b.size() || a.size() < kMinLength ||
      a.size() > kMaxLength) {
    return false;
  }
  entries_[a].insert(b);
  entries_[b].insert(a);
  return true;
}

const std::set<std::u32string>& NgramConfusion::lookup(
    std::u32string_view fragment) const {
  if (fragment.size() < kMinLength || fragment.size() > kMaxLength) {
    throw ContractViolation("n-gram lookup: fragment length " +
                            std::to_string(fragment.size()) + " outside [2, 4]");
  }
  const auto it = entries_.find(fragment);
  return it == entries_.end() ? kEmptyFragmentSet : it->second;
}

NgramConfusion load_ngram_confusion(std::istream& in) {
  NgramConfusion conf;
  std::string line;
  for (std::size_t line_no = 0; std::getline(in, line); ++line_no) {
    const std::string_view view = strip_cr(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_fields(view, '\t');
    if (fields.size() != 2) throw ParseError(line_no, "expected fragment<TAB>candidates");
    const std::u32string key = decode_field(fields[0], line_no);
    if (key.size() < NgramConfusion::kMinLength || key.size() > NgramConfusion::kMaxLength) {
      throw ParseError(line_no, "fragment length must be 2..4");
    }
    for (std::string_view token : split_fields(fields[1], ',')) {
      if (token.empty()) continue;
      const std::u32string cand = decode_field(token, line_no);
      if (cand.size() != key.size()) {
        throw ParseError(line_no, "candidate length differs from fragment length");
      }
      conf.insert_symmetric(key, cand);
    }
  }
  if (in.bad()) throw Error("I/O error while reading n-gram confusion set");
  return conf;
}

void write_ngram_confusion(std::ostream& out, const NgramConfusion& conf) {
  for (const auto& [key, cands] : conf.entries()) {
    out << utf8_encode(key) << '\t';
    bool first = true;
    for (const auto& c : cands) {
      if (!first) out << ',';
      out << utf8_encode(c);
      first = false;
    }
    out << '\n';
  }
}

NgramConfusion build_ngram_confusion(std::span<const std::u32string> corpus,
                                     const CharConfusion& chars,
                                     const PinyinTable& pinyin,
                                     const NgramBuildOptions& options,
                                     NgramBuildReport* report) {
  if (corpus.empty()) throw Error("n-gram confusion: corpus is empty");
  if (options.min_gram_count < 1 || options.phrase_min_count < 1) {
    throw ContractViolation("n-gram confusion: frequency cutoffs must be >= 1");
  }
  NgramBuildReport stats;
  NgramConfusion conf;

  std::unordered_set<char32_t> missing;
  for (const auto& sentence : corpus) {
    for (char32_t c : sentence) {
      if (is_han(c) && !pinyin.contains(c)) missing.insert(c);
    }
  }
  stats.skipped_chars = missing.size();
  auto has_missing = [&](std::u32string_view gram) {
    return std::any_of(gram.begin(), gram.end(),
                       [&](char32_t c) { return missing.count(c) != 0; });
  };

  // Step 1.
  const GramCounts counts = count_grams(corpus);
  std::vector<std::u32string> harvested;
  std::unordered_set<std::u32string> prefixes;
  for (const auto& [gram, count] : counts) {
    if (count < options.min_gram_count || has_missing(gram)) continue;
    harvested.push_back(gram);
    for (std::size_t len = 1; len <= gram.size(); ++len) {
      // Length tag keeps prefixes of different gram lengths apart.
      prefixes.insert(static_cast<char32_t>(gram.size()) + gram.substr(0, len));
    }
  }
  std::sort(harvested.begin(), harvested.end());
  stats.harvested_grams = harvested.size();

  // Step 2.
  SoundAlikes alikes(chars, pinyin, options.match);
  std::vector<std::u32string> tagged_variants;
  for (const auto& gram : harvested) {
    tagged_variants.clear();
    const std::u32string tagged = static_cast<char32_t>(gram.size()) + gram;
    std::u32string prefix(1, tagged.front());
    // The length tag at position 0 always matches itself.
    collect_variants(tagged, 1, prefix, prefixes, alikes, tagged_variants);
    for (const auto& v : tagged_variants) {
      const std::u32string variant = v.substr(1);
      if (gram < variant && conf.insert_symmetric(gram, variant)) ++stats.span_pairs;
    }
  }

  // Step 3.
  if (options.enable_phrase_step) {
    const Segmenter segmenter = Segmenter::from_corpus(
        corpus, options.phrase_min_count, NgramConfusion::kMaxLength);
    std::unordered_map<std::u32string, std::size_t> phrase_counts;
    for (const auto& sentence : corpus) {
      for (const auto& [b, e] : segmenter.segment(sentence)) {
        if (e - b >= NgramConfusion::kMinLength) ++phrase_counts[sentence.substr(b, e - b)];
      }
    }
    std::unordered_map<std::string, std::vector<std::pair<std::size_t, std::u32string>>>
        by_pinyin;
    for (const auto& [gram, count] : counts) {
      if (has_missing(gram)) continue;
      by_pinyin[pinyin_key(gram, pinyin)].emplace_back(count, gram);
    }
    for (auto& [key, grams] : by_pinyin) {
      std::sort(grams.begin(), grams.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
    }
    std::vector<std::u32string> phrases;
    for (const auto& [phrase, count] : phrase_counts) {
      if (count >= options.phrase_min_count && !has_missing(phrase)) {
        phrases.push_back(phrase);
      }
    }
    std::sort(phrases.begin(), phrases.end());
    stats.phrases = phrases.size();
    for (const auto& phrase : phrases) {
      const auto it = by_pinyin.find(pinyin_key(phrase, pinyin));
      if (it == by_pinyin.end()) continue;
      std::size_t taken = 0;
      for (const auto& [count, cand] : it->second) {
        if (taken == options.max_phrase_candidates) break;
        if (cand == phrase) continue;
        ++taken;
        if (conf.lookup(phrase).count(cand)) continue;
        if (conf.insert_symmetric(phrase, cand)) ++stats.phrase_pairs;
      }
    }
  }

  if (report) *report = stats;
  return conf;
}

}  // namespace csc
