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

// csc: command-line driver for the spelling-check toolkit.
//
//   csc build-confusion  corpus + prior char confusion + pinyin -> n-gram set
//   csc gen-corpus       error-consistent synthetic corpus
//   csc train-scorer     character n-gram model for the stand-in speller
//   csc score            sentences -> top-k lattices
//   csc decode           dictionary-guided rescoring of lattices
//   csc eval             sentence-level metrics
//   csc stats            dataset statistics
//   csc ideal-dict       ideal dictionary from gold error phrases
//
// Exit status: 0 success, 1 usage/validation error, 2 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csc/confusion.h"
#include "csc/corpus.h"
#include "csc/decoder.h"
#include "csc/dictionary.h"
#include "csc/ecm.h"
#include "csc/error.h"
#include "csc/eval.h"
#include "csc/lattice.h"
#include "csc/pinyin.h"
#include "csc/scorer.h"
#include "csc/segment.h"
#include "csc/utf8.h"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

class UsageError : public csc::Error {
 public:
  using csc::Error::Error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw csc::Error("cannot open " + path);
  return in;
}

// Writes to a file, or to stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw csc::Error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    stream().flush();
    if (!stream()) throw csc::Error("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

csc::CharConfusion load_char_confusion_file(const std::string& path) {
  if (path.empty()) return {};
  auto in = open_input(path);
  std::vector<std::string> warnings;
  auto conf = csc::load_char_confusion(in, &warnings);
  print_warnings(warnings);
  return conf;
}

csc::NgramConfusion load_ngram_confusion_file(const std::string& path) {
  if (path.empty()) return {};
  auto in = open_input(path);
  return csc::load_ngram_confusion(in);
}

std::vector<std::u32string> load_sentences(const std::string& path) {
  auto in = open_input(path);
  return csc::read_sentences(in);
}

std::vector<csc::SentencePair> load_dataset(const std::string& path) {
  auto in = open_input(path);
  return csc::read_dataset_tsv(in);
}

// ---------------------------------------------------------------------------

struct BuildConfusionArgs {
  std::string corpus, char_confusion, pinyin, out;
  std::size_t min_gram_count = 2;
  std::size_t phrase_min_count = 5;
  std::size_t max_phrase_candidates = 5;
  bool exact_pinyin = false;
  bool no_phrase_step = false;
  bool json = false;
};

int run_build_confusion(const BuildConfusionArgs& a) {
  csc::NgramBuildOptions opts;
  opts.min_gram_count = a.min_gram_count;
  opts.phrase_min_count = a.phrase_min_count;
  opts.max_phrase_candidates = a.max_phrase_candidates;
  opts.match = a.exact_pinyin ? csc::PhoneticMatch::kExact : csc::PhoneticMatch::kFuzzy;
  opts.enable_phrase_step = !a.no_phrase_step;

  const auto corpus = load_sentences(a.corpus);
  const auto chars = load_char_confusion_file(a.char_confusion);
  const auto pinyin = csc::PinyinTable::load_file(a.pinyin);
  csc::NgramBuildReport report;
  const auto conf = csc::build_ngram_confusion(corpus, chars, pinyin, opts, &report);
  Output out(a.out);
  csc::write_ngram_confusion(out.stream(), conf);
  out.close();
  if (a.json) {
    ordered_json j{{"entries", conf.size()},
                   {"harvested_grams", report.harvested_grams},
                   {"span_pairs", report.span_pairs},
                   {"phrases", report.phrases},
                   {"phrase_pairs", report.phrase_pairs},
                   {"skipped_chars", report.skipped_chars}};
    std::cerr << j.dump() << '\n';
  } else {
    std::cerr << "entries " << conf.size() << ", harvested grams " << report.harvested_grams
              << ", span pairs " << report.span_pairs << ", phrases " << report.phrases
              << ", phrase pairs " << report.phrase_pairs << ", chars without pinyin "
              << report.skipped_chars << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct GenCorpusArgs {
  std::string corpus, char_confusion, ngram_confusion, out, summary;
  csc::EcmConfig config;
  unsigned jobs = 1;
  bool json = false;
};

ordered_json summary_json(const csc::EcmSummary& s) {
  ordered_json drawn, realised;
  for (std::size_t t = 0; t < csc::kErrorTypeCount; ++t) {
    const std::string name(csc::to_string(static_cast<csc::ErrorType>(t)));
    drawn[name] = s.drawn[t];
    realised[name] = s.realised[t];
  }
  return {{"records", s.records},     {"drawn", drawn},
          {"realised", realised},     {"degraded", s.degraded},
          {"edits", s.edits},         {"continuous_edits", s.continuous_edits},
          {"edited_chars", s.edited_chars}, {"failed_draws", s.failed_draws}};
}

int run_gen_corpus(const GenCorpusArgs& a) {
  a.config.validate();
  const auto corpus = load_sentences(a.corpus);
  const auto chars = load_char_confusion_file(a.char_confusion);
  const auto ngrams = load_ngram_confusion_file(a.ngram_confusion);
  csc::EcmResources res{&chars, &ngrams, chars.inventory()};
  if (res.inventory.empty()) {
    std::set<char32_t> seen;
    for (const auto& s : corpus) {
      for (char32_t c : s) {
        if (csc::is_han(c)) seen.insert(c);
      }
    }
    res.inventory.assign(seen.begin(), seen.end());
  }
  csc::EcmSummary summary;
  const auto records = csc::generate_corpus(corpus, res, a.config, &summary, a.jobs);
  Output out(a.out);
  for (const auto& r : records) out.stream() << csc::format_record_tsv(r) << '\n';
  if (a.summary.empty()) {
    if (a.json) {
      out.stream() << "# " << summary_json(summary).dump() << '\n';
    } else {
      csc::write_summary(out.stream(), summary);
    }
  }
  out.close();
  if (!a.summary.empty()) {
    Output side(a.summary);
    if (a.json) {
      side.stream() << summary_json(summary).dump() << '\n';
    } else {
      csc::write_summary(side.stream(), summary);
    }
    side.close();
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string corpus, out;
  std::size_t order = 2;
  double alpha = 0.1;
};

int run_train(const TrainArgs& a) {
  if (!(a.alpha > 0.0)) throw UsageError("--alpha must be > 0");
  const auto corpus = load_sentences(a.corpus);
  const auto model = csc::NgramModel::train(corpus, a.order, a.alpha);
  Output out(a.out);
  model.save(out.stream());
  out.close();
  return 0;
}

// ---------------------------------------------------------------------------

struct ScoreArgs {
  std::string model, char_confusion, input, out;
  std::size_t topk = 5;
  double p_keep = 0.97;
  bool json = false;
};

int run_score(const ScoreArgs& a) {
  if (a.topk < 1) throw UsageError("--topk must be >= 1");
  if (!(a.p_keep >= 0.0 && a.p_keep <= 1.0)) throw UsageError("--p-keep must lie in [0, 1]");
  auto model_in = open_input(a.model);
  const auto model = csc::NgramModel::load(model_in);
  const auto chars = load_char_confusion_file(a.char_confusion);
  const auto sentences = load_sentences(a.input);
  csc::ChannelModel channel{a.p_keep, &chars};
  Output out(a.out);
  std::size_t oov = 0, positions = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    csc::ScoreDiagnostics diag;
    const auto lat = csc::score_sentence(sentences[i], model, channel, a.topk,
                                         std::to_string(i), &diag);
    oov += diag.out_of_vocab;
    positions += diag.positions;
    out.stream() << csc::serialize(lat) << '\n';
  }
  out.close();
  if (a.json) {
    std::cerr << ordered_json{{"sentences", sentences.size()},
                              {"positions", positions},
                              {"out_of_vocab", oov}}.dump()
              << '\n';
  } else {
    std::cerr << "scored " << sentences.size() << " sentences, " << oov << " of "
              << positions << " characters out of vocabulary\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct DecodeArgs {
  std::string lattice, dict, out, diagnostics;
  csc::DecodeConfig config;
  std::string asm_mode = "covered";
  bool no_rsm = false;
  bool exhaustive = false;
  unsigned jobs = 1;
  bool json = false;
};

int run_decode(DecodeArgs a) {
  a.config.asm_count_mode = a.asm_mode == "altered" ? csc::AsmCountMode::kAlteredPositions
                                                    : csc::AsmCountMode::kCoveredPositions;
  a.config.use_rsm = !a.no_rsm;
  try {
    a.config.validate();
  } catch (const csc::ContractViolation& e) {
    throw UsageError(e.what());
  }
  auto lat_in = open_input(a.lattice);
  const auto lattices = csc::parse_lattices(lat_in);
  csc::UserDictionary dict;
  if (!a.dict.empty()) {
    auto dict_in = open_input(a.dict);
    std::vector<std::string> warnings;
    dict = csc::load_dictionary(dict_in, &warnings);
    print_warnings(warnings);
  }

  csc::CorpusDiagnostics diag;
  a.config.exhaustive = a.exhaustive;
  const auto outcomes = csc::decode_corpus(lattices, dict, a.config, &diag, a.jobs);

  Output out(a.out);
  for (const auto& o : outcomes) out.stream() << csc::decode_record_json(o) << '\n';
  out.close();

  std::size_t failures = 0;
  for (const auto& o : outcomes) {
    if (!o.path) {
      ++failures;
      std::cerr << "error: " << o.id << ": " << o.error << '\n';
    }
  }
  diag.failures = failures;
  std::string report;
  if (a.json) {
    report = ordered_json{{"sentences", diag.sentences},
                          {"failures", diag.failures},
                          {"avg_path_count", diag.avg_path_count},
                          {"changed_sentences", diag.changed_sentences},
                          {"flipped_sentences", diag.flipped_sentences},
                          {"flipped_positions", diag.flipped_positions}}
                 .dump() +
             "\n";
  } else {
    report = "sentences " + std::to_string(diag.sentences) + ", failures " +
             std::to_string(diag.failures) + ", avg candidate paths " +
             std::to_string(diag.avg_path_count) + ", changed " +
             std::to_string(diag.changed_sentences) + ", flipped vs greedy " +
             std::to_string(diag.flipped_sentences) + " sentences / " +
             std::to_string(diag.flipped_positions) + " positions\n";
  }
  if (a.diagnostics.empty()) {
    std::cerr << report;
  } else {
    Output side(a.diagnostics);
    side.stream() << report;
    side.close();
  }
  return failures == 0 ? 0 : kExitRuntime;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string input, style = "both", level = "both";
  bool json = false;
};

int run_eval(const EvalArgs& a) {
  auto in = open_input(a.input);
  const auto records = csc::read_eval_tsv(in);
  std::vector<csc::MetricStyle> styles;
  if (a.style != "official") styles.push_back(csc::MetricStyle::kFaspell);
  if (a.style != "faspell") styles.push_back(csc::MetricStyle::kOfficial);
  std::vector<csc::MetricLevel> levels;
  if (a.level != "correction") levels.push_back(csc::MetricLevel::kDetection);
  if (a.level != "detection") levels.push_back(csc::MetricLevel::kCorrection);
  for (auto style : styles) {
    for (auto level : levels) {
      const auto r = csc::sentence_metrics(records, style, level);
      if (a.json) {
        std::cout << ordered_json{{"style", csc::to_string(style)},
                                  {"level", csc::to_string(level)},
                                  {"acc", r.acc},
                                  {"pre", r.pre},
                                  {"rec", r.rec},
                                  {"f1", r.f1},
                                  {"records", r.records},
                                  {"true_positives", r.true_positives},
                                  {"flagged", r.flagged},
                                  {"gold_errors", r.gold_errors}}
                         .dump()
                  << '\n';
      } else {
        csc::print_metrics(std::cout, r);
      }
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct StatsArgs {
  std::string dataset;
  bool json = false;
};

int run_stats(const StatsArgs& a) {
  const auto dataset = load_dataset(a.dataset);
  const auto s = csc::dataset_stats(dataset);
  if (a.json) {
    auto opt = [](const auto& v) -> ordered_json {
      return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    std::cout << ordered_json{{"sentences", s.sentences},
                              {"error_sentences", s.error_sentences},
                              {"min_length", opt(s.min_length)},
                              {"max_length", opt(s.max_length)},
                              {"avg_length", opt(s.avg_length)},
                              {"continuous_error_sentences", s.continuous_error_sentences}}
                     .dump()
              << '\n';
  } else {
    csc::print_stats(std::cout, s);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct IdealDictArgs {
  std::string dataset, out;
  double proportion = 1.0;
  std::uint64_t seed = 42;
  std::size_t segment_min_count = 2;
  bool json = false;
};

int run_ideal_dict(const IdealDictArgs& a) {
  if (!(a.proportion >= 0.0 && a.proportion <= 1.0)) {
    throw UsageError("--proportion must lie in [0, 1]");
  }
  const auto dataset = load_dataset(a.dataset);
  std::vector<std::u32string> targets;
  for (const auto& p : dataset) targets.push_back(p.target);
  const auto segmenter = csc::Segmenter::from_corpus(targets, a.segment_min_count);
  const auto dict = csc::build_ideal_dictionary(dataset, a.proportion, a.seed, &segmenter);
  Output out(a.out);
  csc::write_dictionary(out.stream(), dict);
  out.close();
  const std::size_t available = csc::gold_error_phrases(dataset, segmenter).size();
  if (a.json) {
    std::cerr << ordered_json{{"terms", dict.size()}, {"available_phrases", available}}.dump()
              << '\n';
  } else {
    std::cerr << "kept " << dict.size() << " of " << available << " error phrases\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chinese spelling check toolkit: dictionary-guided decoding, "
               "error-consistent corpus generation and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "csc 1.0.0");

  auto existing = CLI::ExistingFile;

  BuildConfusionArgs bc;
  auto* build = app.add_subcommand("build-confusion", "Build the n-gram confusion set");
  build->add_option("--corpus", bc.corpus, "Raw sentences, one per line")
      ->required()->check(existing);
  build->add_option("--char-confusion", bc.char_confusion, "Prior char confusion TSV")
      ->envname("CSC_CHAR_CONFUSION")->check(existing);
  build->add_option("--pinyin", bc.pinyin, "Pinyin table TSV")
      ->envname("CSC_PINYIN_TABLE")->required()->check(existing);
  build->add_option("--min-gram-count", bc.min_gram_count, "Step-1 span frequency cutoff")
      ->capture_default_str()->check(CLI::PositiveNumber);
  build->add_option("--phrase-min-count", bc.phrase_min_count,
                    "Minimum frequency of a medium/high-frequency phrase")
      ->capture_default_str()->check(CLI::PositiveNumber);
  build->add_option("--max-phrase-candidates", bc.max_phrase_candidates,
                    "Reconverted candidates kept per phrase")->capture_default_str();
  build->add_flag("--exact-pinyin", bc.exact_pinyin, "Disable fuzzy initials");
  build->add_flag("--no-phrase-step", bc.no_phrase_step, "Skip phrase reconversion");
  build->add_option("--out,-o", bc.out, "Output TSV (default stdout)");
  build->add_flag("--json", bc.json, "Machine-readable report on stderr");

  GenCorpusArgs gc;
  auto* gen = app.add_subcommand("gen-corpus", "Generate an error-consistent corpus");
  gen->add_option("--corpus", gc.corpus, "Clean sentences, one per line")
      ->required()->check(existing);
  gen->add_option("--char-confusion", gc.char_confusion, "Char confusion TSV")
      ->envname("CSC_CHAR_CONFUSION")->required()->check(existing);
  gen->add_option("--ngram-confusion", gc.ngram_confusion, "N-gram confusion TSV")
      ->envname("CSC_NGRAM_CONFUSION")->check(existing);
  gen->add_option("--seed", gc.config.seed, "Random seed")->capture_default_str();
  gen->add_option("--p-pronunciation", gc.config.p_pronunciation)->capture_default_str();
  gen->add_option("--p-shape", gc.config.p_shape)->capture_default_str();
  gen->add_option("--p-random", gc.config.p_random)->capture_default_str();
  gen->add_option("--p-unchanged", gc.config.p_unchanged)->capture_default_str();
  gen->add_option("--max-ratio", gc.config.max_ratio, "Edited share of a sentence")
      ->capture_default_str();
  gen->add_option("--p-continuous", gc.config.p_continuous,
                  "Fragment-edit chance at eligible pronunciation sites")
      ->capture_default_str();
  gen->add_option("--out,-o", gc.out, "Output TSV (default stdout)");
  gen->add_option("--summary", gc.summary, "Write statistics here instead of a trailing block");
  gen->add_option("--jobs,-j", gc.jobs, "Worker threads")->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen->add_flag("--json", gc.json, "Summary as JSON");

  TrainArgs tr;
  auto* train = app.add_subcommand("train-scorer", "Train the character n-gram model");
  train->add_option("--corpus", tr.corpus, "Clean sentences, one per line")
      ->required()->check(existing);
  train->add_option("--order", tr.order, "History length")->capture_default_str();
  train->add_option("--alpha", tr.alpha, "Add-alpha smoothing")->capture_default_str();
  train->add_option("--out,-o", tr.out, "Model file (default stdout)");
  train->add_flag("--json", "Accepted for uniformity; the model file is already TSV");

  ScoreArgs sc;
  auto* score = app.add_subcommand("score", "Emit top-k lattices with the n-gram scorer");
  score->add_option("--model", sc.model, "Model from train-scorer")
      ->envname("CSC_SCORER_MODEL")->required()->check(existing);
  score->add_option("--char-confusion", sc.char_confusion, "Char confusion TSV")
      ->envname("CSC_CHAR_CONFUSION")->check(existing);
  score->add_option("--input", sc.input, "Sentences, one per line")->required()->check(existing);
  score->add_option("--topk", sc.topk, "Candidates per position")->capture_default_str();
  score->add_option("--p-keep", sc.p_keep, "Channel keep probability")->capture_default_str();
  score->add_option("--out,-o", sc.out, "Lattice JSONL (default stdout)");
  score->add_flag("--json", sc.json, "Report as JSON on stderr");

  DecodeArgs dc;
  auto* decode = app.add_subcommand("decode", "Dictionary-guided decoding of lattices");
  decode->add_option("--lattice", dc.lattice, "Lattice JSONL")->required()->check(existing);
  decode->add_option("--dict", dc.dict, "User dictionary, one term per line")
      ->envname("CSC_USER_DICT")->check(existing);
  decode->add_option("--eta", dc.config.eta, "Dictionary reward weight")->capture_default_str();
  decode->add_option("--beam", dc.config.beam_size, "Beam size")->capture_default_str();
  decode->add_option("--topk", dc.config.prune.k, "Candidates kept per position")
      ->capture_default_str();
  decode->add_option("--min-logp", dc.config.prune.min_logp, "Discard threshold")
      ->capture_default_str();
  decode->add_option("--max-logp", dc.config.prune.max_logp, "Fix threshold")
      ->capture_default_str();
  decode->add_option("--asm-mode", dc.asm_mode, "Reward counting: covered or altered")
      ->capture_default_str()->check(CLI::IsMember({"covered", "altered"}));
  decode->add_flag("--no-rsm", dc.no_rsm, "Disable raw span matching");
  decode->add_flag("--exhaustive", dc.exhaustive, "Enumerate all paths instead of beam search");
  decode->add_option("--out,-o", dc.out, "Output JSONL (default stdout)");
  decode->add_option("--diagnostics", dc.diagnostics, "Write diagnostics here (default stderr)");
  decode->add_option("--jobs,-j", dc.jobs, "Worker threads")->capture_default_str()
      ->check(CLI::PositiveNumber);
  decode->add_flag("--json", dc.json, "Diagnostics as JSON");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Sentence-level detection/correction metrics");
  eval->add_option("--input", ev.input, "id<TAB>input<TAB>gold<TAB>pred TSV")
      ->required()->check(existing);
  eval->add_option("--style", ev.style, "faspell, official or both")
      ->capture_default_str()->check(CLI::IsMember({"faspell", "official", "both"}));
  eval->add_option("--level", ev.level, "detection, correction or both")
      ->capture_default_str()->check(CLI::IsMember({"detection", "correction", "both"}));
  eval->add_flag("--json", ev.json, "One JSON object per report");

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  stats->add_option("--dataset", st.dataset, "id<TAB>source<TAB>target TSV")
      ->required()->check(existing);
  stats->add_flag("--json", st.json, "JSON output");

  IdealDictArgs id;
  auto* ideal = app.add_subcommand("ideal-dict", "Ideal dictionary from gold error phrases");
  ideal->add_option("--dataset", id.dataset, "id<TAB>source<TAB>target TSV")
      ->required()->check(existing);
  ideal->add_option("--proportion", id.proportion, "Share of phrases to keep")
      ->capture_default_str();
  ideal->add_option("--seed", id.seed, "Random seed")->capture_default_str();
  ideal->add_option("--segment-min-count", id.segment_min_count,
                    "Minimum frequency of a segmenter word")->capture_default_str();
  ideal->add_option("--out,-o", id.out, "Dictionary file (default stdout)");
  ideal->add_flag("--json", id.json, "Report as JSON on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*build) return run_build_confusion(bc);
    if (*gen) return run_gen_corpus(gc);
    if (*train) return run_train(tr);
    if (*score) return run_score(sc);
    if (*decode) return run_decode(dc);
    if (*eval) return run_eval(ev);
    if (*stats) return run_stats(st);
    if (*ideal) return run_ideal_dict(id);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const csc::ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
