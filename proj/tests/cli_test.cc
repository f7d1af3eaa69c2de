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

// Runs the csc executable end to end.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CSC_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

const std::string kData = CSC_DATA_DIR;

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() /
          ("csc_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
           std::to_string(::getpid()));
    fs::create_directories(dir);
    std::string corpus;
    const char* lines[] = {"新华社报导了此事", "人民检察院依法审查案件", "今天天气很好",
                           "我们在室内分成四类", "这一年过得很快", "他的意念很强",
                           "患者需要按照剂量服用甲苯咪唑片。", "明天再去学校做作业"};
    for (int rep = 0; rep < 6; ++rep) {
      for (const char* l : lines) corpus += std::string(l) + "\n";
    }
    spit(dir / "corpus.txt", corpus);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string p(const char* name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("every command has help") {
  CHECK(run("--help").status == 0);
  for (const char* cmd : {"build-confusion", "gen-corpus", "train-scorer", "score", "decode",
                          "eval", "stats", "ideal-dict"}) {
    const auto r = run(std::string(cmd) + " --help");
    CHECK(r.status == 0);
    CHECK(r.out.find("--json") != std::string::npos);
  }
}

TEST_CASE("usage errors exit with status 1") {
  CHECK(run("").status == 1);
  CHECK(run("frobnicate").status == 1);
  CHECK(run("stats --dataset " + kData + "/fixtures/stats_fixture.tsv --bogus").status == 1);
  CHECK(run("stats --dataset /nonexistent/file.tsv").status == 1);
  CHECK(run("eval --input " + kData + "/fixtures/eval_fixture.tsv --style weird").status == 1);
}

TEST_CASE("flags are validated before anything is written") {
  Workspace ws;
  spit(ws.dir / "l.jsonl", "");
  const auto r = run("decode --lattice " + ws.p("l.jsonl") + " --eta -1 --out " + ws.p("o.jsonl"));
  CHECK(r.status == 1);
  CHECK_FALSE(fs::exists(ws.dir / "o.jsonl"));
  const auto r2 = run("decode --lattice " + ws.p("l.jsonl") +
                      " --min-logp -0.0001 --max-logp -0.001 --out " + ws.p("o.jsonl"));
  CHECK(r2.status == 1);
  CHECK_FALSE(fs::exists(ws.dir / "o.jsonl"));
}

TEST_CASE("runtime errors exit with status 2") {
  Workspace ws;
  spit(ws.dir / "bad.jsonl", "{broken\n");
  CHECK(run("decode --lattice " + ws.p("bad.jsonl")).status == 2);
}

TEST_CASE("eval and stats, text and json") {
  const auto text = run("eval --input " + kData + "/fixtures/eval_fixture.tsv");
  CHECK(text.status == 0);
  CHECK(text.out.find("faspell detection") != std::string::npos);
  const auto js = run("eval --json --style faspell --level detection --input " + kData +
                      "/fixtures/eval_fixture.tsv");
  REQUIRE(js.status == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["pre"] == 0.75);
  CHECK(j["rec"] == 1.0);
  const auto st = run("stats --json --dataset " + kData + "/fixtures/stats_fixture.tsv");
  REQUIRE(st.status == 0);
  const auto s = nlohmann::json::parse(st.out);
  CHECK(s["error_sentences"] == 3);
  CHECK(s["avg_length"] == 7.0);
}

TEST_CASE("full pipeline: confusion, corpus, scorer, decoder") {
  ::unsetenv("CSC_PINYIN_TABLE");
  Workspace ws;
  const std::string pinyin = kData + "/pinyin.tsv";
  const std::string chars = kData + "/char_confusion.tsv";
  const std::string corpus_before = slurp(ws.dir / "corpus.txt");

  auto r = run("build-confusion --corpus " + ws.p("corpus.txt") + " --char-confusion " + chars +
               " --pinyin " + pinyin + " --out " + ws.p("ngram.tsv"));
  REQUIRE(r.status == 0);
  CHECK(slurp(ws.dir / "ngram.tsv").find("一年\t") != std::string::npos);

  // The pinyin table may also come from the environment.
  r = run("build-confusion --corpus " + ws.p("corpus.txt") + " --out " + ws.p("ngram2.tsv") +
          " --char-confusion " + chars);
  CHECK(r.status == 1);
  const std::string env = "CSC_PINYIN_TABLE=" + pinyin + " ";
  r = Run{};
  {
    const std::string cmd = env + CSC_BINARY + " build-confusion --corpus " + ws.p("corpus.txt") +
                            " --char-confusion " + chars + " --out " + ws.p("ngram2.tsv") +
                            " 2>/dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
  }
  CHECK(slurp(ws.dir / "ngram2.tsv") == slurp(ws.dir / "ngram.tsv"));

  const std::string gen = "gen-corpus --corpus " + ws.p("corpus.txt") + " --char-confusion " +
                          chars + " --ngram-confusion " + ws.p("ngram.tsv") + " --seed 42";
  REQUIRE(run(gen + " --out " + ws.p("g1.tsv")).status == 0);
  REQUIRE(run(gen + " --jobs 3 --out " + ws.p("g2.tsv")).status == 0);
  CHECK(slurp(ws.dir / "g1.tsv") == slurp(ws.dir / "g2.tsv"));
  CHECK(slurp(ws.dir / "g1.tsv").find("# records") != std::string::npos);

  REQUIRE(run("train-scorer --corpus " + ws.p("corpus.txt") + " --out " + ws.p("m.tsv")).status ==
          0);
  spit(ws.dir / "input.txt", "人民监查员依法审查案件\n今天天汽很好\n");
  REQUIRE(run("score --model " + ws.p("m.tsv") + " --char-confusion " + chars + " --input " +
              ws.p("input.txt") + " --out " + ws.p("lat.jsonl"))
              .status == 0);
  spit(ws.dir / "dict.txt", "人民检察院\n审查案件\n");

  const auto defaults = run("decode --lattice " + ws.p("lat.jsonl") + " --dict " + ws.p("dict.txt"));
  const auto explicit_flags =
      run("decode --lattice " + ws.p("lat.jsonl") + " --dict " + ws.p("dict.txt") +
          " --eta 4 --beam 20 --topk 5 --min-logp -11 --max-logp -0.001");
  REQUIRE(defaults.status == 0);
  CHECK(defaults.out == explicit_flags.out);
  std::istringstream lines(defaults.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("output"));
    CHECK(j["total"].get<double>() ==
          doctest::Approx(j["raw_score"].get<double>() + 4 * j["dict_score"].get<int>()));
    ++count;
  }
  CHECK(count == 2);

  // Short lattices: full enumeration and the default beam agree.
  const auto enumerated = run("decode --exhaustive --lattice " + ws.p("lat.jsonl") + " --dict " +
                              ws.p("dict.txt") + " --diagnostics " + ws.p("ex.json") + " --json");
  REQUIRE(enumerated.status == 0);
  CHECK(enumerated.out == defaults.out);
  CHECK(nlohmann::json::parse(slurp(ws.dir / "ex.json"))["sentences"] == 2);

  // Zero weight with an empty dictionary reproduces the greedy path.
  spit(ws.dir / "empty.txt", "");
  const auto greedy = run("decode --eta 0 --json --lattice " + ws.p("lat.jsonl") + " --dict " +
                          ws.p("empty.txt") + " --diagnostics " + ws.p("diag.json"));
  REQUIRE(greedy.status == 0);
  const auto diag = nlohmann::json::parse(slurp(ws.dir / "diag.json"));
  CHECK(diag["flipped_sentences"] == 0);
  CHECK(diag["sentences"] == 2);

  CHECK(slurp(ws.dir / "corpus.txt") == corpus_before);
}

TEST_CASE("ideal dictionary command") {
  Workspace ws;
  const auto r = run("ideal-dict --dataset " + kData + "/fixtures/stats_fixture.tsv" +
                     " --proportion 1 --segment-min-count 1 --out " + ws.p("d.txt"));
  REQUIRE(r.status == 0);
  CHECK_FALSE(slurp(ws.dir / "d.txt").empty());
  CHECK(run("ideal-dict --dataset " + kData + "/fixtures/stats_fixture.tsv --proportion 2")
            .status == 1);
}
