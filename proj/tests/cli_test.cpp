// Copyright 2026 The zipfvocab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "support/corpora.hpp"
#include "zipfvocab/bpe.hpp"
#include "zipfvocab/cli.hpp"
#include "zipfvocab/io.hpp"
#include "zipfvocab/report.hpp"
#include "zipfvocab/selector.hpp"
#include "zipfvocab/zipf.hpp"

namespace zipfvocab {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("zipfvocab_cli_") +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::string Write(const std::string& name, const std::string& bytes) const {
    std::ofstream(Path(name), std::ios::binary) << bytes;
    return Path(name);
  }

  // In-process run; same code path as the executable.
  static Outcome Run(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "zipfvocab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = cli::Run(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
  }

  // Runs the real binary through the shell and returns its exit status.
  static int Shell(const std::string& args) {
    const int status = std::system((std::string(ZIPFVOCAB_CLI_PATH) + " " + args).c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::vector<std::string> Listing() const {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir_)) names.push_back(e.path().filename());
    std::sort(names.begin(), names.end());
    return names;
  }

  fs::path dir_;
};

// --- train ------------------------------------------------------------------

TEST_F(Cli, TrainAtMinimumGivesCharacterVocabulary) {
  const auto corpus = Write("toy.txt", "hello world\nhello there\n");
  const auto counts = PretokenCounts::FromText(io::ReadFile(corpus), CorpusMode::kText);
  const auto r = Run({"train", "--corpus", corpus, "--mode", "text", "--vocab-size",
                      std::to_string(MinVocabSize(counts)), "--out", Path("v.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Vocabulary::Load(Path("v.json")).merges().empty());
  EXPECT_NE(r.out.find("merges=0"), std::string::npos);
}

TEST_F(Cli, TrainToyMerges) {
  const auto corpus = Write("abab.txt", "abab\nabab\n");
  const auto r = Run({"train", "--corpus", corpus, "--mode", "sequence", "--vocab-size", "5",
                      "--out", Path("v.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(io::ReadFile(Path("v.json")));
  EXPECT_EQ(doc["merges"], nlohmann::json::parse(R"([["a","b"],["ab","ab"]])"));
  const auto counts = PretokenCounts::FromEntries(CorpusMode::kSequence, {{"abab", 2}});
  EXPECT_EQ(io::ReadFile(Path("v.json")), TrainToSize(counts, 5).vocabulary.ToJson());
  const auto manifest = nlohmann::json::parse(io::ReadFile(Path("v.json.manifest.json")));
  EXPECT_EQ(manifest["command"], "train");
  EXPECT_EQ(manifest["corpus_sha256"], io::Sha256Hex("abab\nabab\n"));
  EXPECT_EQ(manifest["config"]["vocab_size"], "5");
  EXPECT_EQ(manifest["tool_version"], cli::ToolVersion());
}

TEST_F(Cli, TrainExhaustionWarns) {
  const auto corpus = Write("ab.txt", "ab\n");
  const auto r = Run({"train", "--corpus", corpus, "--vocab-size", "100", "--out", Path("v.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_NE(r.out.find("exhausted=true"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  const auto corpus = Write("toy.txt", "ab ab b\n");
  EXPECT_EQ(Run({"train", "--corpus", Path("missing.txt"), "--vocab-size", "10", "--out",
                 Path("v.json")}).code,
            cli::kExitData);
  EXPECT_EQ(Run({"train", "--corpus", Write("empty.txt", ""), "--vocab-size", "10", "--out",
                 Path("v.json")}).code,
            cli::kExitData);
  EXPECT_EQ(Run({"train", "--corpus", Write("bad.txt", "\xFF\n"), "--vocab-size", "10",
                 "--out", Path("v.json")}).code,
            cli::kExitData);
  EXPECT_EQ(Run({"train", "--corpus", corpus, "--vocab-size", "2", "--out", Path("v.json")}).code,
            cli::kExitUsage);
  EXPECT_EQ(Run({"train", "--corpus", corpus, "--mode", "bytes", "--vocab-size", "10",
                 "--out", Path("v.json")}).code,
            cli::kExitUsage);
  EXPECT_EQ(Run({"train", "--corpus", corpus}).code, cli::kExitUsage);
  EXPECT_EQ(Run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(Run({}).code, cli::kExitUsage);
  EXPECT_EQ(Run({"select", "--corpus", corpus, "--interval", "0", "--out-dir", Path("o")}).code,
            cli::kExitUsage);
  EXPECT_EQ(Run({"select", "--corpus", corpus, "--v-min", "3", "--out-dir", Path("o")}).code,
            cli::kExitUsage);
  EXPECT_EQ(Run({"--version"}).code, cli::kExitOk);
  EXPECT_EQ(Run({"--help"}).code, cli::kExitOk);
  EXPECT_FALSE(fs::exists(Path("v.json")));
}

TEST_F(Cli, BinaryExitCodes) {
  const auto corpus = Write("toy.txt", "ab ab b\n");
  EXPECT_EQ(Shell("--version > /dev/null"), 0);
  EXPECT_EQ(Shell("train --corpus " + Path("nope.txt") + " --vocab-size 10 --out " +
                  Path("v.json") + " 2> /dev/null"),
            3);
  EXPECT_EQ(Shell("train --corpus " + corpus + " --vocab-size 1 --out " + Path("v.json") +
                  " 2> /dev/null"),
            2);
  EXPECT_EQ(Shell("train --corpus " + corpus + " --vocab-size 9 --out " + Path("v.json") +
                  " > /dev/null"),
            0);
}

TEST_F(Cli, TrainIsReproducible) {
  const auto corpus = Write("c.txt", testing::TwoPhaseText(4));
  for (const char* name : {"a.json", "b.json"}) {
    ASSERT_EQ(Run({"train", "--corpus", corpus, "--vocab-size", "300", "--out", Path(name)}).code, 0);
  }
  EXPECT_EQ(io::ReadFile(Path("a.json")), io::ReadFile(Path("b.json")));
  const auto ma = nlohmann::json::parse(io::ReadFile(Path("a.json.manifest.json")));
  const auto mb = nlohmann::json::parse(io::ReadFile(Path("b.json.manifest.json")));
  EXPECT_EQ(ma["config"], mb["config"]);
  EXPECT_EQ(ma["corpus_sha256"], mb["corpus_sha256"]);
}

// --- no partial artifacts -------------------------------------------------

TEST_F(Cli, FailedRunsLeaveNoFiles) {
  const auto corpus = Write("toy.txt", "ab ab b\n");
  EXPECT_NE(Run({"train", "--corpus", corpus, "--vocab-size", "9", "--out",
                 Path("no/such/dir/v.json")}).code,
            0);
  EXPECT_NE(Run({"train", "--corpus", Write("bad.txt", "a\xFF"), "--vocab-size", "9", "--out",
                 Path("v.json")}).code,
            0);
  EXPECT_EQ(Listing(), (std::vector<std::string>{"bad.txt", "toy.txt"}));
}

TEST_F(Cli, FailedRunKeepsPreviousOutput) {
  const auto corpus = Write("toy.txt", "ab ab b\n");
  ASSERT_EQ(Run({"train", "--corpus", corpus, "--vocab-size", "9", "--out", Path("v.json")}).code, 0);
  const std::string before = io::ReadFile(Path("v.json"));
  EXPECT_NE(Run({"train", "--corpus", corpus, "--vocab-size", "1", "--out", Path("v.json")}).code, 0);
  EXPECT_EQ(io::ReadFile(Path("v.json")), before);
}

TEST_F(Cli, AtomicWriteCleansUpOnFailure) {
  EXPECT_THROW(io::WriteFileAtomic(dir_ / "missing" / "f.txt", "data"), std::exception);
  fs::create_directories(dir_ / "target_is_dir");
  EXPECT_THROW(io::WriteFileAtomic(dir_ / "target_is_dir", "data"), std::exception);
  EXPECT_EQ(Listing(), std::vector<std::string>{"target_is_dir"});
  io::WriteFileAtomic(dir_ / "ok.txt", "data");
  EXPECT_EQ(io::ReadFile(dir_ / "ok.txt"), "data");
}

// --- score ------------------------------------------------------------------

TEST_F(Cli, ScoreExactPowerLaw) {
  std::string text;
  const std::vector<std::pair<char, int>> spec = {
      {'a', 2520}, {'b', 1260}, {'c', 840}, {'d', 630}, {'e', 504}};
  for (const auto& [c, n] : spec) text += std::string(static_cast<std::size_t>(n), c);
  const auto corpus = Write("p.txt", text + "\n");
  ASSERT_EQ(Run({"train", "--corpus", corpus, "--mode", "sequence", "--vocab-size", "6",
                 "--out", Path("v.json")}).code,
            0);
  const auto r = Run({"score", "--corpus", corpus, "--vocab", Path("v.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto at = r.out.find("r_squared=");
  ASSERT_NE(at, std::string::npos);
  EXPECT_NEAR(std::stod(r.out.substr(at + 10)), 1.0, 1e-12);
  EXPECT_EQ(r.out.find("fertility="), std::string::npos);
}

TEST_F(Cli, ScoreUniformIsDegenerate) {
  const auto corpus = Write("u.txt", "a b c\n");
  ASSERT_EQ(Run({"train", "--corpus", corpus, "--vocab-size", "8", "--out", Path("v.json")}).code, 0);
  const auto r = Run({"score", "--corpus", corpus, "--vocab", Path("v.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("r_squared=0\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("degenerate=true\n"), std::string::npos);
}

TEST_F(Cli, ScoreMatchesLibrary) {
  const std::string text = testing::TwoPhaseText(2);
  const auto corpus = Write("t.txt", text);
  ASSERT_EQ(Run({"train", "--corpus", corpus, "--vocab-size", "400", "--out", Path("v.json")}).code, 0);
  const auto r = Run({"score", "--corpus", corpus, "--vocab", Path("v.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto counts = PretokenCounts::FromText(text, CorpusMode::kText);
  const auto vocab = TrainToSize(counts, 400).vocabulary;
  const std::string expected =
      FitReport(FitPowerLaw(RankFrequency(EncodedTokenCounts(vocab, counts)))) +
      "compression_ratio=" + io::FormatDouble(CompressionRatio(vocab, counts)) + "\n" +
      "fertility=" + io::FormatDouble(Fertility(vocab, counts)) + "\n";
  EXPECT_EQ(r.out, expected);
}

TEST_F(Cli, ScoreModeMismatch) {
  const auto corpus = Write("t.txt", "ab ab\n");
  ASSERT_EQ(Run({"train", "--corpus", corpus, "--vocab-size", "8", "--out", Path("v.json")}).code, 0);
  EXPECT_EQ(Run({"score", "--corpus", corpus, "--mode", "sequence", "--vocab", Path("v.json")}).code,
            cli::kExitUsage);
}

// --- select -----------------------------------------------------------------

TEST_F(Cli, SelectStreamsTraceAndMatchesLibrary) {
  const std::string text = testing::TwoPhaseText(1);
  const auto corpus = Write("t.txt", text);
  const auto r = Run({"select", "--corpus", corpus, "--interval", "10", "--out-dir", Path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  SelectorConfig config;
  config.checkpoint_interval = 10;
  const auto result =
      SelectVocabulary(PretokenCounts::FromText(text, CorpusMode::kText), config);
  EXPECT_EQ(r.out, TraceCsv(result));
  EXPECT_EQ(io::ReadFile(Path("out/trace.csv")), TraceCsv(result));
  EXPECT_NE(r.out.find("# stop_reason=stagnation"), std::string::npos);
  EXPECT_EQ(io::ReadFile(Path("out/vocab.json")), result.selected_vocab.ToJson());
  const auto manifest = nlohmann::json::parse(io::ReadFile(Path("out/manifest.json")));
  EXPECT_EQ(manifest["config"]["v_min"], "auto");
  EXPECT_EQ(manifest["config"]["pick_rule"], "current_at_stop");
}

TEST_F(Cli, SelectWithMaxAtMinimum) {
  const auto corpus = Write("t.txt", "hello world\n");
  const auto counts = PretokenCounts::FromText("hello world\n", CorpusMode::kText);
  const auto r = Run({"select", "--corpus", corpus, "--v-max",
                      std::to_string(MinVocabSize(counts)), "--out-dir", Path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows.back().rfind("# stop_reason=max_size", 0), 0u);
}

// --- rankfreq ---------------------------------------------------------------

TEST_F(Cli, RankFreqMatchesLibrary) {
  const std::string text = testing::TwoPhaseText(3);
  const auto corpus = Write("t.txt", text);
  ASSERT_EQ(Run({"train", "--corpus", corpus, "--vocab-size", "250", "--out", Path("v.json")}).code, 0);
  const auto r = Run({"rankfreq", "--corpus", corpus, "--vocab", Path("v.json"), "--csv",
                      Path("rf.csv"), "--svg", Path("rf.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto counts = PretokenCounts::FromText(text, CorpusMode::kText);
  const auto curve = RankFrequency(EncodedTokenCounts(TrainToSize(counts, 250).vocabulary, counts));
  const std::string csv = io::ReadFile(Path("rf.csv"));
  EXPECT_EQ(csv, RankFrequencyCsv(curve));
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            curve.size() + 1);
  EXPECT_EQ(r.out, "tokens=" + std::to_string(curve.size()) + "\n");
  EXPECT_NE(io::ReadFile(Path("rf.svg")).find("<svg"), std::string::npos);
  EXPECT_TRUE(fs::exists(Path("rf.csv.manifest.json")));
}

TEST_F(Cli, RankFreqEmptyTable) {
  ASSERT_EQ(Run({"train", "--corpus", Write("a.txt", "ab ab\n"), "--vocab-size", "8", "--out",
                 Path("v.json")}).code,
            0);
  const auto r = Run({"rankfreq", "--corpus", Write("z.txt", "zzz yyy\n"), "--vocab",
                      Path("v.json"), "--csv", Path("rf.csv")});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_NE(r.err.find("empty-table"), std::string::npos);
  EXPECT_FALSE(fs::exists(Path("rf.csv")));
}

// --- encode / decode --------------------------------------------------------

TEST_F(Cli, EncodeShowTokens) {
  ASSERT_EQ(Run({"train", "--corpus", Write("a.txt", "abab\nabab\n"), "--mode", "sequence",
                 "--vocab-size", "5", "--out", Path("v.json")}).code,
            0);
  EXPECT_EQ(Run({"encode", "--vocab", Path("v.json"), "--show-tokens"}, "abab\n").out, "abab\n");
  EXPECT_EQ(Run({"encode", "--vocab", Path("v.json")}, "abab\nabaz\n").out, "4\n3 1 0\n");
}

TEST_F(Cli, EncodeEmptyInput) {
  ASSERT_EQ(Run({"train", "--corpus", Write("a.txt", "ab\n"), "--vocab-size", "6", "--out",
                 Path("v.json")}).code,
            0);
  const auto r = Run({"encode", "--vocab", Path("v.json")}, "");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
}

TEST_F(Cli, EncodeInvalidVocabulary) {
  EXPECT_EQ(Run({"encode", "--vocab", Write("v.json", "{\"format_version\": 9}")}, "x").code,
            cli::kExitUsage);
  EXPECT_EQ(Run({"encode", "--vocab", Path("absent.json")}, "x").code, cli::kExitUsage);
}

TEST_F(Cli, EncodeDecodePipeRoundTrip) {
  const std::string text = "the cat sat on the mat\nthe mat sat\non a hat\n";
  const auto corpus = Write("t.txt", text);
  ASSERT_EQ(Run({"train", "--corpus", corpus, "--vocab-size", "40", "--out", Path("v.json")}).code, 0);
  ASSERT_EQ(Shell("encode --vocab " + Path("v.json") + " < " + corpus + " | " +
                  ZIPFVOCAB_CLI_PATH + " decode --vocab " + Path("v.json") + " > " +
                  Path("round.txt")),
            0);
  EXPECT_EQ(io::ReadFile(Path("round.txt")), text);
}

TEST_F(Cli, DecodeRejectsBadIds) {
  ASSERT_EQ(Run({"train", "--corpus", Write("a.txt", "ab\n"), "--vocab-size", "6", "--out",
                 Path("v.json")}).code,
            0);
  EXPECT_EQ(Run({"decode", "--vocab", Path("v.json")}, "1 99\n").code, cli::kExitUsage);
  EXPECT_EQ(Run({"decode", "--vocab", Path("v.json")}, "1 x\n").code, cli::kExitUsage);
}

}  // namespace
}  // namespace zipfvocab
