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

#include "zipfvocab/cli.hpp"

#include <charconv>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zipfvocab/bpe.hpp"
#include "zipfvocab/corpus.hpp"
#include "zipfvocab/io.hpp"
#include "zipfvocab/report.hpp"
#include "zipfvocab/selector.hpp"
#include "zipfvocab/zipf.hpp"

#ifndef ZIPFVOCAB_VERSION
#define ZIPFVOCAB_VERSION "0.0.0"
#endif

namespace zipfvocab::cli {

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidTarget:
    case ErrorCode::kModeMismatch:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidVocabulary:
    case ErrorCode::kUnsupportedMode:
    case ErrorCode::kInvalidId:
      return kExitUsage;
    default:
      return kExitData;
  }
}

std::string ToolVersion() { return ZIPFVOCAB_VERSION; }

std::string RunManifest::ToJson() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config) cfg[key] = value;
  doc["config"] = cfg;
  doc["corpus_sha256"] = corpus_sha256;
  doc["tool_version"] = ToolVersion();
  doc["outputs"] = outputs;
  return doc.dump(2) + "\n";
}

namespace {

namespace fs = std::filesystem;

struct CorpusOptions {
  std::string path;
  std::string mode = "text";
  std::string normalize = "none";
};

void AddCorpusOptions(CLI::App* cmd, CorpusOptions& opts, bool mode_required) {
  cmd->add_option("--corpus", opts.path, "UTF-8 corpus file")->required();
  auto* mode = cmd->add_option("--mode", opts.mode, "text | sequence")
                   ->check(CLI::IsMember({"text", "sequence"}));
  if (mode_required) mode->capture_default_str();
  cmd->add_option("--normalize", opts.normalize, "none | nfc")
      ->check(CLI::IsMember({"none", "nfc"}))
      ->capture_default_str();
}

struct LoadedCorpus {
  PretokenCounts counts;
  std::string sha256;
};

LoadedCorpus LoadWithDigest(const CorpusOptions& opts, CorpusMode mode) {
  const std::string bytes = io::ReadFile(opts.path);
  const Normalization norm = *ParseNormalization(opts.normalize);
  PretokenCounts counts = PretokenCounts::FromText(bytes, mode, norm);
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                "corpus '" + opts.path + "' contains no pre-tokens");
  }
  return {std::move(counts), io::Sha256Hex(bytes)};
}

std::string ManifestPathFor(const fs::path& output) {
  return output.string() + ".manifest.json";
}

// Resolves the corpus mode against a vocabulary: an explicit --mode must
// agree with the vocabulary's.
CorpusMode ResolveMode(const Vocabulary& vocab, const CLI::Option* mode_opt,
                       const std::string& mode_name) {
  if (mode_opt->count() > 0 && *ParseCorpusMode(mode_name) != vocab.mode()) {
    throw Error(ErrorCode::kModeMismatch,
                "--mode " + mode_name + " does not match the vocabulary mode '" +
                    std::string(ToString(vocab.mode())) + "'");
  }
  return vocab.mode();
}

std::string ReadInput(const std::string& path, std::istream& in) {
  if (!path.empty() && path != "-") return io::ReadFile(path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line);
    start = end + 1;
  }
}

int CmdTrain(const CorpusOptions& corpus, std::size_t vocab_size,
             const std::string& out_path, std::ostream& out, std::ostream& err) {
  const CorpusMode mode = *ParseCorpusMode(corpus.mode);
  const LoadedCorpus loaded = LoadWithDigest(corpus, mode);
  const TrainResult result = TrainToSize(loaded.counts, vocab_size);
  if (result.exhausted) {
    err << "warning: corpus ran out of pairs at vocabulary size "
        << result.vocabulary.size() << " (target " << vocab_size << ")\n";
  }
  result.vocabulary.Save(out_path);
  RunManifest manifest{"train",
                       {{"mode", corpus.mode},
                        {"normalize", corpus.normalize},
                        {"vocab_size", std::to_string(vocab_size)}},
                       loaded.sha256,
                       {out_path}};
  io::WriteFileAtomic(ManifestPathFor(out_path), manifest.ToJson());
  out << "vocab_size=" << result.vocabulary.size() << "\n"
      << "merges=" << result.vocabulary.merges().size() << "\n"
      << "exhausted=" << (result.exhausted ? "true" : "false") << "\n";
  return kExitOk;
}

int CmdScore(const CorpusOptions& corpus, const CLI::Option* mode_opt,
             const std::string& vocab_path, std::ostream& out) {
  const Vocabulary vocab = Vocabulary::Load(vocab_path);
  const CorpusMode mode = ResolveMode(vocab, mode_opt, corpus.mode);
  const LoadedCorpus loaded = LoadWithDigest(corpus, mode);
  const ZipfFit fit =
      FitPowerLaw(RankFrequency(EncodedTokenCounts(vocab, loaded.counts)));
  std::string report = FitReport(fit);
  report += "compression_ratio=" +
            io::FormatDouble(CompressionRatio(vocab, loaded.counts)) + "\n";
  if (mode == CorpusMode::kText) {
    report += "fertility=" + io::FormatDouble(Fertility(vocab, loaded.counts)) + "\n";
  }
  out << report;
  return kExitOk;
}

int CmdSelect(const CorpusOptions& corpus, const SelectorConfig& config,
              const std::string& out_dir, std::ostream& out) {
  const CorpusMode mode = *ParseCorpusMode(corpus.mode);
  const LoadedCorpus loaded = LoadWithDigest(corpus, mode);
  config.Validate(MinVocabSize(loaded.counts));
  fs::create_directories(out_dir);

  out << TraceCsvHeader() << std::flush;
  const SelectionResult result =
      SelectVocabulary(loaded.counts, config, [&](const CheckpointRecord& rec) {
        out << TraceCsvRow(rec) << std::flush;
      });
  out << TraceCsvSummary(result);

  const fs::path trace_path = fs::path(out_dir) / "trace.csv";
  const fs::path vocab_path = fs::path(out_dir) / "vocab.json";
  io::WriteFileAtomic(trace_path, TraceCsv(result));
  result.selected_vocab.Save(vocab_path);
  RunManifest manifest{
      "select",
      {{"mode", corpus.mode},
       {"normalize", corpus.normalize},
       {"interval", std::to_string(config.checkpoint_interval)},
       {"epsilon", io::FormatDouble(config.epsilon)},
       {"patience", std::to_string(config.patience)},
       {"v_min", config.v_min ? std::to_string(*config.v_min) : std::string("auto")},
       {"v_max", std::to_string(config.v_max)},
       {"pick_rule", std::string(ToString(config.pick_rule))}},
      loaded.sha256,
      {trace_path.string(), vocab_path.string()}};
  io::WriteFileAtomic(fs::path(out_dir) / "manifest.json", manifest.ToJson());
  return kExitOk;
}

int CmdRankFreq(const CorpusOptions& corpus, const CLI::Option* mode_opt,
                const std::string& vocab_path, const std::string& csv_path,
                const std::string& svg_path, std::ostream& out) {
  const Vocabulary vocab = Vocabulary::Load(vocab_path);
  const CorpusMode mode = ResolveMode(vocab, mode_opt, corpus.mode);
  const LoadedCorpus loaded = LoadWithDigest(corpus, mode);
  const RankFrequencyCurve curve =
      RankFrequency(EncodedTokenCounts(vocab, loaded.counts));
  io::WriteFileAtomic(csv_path, RankFrequencyCsv(curve));
  std::vector<std::string> outputs{csv_path};
  if (!svg_path.empty()) {
    ZipfFit fit;
    if (curve.size() >= kMinFitPoints) fit = FitPowerLaw(curve);
    io::WriteFileAtomic(
        svg_path,
        RenderLogLogSvg(curve, fit,
                        "Rank-frequency, vocabulary size " +
                            std::to_string(vocab.size())));
    outputs.push_back(svg_path);
  }
  RunManifest manifest{"rankfreq",
                       {{"mode", std::string(ToString(mode))},
                        {"normalize", corpus.normalize},
                        {"vocab", vocab_path}},
                       loaded.sha256,
                       outputs};
  io::WriteFileAtomic(ManifestPathFor(csv_path), manifest.ToJson());
  out << "tokens=" << curve.size() << "\n";
  return kExitOk;
}

int CmdEncode(const std::string& vocab_path, const std::string& input_path,
              bool show_tokens, std::istream& in, std::ostream& out) {
  const Vocabulary vocab = Vocabulary::Load(vocab_path);
  const std::string input = ReadInput(input_path, in);
  std::string buffer;
  ForEachLine(input, [&](std::string_view line) {
    const std::vector<TokenId> ids = vocab.Encode(line);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i > 0) buffer += ' ';
      buffer += show_tokens ? vocab.TokenOf(ids[i]) : std::to_string(ids[i]);
    }
    buffer += '\n';
  });
  out << buffer;
  return kExitOk;
}

int CmdDecode(const std::string& vocab_path, const std::string& input_path,
              std::istream& in, std::ostream& out) {
  const Vocabulary vocab = Vocabulary::Load(vocab_path);
  const std::string input = ReadInput(input_path, in);
  std::string buffer;
  ForEachLine(input, [&](std::string_view line) {
    std::vector<TokenId> ids;
    std::istringstream fields{std::string(line)};
    std::string field;
    while (fields >> field) {
      TokenId id = 0;
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), id);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error(ErrorCode::kInvalidId, "'" + field + "' is not a token id");
      }
      ids.push_back(id);
    }
    buffer += vocab.Decode(ids);
    buffer += '\n';
  });
  out << buffer;
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Zipf-guided BPE vocabulary analysis", "zipfvocab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ToolVersion());

  CorpusOptions train_corpus;
  std::size_t vocab_size = 0;
  std::string train_out;
  auto* train = app.add_subcommand("train", "Train a BPE vocabulary of a given size");
  AddCorpusOptions(train, train_corpus, true);
  train->add_option("--vocab-size", vocab_size, "Target vocabulary size")->required();
  train->add_option("--out", train_out, "Vocabulary JSON output")->required();

  CorpusOptions score_corpus;
  std::string score_vocab;
  auto* score = app.add_subcommand("score", "Fit Zipf's law to an encoded corpus");
  AddCorpusOptions(score, score_corpus, false);
  score->add_option("--vocab", score_vocab, "Vocabulary JSON")->required();

  CorpusOptions select_corpus;
  SelectorConfig config;
  std::size_t v_min = 0;
  std::string pick_rule = "current_at_stop";
  std::string select_out;
  auto* select = app.add_subcommand("select", "Grow a vocabulary until Zipf alignment stagnates");
  AddCorpusOptions(select, select_corpus, true);
  select->add_option("--interval", config.checkpoint_interval, "Merges between checkpoints")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  select->add_option("--epsilon", config.epsilon, "Minimum meaningful R^2 improvement")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  select->add_option("--patience", config.patience, "Checkpoints without improvement before stopping")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  auto* v_min_opt = select->add_option("--v-min", v_min, "Starting vocabulary size (default: bottom of the initial score descent)");
  select->add_option("--v-max", config.v_max, "Hard vocabulary ceiling")->capture_default_str();
  select->add_option("--pick-rule", pick_rule, "current_at_stop | best_checkpoint")
      ->check(CLI::IsMember({"current_at_stop", "best_checkpoint"}))
      ->capture_default_str();
  select->add_option("--out-dir", select_out, "Directory for trace.csv, vocab.json, manifest.json")
      ->required();

  CorpusOptions rf_corpus;
  std::string rf_vocab, rf_csv, rf_svg;
  auto* rankfreq = app.add_subcommand("rankfreq", "Write the rank-frequency curve as CSV (and SVG)");
  AddCorpusOptions(rankfreq, rf_corpus, false);
  rankfreq->add_option("--vocab", rf_vocab, "Vocabulary JSON")->required();
  rankfreq->add_option("--csv", rf_csv, "CSV output")->required();
  rankfreq->add_option("--svg", rf_svg, "Optional SVG output");

  std::string enc_vocab, enc_input;
  bool show_tokens = false;
  auto* encode = app.add_subcommand("encode", "Encode one record per line");
  encode->add_option("--vocab", enc_vocab, "Vocabulary JSON")->required();
  encode->add_option("--input", enc_input, "Input file (default: standard input)");
  encode->add_flag("--show-tokens", show_tokens, "Print token strings instead of ids");

  std::string dec_vocab, dec_input;
  auto* decode = app.add_subcommand("decode", "Decode one id sequence per line");
  decode->add_option("--vocab", dec_vocab, "Vocabulary JSON")->required();
  decode->add_option("--input", dec_input, "Input file (default: standard input)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ToolVersion() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (train->parsed()) {
      return CmdTrain(train_corpus, vocab_size, train_out, out, err);
    }
    if (score->parsed()) {
      return CmdScore(score_corpus, score->get_option("--mode"), score_vocab, out);
    }
    if (select->parsed()) {
      if (v_min_opt->count() > 0) config.v_min = v_min;
      config.pick_rule = *ParsePickRule(pick_rule);
      return CmdSelect(select_corpus, config, select_out, out);
    }
    if (rankfreq->parsed()) {
      return CmdRankFreq(rf_corpus, rankfreq->get_option("--mode"), rf_vocab, rf_csv,
                         rf_svg, out);
    }
    if (encode->parsed()) {
      return CmdEncode(enc_vocab, enc_input, show_tokens, in, out);
    }
    if (decode->parsed()) {
      return CmdDecode(dec_vocab, dec_input, in, out);
    }
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error (io-error): " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace zipfvocab::cli
