// Copyright 2026 The initdet Authors.
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

// Command-line driver. Every subcommand reads and writes files only, so
// pipelines compose through the shell.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "initdet/aggregate.h"
#include "initdet/corpus.h"
#include "initdet/error.h"
#include "initdet/eval.h"
#include "initdet/io.h"
#include "initdet/labels.h"
#include "initdet/preprocess.h"
#include "initdet/synthetic.h"
#include "initdet/train.h"
#include "json.hpp"

namespace initdet {
namespace {

using nlohmann::json;

struct GlobalFlags {
  uint64_t seed = 0;
  bool verbose = false;
};

std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

// Writes to path, or to stdout when path is empty or "-". The file is only
// replaced once the output is complete.
void WriteOutput(const std::string &path,
                 const std::function<void(std::ostream &)> &write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ostringstream buf;
  write(buf);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << buf.str();
  if (!out.flush()) throw UsageError("error writing " + path);
}

Schema GetSchema(const std::string &name) {
  auto s = ParseSchema(name);
  if (!s) throw UsageError("unknown schema '" + name + "'");
  return *s;
}

std::vector<LabelSeq> LoadLabels(const std::string &path) {
  auto in = OpenInput(path);
  return ReadLabels(in);
}

std::vector<InitiativeSpan> LoadSpans(const std::string &path) {
  auto in = OpenInput(path);
  return ReadSpans(in);
}

EmissionFile LoadEmissions(const std::string &path, size_t num_labels,
                           const Corpus *corpus) {
  auto in = OpenInput(path);
  return ReadEmissions(in, num_labels, corpus);
}

// ---- stats

struct StatsFlags {
  std::string corpus, manifest;
  bool json = false;
};

json StatsJson(const CorpusStats &s) {
  return {{"reports", s.n_reports},
          {"sentences", s.n_sentences},
          {"initiatives", s.n_initiatives},
          {"pct_sentences_in_initiatives", s.pct_sentences_in_initiatives}};
}

void RunStats(const StatsFlags &f) {
  std::vector<std::pair<std::string, Corpus>> parts;
  if (!f.corpus.empty()) parts.emplace_back("corpus", LoadCorpus(f.corpus));
  if (!f.manifest.empty()) {
    std::filesystem::path base = std::filesystem::path(f.manifest).parent_path();
    std::map<Split, Corpus> by_split;
    for (const auto &[file, split] : LoadManifest(f.manifest)) {
      std::filesystem::path p(file);
      if (p.is_relative()) p = base / p;
      Corpus c = LoadCorpus(p.string(), split);
      Corpus &dst = by_split[split];
      dst.split = split;
      for (auto &r : c.reports) dst.reports.push_back(std::move(r));
    }
    for (auto &[split, c] : by_split) {
      c.Validate();
      parts.emplace_back(std::string(SplitName(split)), std::move(c));
    }
  }
  if (parts.empty()) throw UsageError("stats needs --corpus or --manifest");

  json doc = json::object();
  std::ostringstream table;
  table << std::left << std::setw(10) << "split" << std::right << std::setw(9)
        << "reports" << std::setw(11) << "sentences" << std::setw(13)
        << "initiatives" << std::setw(17) << "% in initiative" << "\n";
  for (const auto &[name, c] : parts) {
    CorpusStats s = ComputeStats(c);
    if (s.empty_warning) std::cerr << "warning: " << name << " has no sentences\n";
    doc[name] = StatsJson(s);
    table << std::left << std::setw(10) << name << std::right << std::setw(9)
          << s.n_reports << std::setw(11) << s.n_sentences << std::setw(13)
          << s.n_initiatives << std::setw(17) << std::fixed
          << std::setprecision(2) << s.pct_sentences_in_initiatives << "\n";
  }
  if (f.json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << table.str();
  }
}

// ---- derive-labels / extract-spans

struct DeriveFlags {
  std::string corpus, schema = "iobes", output;
};

void RunDerive(const DeriveFlags &f) {
  Corpus c = LoadCorpus(f.corpus);
  auto labels = DeriveCorpusLabels(c, GetSchema(f.schema));
  WriteOutput(f.output, [&](std::ostream &out) { WriteLabels(labels, out); });
}

struct ExtractFlags {
  std::string corpus, output;
};

void RunExtract(const ExtractFlags &f) {
  auto spans = ExtractSpans(LoadCorpus(f.corpus));
  WriteOutput(f.output, [&](std::ostream &out) { WriteSpans(spans, out); });
}

// ---- train

struct TrainFlags {
  std::string corpus, labels, dev, dev_labels;
  std::string emissions, dev_emissions;
  std::string schema = "iobes", output;
  FeatureConfig features;
  bool case_sensitive = false;
  CrfTrainConfig train;
  bool serial = false;
};

std::vector<LabelSeq> LabelsFor(const std::string &labels_path,
                                const Corpus *corpus, Schema schema) {
  if (!labels_path.empty()) {
    auto labels = LoadLabels(labels_path);
    for (const auto &l : labels) {
      if (l.schema != schema && !l.labels.empty()) {
        throw UsageError("label file " + labels_path + " does not use the " +
                         std::string(LabelSet(schema).SchemaName()) + " schema");
      }
    }
    return labels;
  }
  if (!corpus) throw UsageError("labels require --labels or a corpus");
  return DeriveCorpusLabels(*corpus, schema);
}

void RunTrain(TrainFlags f, const GlobalFlags &g) {
  const Schema schema = GetSchema(f.schema);
  const LabelSet label_set(schema);
  f.features.lowercase = !f.case_sensitive;
  f.train.seed = g.seed;
  f.train.parallel = !f.serial;

  std::optional<Corpus> train_corpus, dev_corpus;
  if (!f.corpus.empty()) train_corpus = LoadCorpus(f.corpus, Split::kTrain);
  if (!f.dev.empty()) dev_corpus = LoadCorpus(f.dev, Split::kDev);

  std::vector<TrainingSequence> train, dev;
  std::optional<CrfModel> init;
  if (!f.emissions.empty()) {
    const Corpus *tc = train_corpus ? &*train_corpus : nullptr;
    auto em = LoadEmissions(f.emissions, label_set.size(), tc);
    train = BuildEmissionSequences(em.emissions, LabelsFor(f.labels, tc, schema));
    if (!f.dev_emissions.empty()) {
      const Corpus *dc = dev_corpus ? &*dev_corpus : nullptr;
      auto dem = LoadEmissions(f.dev_emissions, label_set.size(), dc);
      dev = BuildEmissionSequences(dem.emissions,
                                   LabelsFor(f.dev_labels, dc, schema));
    }
    init.emplace(label_set);
  } else {
    if (!train_corpus) throw UsageError("train needs --corpus or --emissions");
    if (!f.dev_emissions.empty()) {
      throw UsageError("--dev-emissions requires --emissions");
    }
    f.features.Validate();
    train = BuildFeatureSequences(
        *train_corpus, LabelsFor(f.labels, &*train_corpus, schema), f.features);
    if (dev_corpus) {
      dev = BuildFeatureSequences(
          *dev_corpus, LabelsFor(f.dev_labels, &*dev_corpus, schema), f.features);
    }
    init.emplace(label_set, f.features);
  }

  TrainResult res = Train(std::move(*init), train, dev, f.train);
  if (g.verbose) {
    for (const auto &rec : res.history) {
      std::cerr << "epoch " << rec.epoch << " objective " << rec.train_objective
                << " train_ll " << rec.train_log_likelihood;
      if (rec.dev_log_likelihood) std::cerr << " dev_ll " << *rec.dev_log_likelihood;
      std::cerr << "\n";
    }
    std::cerr << "selected epoch " << res.best_epoch << "\n";
  }
  WriteOutput(f.output, [&](std::ostream &out) { SaveModel(res.model, out); });
}

// ---- predict / decode

struct PredictFlags {
  std::string corpus, model, output;
  PreprocessConfig preprocess;
  bool serial = false;
};

void RunPredict(const PredictFlags &f) {
  Corpus c = LoadCorpus(f.corpus);
  CrfModel m = LoadModelFile(f.model);
  f.preprocess.Validate();
  auto labels = Predict(c, m, FilterMask(c, f.preprocess),
                        m.label_set().schema(), !f.serial);
  WriteOutput(f.output, [&](std::ostream &out) { WriteLabels(labels, out); });
}

struct DecodeFlags {
  std::string emissions, model, corpus, output;
  bool serial = false;
};

void RunDecode(const DecodeFlags &f) {
  CrfModel m = LoadModelFile(f.model);
  if (m.uses_features()) {
    throw UsageError("decode needs a model trained on emissions");
  }
  std::optional<Corpus> c;
  if (!f.corpus.empty()) c = LoadCorpus(f.corpus);
  auto em = LoadEmissions(f.emissions, m.num_labels(), c ? &*c : nullptr);
  for (const auto &[id, table] : em.emissions) {
    for (double v : table.data()) {
      if (!std::isfinite(v)) throw NumericalError("non-finite emission in " + id);
    }
  }
  auto labels = DecodeEmissions(em.emissions, m, em.eligible, !f.serial);
  if (c) {
    // Keep corpus order rather than the sorted order of the emission file.
    std::map<std::string, LabelSeq> by_id;
    for (auto &l : labels) by_id.emplace(l.report_id, std::move(l));
    labels.clear();
    for (const Report &r : c->reports) {
      auto it = by_id.find(r.id);
      if (it != by_id.end()) {
        labels.push_back(std::move(it->second));
      } else {
        labels.push_back({r.id, m.label_set().schema(),
                          std::vector<Label>(r.size(), m.label_set().outside())});
      }
    }
  }
  WriteOutput(f.output, [&](std::ostream &out) { WriteLabels(labels, out); });
}

// ---- aggregate / evaluate / agreement

struct AggregateFlags {
  std::string labels, output;
};

void RunAggregate(const AggregateFlags &f) {
  std::vector<InitiativeSpan> spans;
  for (const LabelSeq &seq : LoadLabels(f.labels)) {
    auto s = Aggregate(seq);
    spans.insert(spans.end(), s.begin(), s.end());
  }
  WriteOutput(f.output, [&](std::ostream &out) { WriteSpans(spans, out); });
}

json ReportJson(const MatchReport &r) {
  return {{"tp", r.tp},           {"fp", r.fp},         {"fn", r.fn},
          {"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
}

struct EvaluateFlags {
  std::string pred, gold, output;
};

void RunEvaluate(const EvaluateFlags &f) {
  auto pred = LoadSpans(f.pred);
  auto gold = LoadSpans(f.gold);
  json doc;
  for (MatchRegime regime : {MatchRegime::kExactMatch, MatchRegime::kMinMatch}) {
    doc[std::string(RegimeName(regime))] = ReportJson(Match(pred, gold, regime));
  }
  WriteOutput(f.output, [&](std::ostream &out) { out << doc.dump(2) << "\n"; });
}

struct AgreementFlags {
  std::string counts;
  bool json = false;
};

void RunAgreement(const AgreementFlags &f) {
  std::vector<AgreementCounts> rows;
  if (f.counts.empty() || f.counts == "-") {
    rows = ReadAgreementRows(std::cin);
  } else {
    auto in = OpenInput(f.counts);
    rows = ReadAgreementRows(in);
  }
  if (rows.empty()) throw UsageError("no agreement rows");
  AgreementResult mean = MeanAgreement(rows);
  if (f.json) {
    json doc = {{"rows", json::array()}};
    for (const auto &r : rows) {
      AgreementResult a = Agreement(r);
      doc["rows"].push_back({{"name", r.name}, {"a1", r.n1}, {"a2", r.n2},
                             {"matches", r.nm}, {"min_pct", a.min_pct},
                             {"max_pct", a.max_pct}});
    }
    doc["average"] = {{"min_pct", mean.min_pct}, {"max_pct", mean.max_pct}};
    std::cout << doc.dump(2) << "\n";
    return;
  }
  size_t width = 7;
  for (const auto &r : rows) width = std::max(width, r.name.size());
  auto line = [&](const std::string &name, const std::string &a1,
                  const std::string &a2, const std::string &nm, double lo,
                  double hi) {
    std::cout << std::left << std::setw(width + 2) << name << std::right
              << std::setw(6) << a1 << std::setw(6) << a2 << std::setw(9) << nm
              << std::fixed << std::setprecision(2) << std::setw(9) << lo << "%"
              << std::setw(9) << hi << "%\n";
  };
  std::cout << std::left << std::setw(width + 2) << "Report" << std::right
            << std::setw(6) << "A1" << std::setw(6) << "A2" << std::setw(9)
            << "Matches" << std::setw(10) << "Min %" << std::setw(10)
            << "Max %" << "\n";
  for (const auto &r : rows) {
    AgreementResult a = Agreement(r);
    line(r.name, std::to_string(r.n1), std::to_string(r.n2),
         std::to_string(r.nm), a.min_pct, a.max_pct);
  }
  line("Average", "", "", "", mean.min_pct, mean.max_pct);
}

// ---- synthesize

struct SynthFlags {
  SyntheticConfig cfg;
  std::string cue;
  std::string output;
};

void RunSynthesize(SynthFlags f, const GlobalFlags &g) {
  f.cfg.seed = g.seed;
  if (!f.cue.empty()) {
    // Singleton initiatives only, each marked by the one cue word.
    f.cfg.span_length_weights = {1.0};
    f.cfg.cues = {"", f.cue, "", "", ""};
  }
  Corpus c = GenerateSyntheticCorpus(f.cfg);
  WriteOutput(f.output, [&](std::ostream &out) { WriteCorpus(c, out); });
}

int ExitCode(const Error &e) {
  if (dynamic_cast<const UsageError *>(&e)) return 1;
  if (dynamic_cast<const NumericalError *>(&e)) return 3;
  return 2;
}

std::string OneLine(std::string s) {
  for (char &c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

int ReportError(const char *kind, const std::string &message, int code) {
  std::cerr << "error: kind=" << kind << " message=" << OneLine(message) << "\n";
  return code;
}

}  // namespace
}  // namespace initdet

int main(int argc, char **argv) {
  using namespace initdet;
  CLI::App app{"Detect sustainability initiatives in report sentences."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read flags from a TOML/INI file");

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_flag("-v,--verbose", g.verbose, "Log progress to stderr");

  StatsFlags stats;
  auto *cmd_stats = app.add_subcommand("stats", "Corpus statistics");
  cmd_stats->add_option("--corpus", stats.corpus, "Corpus JSONL file");
  cmd_stats->add_option("--manifest", stats.manifest,
                        "Lines of '<corpus file> <split>'");
  cmd_stats->add_flag("--json", stats.json, "JSON output");

  DeriveFlags derive;
  auto *cmd_derive = app.add_subcommand("derive-labels", "Gold label sequences");
  cmd_derive->add_option("--corpus", derive.corpus)->required();
  cmd_derive->add_option("--schema", derive.schema, "binary or iobes")
      ->capture_default_str();
  cmd_derive->add_option("-o,--output", derive.output);

  ExtractFlags extract;
  auto *cmd_extract = app.add_subcommand("extract-spans", "Gold initiative spans");
  cmd_extract->add_option("--corpus", extract.corpus)->required();
  cmd_extract->add_option("-o,--output", extract.output);

  TrainFlags train;
  auto *cmd_train = app.add_subcommand("train", "Train a CRF");
  cmd_train->add_option("--corpus", train.corpus, "Training corpus");
  cmd_train->add_option("--labels", train.labels,
                        "Training labels; derived from the corpus if absent");
  cmd_train->add_option("--dev", train.dev, "Development corpus");
  cmd_train->add_option("--dev-labels", train.dev_labels);
  cmd_train->add_option("--emissions", train.emissions,
                        "Train transitions on external emission scores");
  cmd_train->add_option("--dev-emissions", train.dev_emissions);
  cmd_train->add_option("--schema", train.schema)->capture_default_str();
  cmd_train->add_option("--window", train.features.window)->capture_default_str();
  cmd_train->add_option("--hash-dim", train.features.hash_dim)->capture_default_str();
  cmd_train->add_flag("--case-sensitive", train.case_sensitive);
  cmd_train->add_option("--learning-rate", train.train.learning_rate)
      ->capture_default_str();
  cmd_train->add_option("--l2", train.train.l2_lambda)->capture_default_str();
  cmd_train->add_option("--epochs", train.train.max_epochs)->capture_default_str();
  cmd_train->add_option("--patience", train.train.patience)->capture_default_str();
  cmd_train->add_option("--batch-size", train.train.batch_size,
                        "Reports per gradient step")
      ->capture_default_str();
  cmd_train->add_flag("--serial", train.serial, "Single-threaded kernels");
  cmd_train->add_option("-o,--output", train.output, "Model file")->required();

  PredictFlags predict;
  auto *cmd_predict = app.add_subcommand("predict", "Label a corpus");
  cmd_predict->add_option("--corpus", predict.corpus)->required();
  cmd_predict->add_option("--model", predict.model)->required();
  cmd_predict->add_option("--min-tokens", predict.preprocess.min_tokens)
      ->capture_default_str();
  cmd_predict->add_option("--max-tokens", predict.preprocess.max_tokens)
      ->capture_default_str();
  cmd_predict->add_flag("--serial", predict.serial);
  cmd_predict->add_option("-o,--output", predict.output);

  DecodeFlags decode;
  auto *cmd_decode = app.add_subcommand("decode", "Viterbi over external emissions");
  cmd_decode->add_option("--emissions", decode.emissions)->required();
  cmd_decode->add_option("--model", decode.model)->required();
  cmd_decode->add_option("--corpus", decode.corpus,
                         "Fixes report lengths and output order");
  cmd_decode->add_flag("--serial", decode.serial);
  cmd_decode->add_option("-o,--output", decode.output);

  AggregateFlags aggregate;
  auto *cmd_aggregate = app.add_subcommand("aggregate", "Labels to initiative spans");
  cmd_aggregate->add_option("--labels", aggregate.labels)->required();
  cmd_aggregate->add_option("-o,--output", aggregate.output);

  EvaluateFlags evaluate;
  auto *cmd_evaluate = app.add_subcommand("evaluate", "Exact and Min Match scores");
  cmd_evaluate->add_option("--pred", evaluate.pred)->required();
  cmd_evaluate->add_option("--gold", evaluate.gold)->required();
  cmd_evaluate->add_option("-o,--output", evaluate.output);

  AgreementFlags agreement;
  auto *cmd_agreement = app.add_subcommand("agreement", "Inter-annotator agreement");
  cmd_agreement->add_option("--counts", agreement.counts,
                            "Rows of [name,] a1, a2, matches; '-' for stdin");
  cmd_agreement->add_flag("--json", agreement.json);

  SynthFlags synth;
  auto *cmd_synth = app.add_subcommand("synthesize", "Generate a cue-marked corpus");
  cmd_synth->add_option("--sentences", synth.cfg.num_sentences)->capture_default_str();
  cmd_synth->add_option("--report-length", synth.cfg.report_length)
      ->capture_default_str();
  cmd_synth->add_option("--initiative-rate", synth.cfg.initiative_rate)
      ->capture_default_str();
  cmd_synth->add_option("--prefix", synth.cfg.report_prefix)->capture_default_str();
  cmd_synth->add_option("--cue", synth.cue,
                        "Mark single-sentence initiatives with this word only");
  cmd_synth->add_option("-o,--output", synth.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return ReportError("usage", e.what(), 1);
  }

  try {
    if (*cmd_stats) RunStats(stats);
    if (*cmd_derive) RunDerive(derive);
    if (*cmd_extract) RunExtract(extract);
    if (*cmd_train) RunTrain(train, g);
    if (*cmd_predict) RunPredict(predict);
    if (*cmd_decode) RunDecode(decode);
    if (*cmd_aggregate) RunAggregate(aggregate);
    if (*cmd_evaluate) RunEvaluate(evaluate);
    if (*cmd_agreement) RunAgreement(agreement);
    if (*cmd_synth) RunSynthesize(synth, g);
  } catch (const Error &e) {
    return ReportError(e.kind(), e.what(), ExitCode(e));
  } catch (const std::exception &e) {
    return ReportError("internal", e.what(), 2);
  }
  return 0;
}
