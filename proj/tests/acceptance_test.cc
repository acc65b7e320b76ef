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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.h"
#include "initdet/aggregate.h"
#include "initdet/eval.h"
#include "initdet/io.h"
#include "initdet/labels.h"
#include "initdet/synthetic.h"
#include "initdet/train.h"
#include "oracle.h"

namespace initdet {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Format(const char *fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

// Published rows: annotator counts, matches, and the Min%/Max% cells.
struct PublishedRow {
  const char *name;
  size_t n1, n2, nm;
  double min_pct, max_pct;
};

constexpr PublishedRow kAgreementTable[] = {
    {"Cosmote 2008", 144, 133, 102, 58.29, 76.69},
    {"Cosmote 2009", 138, 87, 82, 57.34, 94.25},
    {"Portel 2008", 177, 176, 139, 64.95, 78.98},
    {"TeliaSonera 2008", 102, 97, 65, 48.51, 67.01},
    {"TeliaSonera 2009", 117, 129, 58, 30.85, 49.57},
};
constexpr double kAverageMin = 51.99, kAverageMax = 73.30;
constexpr double kCellTolerance = 0.01 + 1e-9;

Outcome AgreementReproduction() {
  // Rows go through the same text reader the CLI uses.
  std::ostringstream csv;
  csv << "report,a1,a2,matches\n";
  for (const auto &r : kAgreementTable) {
    csv << r.name << "," << r.n1 << "," << r.n2 << "," << r.nm << "\n";
  }
  std::istringstream in(csv.str());
  std::vector<AgreementCounts> rows = ReadAgreementRows(in);
  Outcome out;
  if (rows.size() != std::size(kAgreementTable)) return {false, "row count"};
  double worst = 0.0;
  for (size_t i = 0; i < rows.size(); ++i) {
    AgreementResult a = Agreement(rows[i]);
    worst = std::max({worst, std::abs(a.min_pct - kAgreementTable[i].min_pct),
                      std::abs(a.max_pct - kAgreementTable[i].max_pct)});
  }
  AgreementResult mean = MeanAgreement(rows);
  worst = std::max({worst, std::abs(mean.min_pct - kAverageMin),
                    std::abs(mean.max_pct - kAverageMax)});
  out.pass = worst <= kCellTolerance;
  out.detail = Format("averages %.2f%% / %.2f%%, worst cell deviation %.4f pp",
                      mean.min_pct, mean.max_pct, worst);
  return out;
}

Outcome LabelFidelity() {
  Corpus c = fixtures::SevenSentenceCorpus();
  LabelSeq binary = DeriveCorpusLabels(c, Schema::kBinary)[0];
  LabelSeq iobes = DeriveCorpusLabels(c, Schema::kIobes)[0];
  const std::vector<Label> want_binary = {0, 1, 1, 1, 1, 1, 0};
  const std::vector<Label> want_iobes = {kO, kS, kB, kI, kI, kE, kO};
  auto from_iobes = Aggregate(iobes);
  auto from_binary = Aggregate(binary);
  Outcome out;
  out.pass = binary.labels == want_binary && iobes.labels == want_iobes &&
             from_iobes.size() == 2 && from_binary.size() == 1 &&
             from_iobes[0].start == 1 && from_iobes[0].end == 1 &&
             from_iobes[1].start == 2 && from_iobes[1].end == 5 &&
             from_binary[0].start == 1 && from_binary[0].end == 5;
  out.detail = Format("IOBES aggregates to %zu initiatives, binary to %zu",
                      from_iobes.size(), from_binary.size());
  return out;
}

double RelativeError(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8});
}

Outcome CrfCorrectness() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(20260101);
  const LabelSet iobes(Schema::kIobes);

  // (a) Viterbi against exhaustive search.
  int viterbi_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    CrfModel m{iobes};
    oracle::RandomizeParams(rng, m);
    EmissionTable e = oracle::RandomEmissions(rng, 1 + i % 6, 5);
    auto path = ViterbiDecode(e, m);
    double best = oracle::MaxPathScore(e, m);
    if (std::abs(PathScore(e, m, path) - best) > 1e-9 * std::max(1.0, std::abs(best))) {
      ++viterbi_bad;
    }
  }

  // (b) Log partition against brute-force log-sum-exp.
  int partition_bad = 0;
  double partition_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    CrfModel m{iobes};
    oracle::RandomizeParams(rng, m);
    EmissionTable e = oracle::RandomEmissions(rng, 1 + i % 5, 5);
    double diff = std::abs(LogPartition(e, m) - oracle::LogPartition(e, m));
    partition_worst = std::max(partition_worst, diff);
    if (!(diff <= 1e-10)) ++partition_bad;
  }

  // (c) Gradient against central differences of the brute-force objective.
  constexpr double h = 1e-5, l2 = 1e-2;
  int grad_bad = 0, grad_checked = 0;
  double grad_worst = 0.0;
  while (grad_checked < 100) {
    FeatureConfig cfg;
    cfg.hash_dim = 8;
    CrfModel m(iobes, cfg);
    oracle::RandomizeParams(rng, m, 0.5);
    std::vector<TrainingSequence> data;
    for (int s = 0; s < 3; ++s) {
      data.push_back(oracle::RandomFeatureSequence(rng, 1 + rng() % 4, 5,
                                                   cfg.hash_dim, 3));
    }
    std::vector<size_t> batch(data.size());
    std::iota(batch.begin(), batch.end(), 0);
    Objective obj = BatchObjectiveSerial(m, data, batch, l2);
    for (int k = 0; k < 10; ++k, ++grad_checked) {
      size_t p = rng() % m.num_params();
      CrfModel plus = m, minus = m;
      plus.params()[p] += h;
      minus.params()[p] -= h;
      double fd = (oracle::Objective(plus, data, l2) -
                   oracle::Objective(minus, data, l2)) / (2 * h);
      double err = RelativeError(obj.gradient[p], fd);
      grad_worst = std::max(grad_worst, err);
      if (!(err < 1e-4)) ++grad_bad;
    }
  }

  double secs = Seconds(t0);
  Outcome out;
  out.pass = viterbi_bad == 0 && partition_bad == 0 && grad_bad == 0 && secs < 60.0;
  out.detail = Format(
      "viterbi %d/1000 wrong, log partition worst %.2e, gradient worst rel %.2e, %.1fs",
      viterbi_bad, partition_worst, grad_worst, secs);
  return out;
}

Outcome RoundTrip() {
  std::mt19937_64 rng(77);
  int iobes_bad = 0, binary_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string id = "R" + std::to_string(i);
    size_t length = 1 + rng() % 40;
    auto spans = oracle::RandomSpans(rng, id, length, 5, true);
    if (AggregateIobes(DeriveIobes(spans, length)) != spans) ++iobes_bad;
    auto apart = oracle::RandomSpans(rng, id, length, 5, false);
    if (AggregateBinary(DeriveBinary(apart, length)) != apart) ++binary_bad;
  }
  return {iobes_bad == 0 && binary_bad == 0,
          Format("IOBES %d/1000 and binary %d/1000 span sets altered", iobes_bad,
                 binary_bad)};
}

Outcome SyntheticEndToEnd() {
  auto t0 = Clock::now();
  SyntheticConfig sc;
  sc.num_sentences = 1000;
  sc.seed = 1;
  Corpus train = GenerateSyntheticCorpus(sc);
  sc.num_sentences = 300;
  sc.seed = 1001;
  sc.report_prefix = "DEV";
  Corpus dev = GenerateSyntheticCorpus(sc);
  sc.num_sentences = 1000;
  sc.seed = 2001;
  sc.report_prefix = "TEST";
  Corpus test = GenerateSyntheticCorpus(sc);

  const FeatureConfig features;
  auto tr = BuildFeatureSequences(train, DeriveCorpusLabels(train, Schema::kIobes),
                                  features);
  auto dv = BuildFeatureSequences(dev, DeriveCorpusLabels(dev, Schema::kIobes),
                                  features);
  TrainResult res = Train(CrfModel(LabelSet(Schema::kIobes), features), tr, dv,
                          CrfTrainConfig{});

  std::vector<InitiativeSpan> predicted;
  for (const LabelSeq &seq :
       Predict(test, res.model, FilterMask(test, {}), Schema::kIobes)) {
    auto spans = Aggregate(seq);
    predicted.insert(predicted.end(), spans.begin(), spans.end());
  }
  auto gold = ExtractSpans(test);
  MatchReport exact = MatchExact(predicted, gold);
  MatchReport min = MatchMin(predicted, gold);
  double secs = Seconds(t0);
  return {exact.f1 >= 0.9 && min.f1 >= exact.f1 && secs < 120.0,
          Format("exact F1 %.4f, min F1 %.4f on %zu held-out initiatives, "
                 "best epoch %d, %.1fs",
                 exact.f1, min.f1, gold.size(), res.best_epoch, secs)};
}

Outcome MetricLaws() {
  std::mt19937_64 rng(99);
  int violations = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<InitiativeSpan> pred, gold;
    size_t reports = 1 + rng() % 3;
    for (size_t r = 0; r < reports; ++r) {
      const std::string id = "R" + std::to_string(r);
      size_t length = 1 + rng() % 30;
      auto p = oracle::RandomSpans(rng, id, length, 1 + rng() % 6, true);
      auto g = oracle::RandomSpans(rng, id, length, 1 + rng() % 6, true);
      pred.insert(pred.end(), p.begin(), p.end());
      gold.insert(gold.end(), g.begin(), g.end());
    }
    MatchReport exact = MatchExact(pred, gold);
    MatchReport min = MatchMin(pred, gold);
    for (const MatchReport *m : {&exact, &min}) {
      if (m->tp + m->fp != pred.size() || m->tp + m->fn != gold.size()) ++violations;
    }
    if (min.tp < exact.tp) ++violations;
  }
  return {violations == 0, Format("%d violations over 500 pairs", violations)};
}

}  // namespace
}  // namespace initdet

int main() {
  using initdet::Outcome;
  const std::pair<const char *, std::function<Outcome()>> criteria[] = {
      {"agreement_reproduction", initdet::AgreementReproduction},
      {"label_fidelity", initdet::LabelFidelity},
      {"crf_correctness", initdet::CrfCorrectness},
      {"round_trip", initdet::RoundTrip},
      {"synthetic_end_to_end", initdet::SyntheticEndToEnd},
      {"metric_laws", initdet::MetricLaws},
  };
  int failed = 0;
  for (const auto &[name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
