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

// Serial reference vs OpenMP kernels for the CRF batch objective and for
// corpus-wide Viterbi decoding.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "initdet/crf_parallel.h"
#include "initdet/labels.h"
#include "initdet/synthetic.h"
#include "initdet/train.h"

namespace initdet {
namespace {

struct Fixture {
  FeatureConfig features;
  CrfModel model{LabelSet(Schema::kIobes), FeatureConfig{}};
  std::vector<TrainingSequence> data;
  std::vector<size_t> batch;
  std::vector<EmissionTable> emissions;

  explicit Fixture(size_t num_sentences) {
    features.hash_dim = 1u << 16;
    SyntheticConfig cfg;
    cfg.num_sentences = num_sentences;
    cfg.report_length = 200;
    Corpus corpus = GenerateSyntheticCorpus(cfg);
    auto labels = DeriveCorpusLabels(corpus, Schema::kIobes);
    data = BuildFeatureSequences(corpus, labels, features);
    model = CrfModel(LabelSet(Schema::kIobes), features);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 0.1);
    for (double &p : model.params()) p = noise(rng);
    batch.resize(data.size());
    std::iota(batch.begin(), batch.end(), 0);
    for (const auto &seq : data) emissions.push_back(SequenceEmissions(model, seq));
  }
};

Fixture &Shared(size_t n) {
  static Fixture small(2000), large(20000);
  return n <= 2000 ? small : large;
}

void BM_ObjectiveSerial(benchmark::State &state) {
  Fixture &f = Shared(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BatchObjectiveSerial(f.model, f.data, f.batch, 1e-2));
  }
}

void BM_ObjectiveParallel(benchmark::State &state) {
  Fixture &f = Shared(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BatchObjectiveParallel(f.model, f.data, f.batch, 1e-2));
  }
}

void BM_DecodeSerial(benchmark::State &state) {
  Fixture &f = Shared(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(DecodeSerial(f.model, f.emissions));
}

void BM_DecodeParallel(benchmark::State &state) {
  Fixture &f = Shared(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(DecodeParallel(f.model, f.emissions));
}

BENCHMARK(BM_ObjectiveSerial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ObjectiveParallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecodeSerial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecodeParallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace initdet

BENCHMARK_MAIN();
