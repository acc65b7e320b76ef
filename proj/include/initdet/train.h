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

#ifndef INITDET_TRAIN_H_
#define INITDET_TRAIN_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "initdet/corpus.h"
#include "initdet/crf.h"
#include "initdet/crf_parallel.h"
#include "initdet/labels.h"
#include "initdet/preprocess.h"

namespace initdet {

struct CrfTrainConfig {
  double learning_rate = 0.1;
  double l2_lambda = 1e-2;
  int max_epochs = 50;
  int patience = 5;
  // Reports per gradient step.
  size_t batch_size = 1;
  uint64_t seed = 0;
  // OpenMP batch kernel; off selects the serial reference. Both produce
  // identical models.
  bool parallel = true;

  void Validate() const;
};

struct EpochRecord {
  int epoch = 0;  // 0 = before any update
  double train_objective = 0.0;
  double train_log_likelihood = 0.0;  // mean per report
  std::optional<double> dev_log_likelihood;
};

struct TrainResult {
  CrfModel model;
  std::vector<EpochRecord> history;
  int best_epoch = 0;
};

// Mini-batch gradient ascent on the regularized mean log-likelihood,
// starting from `init`. Reports are reshuffled every epoch from `seed`.
// With a dev set, the returned model is the one with the best dev
// log-likelihood and training stops after `patience` epochs without
// improvement. Throws NumericalError on a non-finite objective.
TrainResult Train(CrfModel init, std::span<const TrainingSequence> train,
                  std::span<const TrainingSequence> dev,
                  const CrfTrainConfig &cfg);

// Mean log-likelihood per report.
double MeanLogLikelihood(const CrfModel &model,
                         std::span<const TrainingSequence> data);

// Pairs every report with its gold labels and hashed features. Labels must
// cover every report with matching length.
std::vector<TrainingSequence> BuildFeatureSequences(
    const Corpus &corpus, std::span<const LabelSeq> labels,
    const FeatureConfig &cfg);

// Reports keyed by id with one emission table each.
using EmissionSet = std::map<std::string, EmissionTable>;

std::vector<TrainingSequence> BuildEmissionSequences(
    const EmissionSet &emissions, std::span<const LabelSeq> labels);

// Viterbi labels for every report of a corpus under a feature-scored model.
// Ineligible sentences (per `mask`) are forced to the outside label.
std::vector<LabelSeq> Predict(const Corpus &corpus, const CrfModel &model,
                              const EligibilityMask &mask, Schema mode,
                              bool parallel = true);

// Per-report eligibility for emission decoding.
using EligibilitySet = std::map<std::string, std::vector<bool>>;

// Viterbi labels for externally scored reports. Reports missing from
// `eligible` are treated as fully eligible.
std::vector<LabelSeq> DecodeEmissions(const EmissionSet &emissions,
                                      const CrfModel &model,
                                      const EligibilitySet &eligible,
                                      bool parallel = true);

}  // namespace initdet

#endif  // INITDET_TRAIN_H_
