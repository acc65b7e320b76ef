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

#ifndef INITDET_CRF_PARALLEL_H_
#define INITDET_CRF_PARALLEL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "initdet/crf.h"

namespace initdet {

// One training report. Feature-scored models read `features`; emission
// models read `emissions`.
struct TrainingSequence {
  std::string report_id;
  std::vector<FeatureVector> features;
  EmissionTable emissions;
  std::vector<Label> gold;

  size_t length() const { return gold.size(); }
};

// Log-likelihood of one sequence and its derivative with respect to the
// structural parameters and to every emission score.
struct SequenceStats {
  double log_likelihood = 0.0;
  std::vector<double> structural_grad;  // transitions | start | end
  EmissionTable emission_grad;          // gold indicator minus marginal
};

SequenceStats ComputeSequenceStats(const CrfModel &model,
                                   const TrainingSequence &seq);

// Regularized objective over a batch:
//   value    = mean_i loglik_i - l2/2 * |params|^2
//   gradient = mean_i dloglik_i - l2 * params
struct Objective {
  double value = 0.0;
  double mean_log_likelihood = 0.0;
  std::vector<double> gradient;
};

// Reference implementation: one sequence at a time.
Objective BatchObjectiveSerial(const CrfModel &model,
                               std::span<const TrainingSequence> data,
                               std::span<const size_t> batch, double l2);

// Per-sequence statistics are computed in parallel and then folded in batch
// order, so the result is bit-identical to BatchObjectiveSerial.
Objective BatchObjectiveParallel(const CrfModel &model,
                                 std::span<const TrainingSequence> data,
                                 std::span<const size_t> batch, double l2);

// Viterbi over many reports.
std::vector<std::vector<Label>> DecodeSerial(
    const CrfModel &model, std::span<const EmissionTable> emissions);
std::vector<std::vector<Label>> DecodeParallel(
    const CrfModel &model, std::span<const EmissionTable> emissions);

// Emission table of a training sequence under the model.
EmissionTable SequenceEmissions(const CrfModel &model,
                                const TrainingSequence &seq);

}  // namespace initdet

#endif  // INITDET_CRF_PARALLEL_H_
