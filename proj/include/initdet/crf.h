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

#ifndef INITDET_CRF_H_
#define INITDET_CRF_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "initdet/features.h"
#include "initdet/labels.h"

namespace initdet {

// Per-position label scores in log-potential space, row-major
// (length x num_labels).
class EmissionTable {
 public:
  EmissionTable() = default;
  EmissionTable(size_t length, size_t num_labels, double fill = 0.0)
      : length_(length),
        num_labels_(num_labels),
        data_(length * num_labels, fill) {}

  size_t length() const { return length_; }
  size_t num_labels() const { return num_labels_; }
  bool empty() const { return length_ == 0; }

  double &operator()(size_t t, Label y) { return data_[t * num_labels_ + y]; }
  double operator()(size_t t, Label y) const {
    return data_[t * num_labels_ + y];
  }
  std::span<double> row(size_t t) {
    return {data_.data() + t * num_labels_, num_labels_};
  }
  std::span<const double> row(size_t t) const {
    return {data_.data() + t * num_labels_, num_labels_};
  }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const EmissionTable &, const EmissionTable &) = default;

 private:
  size_t length_ = 0;
  size_t num_labels_ = 0;
  std::vector<double> data_;
};

// Linear-chain CRF. All parameters live in one flat vector:
//
//   [ transitions (L x L, row = previous label) | start (L) | end (L) |
//     weights (hash_dim x L, feature-major) ]
//
// A model either scores sentences from hashed features (the weights block
// is present) or consumes externally supplied emissions (no weights block).
class CrfModel {
 public:
  // Feature-scored model with all parameters zero.
  CrfModel(LabelSet labels, const FeatureConfig &features);
  // Emission-consuming model (transitions, start and end only).
  explicit CrfModel(LabelSet labels);

  const LabelSet &label_set() const { return labels_; }
  size_t num_labels() const { return labels_.size(); }
  bool uses_features() const { return features_.has_value(); }
  // Only valid when uses_features().
  const FeatureConfig &feature_config() const { return *features_; }

  size_t num_params() const { return params_.size(); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  size_t transition_index(Label from, Label to) const {
    return static_cast<size_t>(from) * num_labels() + static_cast<size_t>(to);
  }
  size_t start_index(Label y) const { return num_labels() * num_labels() + y; }
  size_t end_index(Label y) const {
    return num_labels() * (num_labels() + 1) + y;
  }
  size_t weight_index(uint32_t feature, Label y) const {
    return num_labels() * (num_labels() + 2) +
           static_cast<size_t>(feature) * num_labels() + y;
  }
  // Size of the transitions + start + end prefix.
  size_t num_structural_params() const {
    return num_labels() * (num_labels() + 2);
  }

  double transition(Label from, Label to) const {
    return params_[transition_index(from, to)];
  }
  double &transition(Label from, Label to) {
    return params_[transition_index(from, to)];
  }
  double start(Label y) const { return params_[start_index(y)]; }
  double &start(Label y) { return params_[start_index(y)]; }
  double end(Label y) const { return params_[end_index(y)]; }
  double &end(Label y) { return params_[end_index(y)]; }
  double weight(uint32_t feature, Label y) const {
    return params_[weight_index(feature, y)];
  }
  double &weight(uint32_t feature, Label y) {
    return params_[weight_index(feature, y)];
  }

  // Emission scores of a feature-scored model for one report.
  EmissionTable Emissions(std::span<const FeatureVector> sentences) const;

  bool AllFinite() const;

  friend bool operator==(const CrfModel &, const CrfModel &) = default;

 private:
  LabelSet labels_;
  std::optional<FeatureConfig> features_;
  std::vector<double> params_;
};

// start[y0] + sum_t emissions[t][yt] + sum_t transitions[y(t-1)][yt] +
// end[y(T-1)].
double PathScore(const EmissionTable &emissions, const CrfModel &model,
                 std::span<const Label> path);

// Forward and backward log-messages, both length x num_labels.
struct ForwardBackward {
  EmissionTable alpha;
  EmissionTable beta;
  double log_partition = 0.0;
};

ForwardBackward RunForwardBackward(const EmissionTable &emissions,
                                   const CrfModel &model);

// log of the sum over all label paths of exp(PathScore).
double LogPartition(const EmissionTable &emissions, const CrfModel &model);

// PathScore(gold) - LogPartition; <= 0 up to rounding.
double SequenceLogLikelihood(const EmissionTable &emissions,
                             std::span<const Label> gold,
                             const CrfModel &model);

// Posterior label marginals p(y_t = y | x).
EmissionTable Marginals(const EmissionTable &emissions, const CrfModel &model);

// Highest-scoring path. Ties go to the lowest label index, both for the
// final label and for every back-pointer.
std::vector<Label> ViterbiDecode(const EmissionTable &emissions,
                                 const CrfModel &model);

// Score added to the outside label (and subtracted from all others) for
// sentences the preprocessor excluded.
inline constexpr double kForcedScore = 1e6;

// Overwrites rows whose mask entry is false so decoding must pick the
// outside label there. mask.size() must equal emissions.length().
void ForceOutside(EmissionTable &emissions, const std::vector<bool> &eligible,
                  Label outside);

}  // namespace initdet

#endif  // INITDET_CRF_H_
