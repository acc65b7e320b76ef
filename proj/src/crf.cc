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

#include "initdet/crf.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "initdet/error.h"

namespace initdet {
namespace {

double LogSumExp(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - m);
  return m + std::log(sum);
}

void CheckShape(const EmissionTable &emissions, const CrfModel &model) {
  if (emissions.empty()) throw UsageError("empty emission sequence");
  if (emissions.num_labels() != model.num_labels()) {
    throw IntegrityError("emission table has " +
                         std::to_string(emissions.num_labels()) +
                         " labels, model has " +
                         std::to_string(model.num_labels()));
  }
}

}  // namespace

CrfModel::CrfModel(LabelSet labels, const FeatureConfig &features)
    : labels_(labels), features_(features) {
  features.Validate();
  params_.assign(num_structural_params() +
                     static_cast<size_t>(features.hash_dim) * num_labels(),
                 0.0);
}

CrfModel::CrfModel(LabelSet labels) : labels_(labels) {
  params_.assign(num_structural_params(), 0.0);
}

EmissionTable CrfModel::Emissions(std::span<const FeatureVector> sentences) const {
  if (!uses_features()) {
    throw UsageError("model consumes external emissions, not features");
  }
  const size_t L = num_labels();
  EmissionTable table(sentences.size(), L);
  for (size_t t = 0; t < sentences.size(); ++t) {
    auto row = table.row(t);
    for (const Feature &f : sentences[t]) {
      const double *w = params_.data() + weight_index(f.id, 0);
      for (size_t y = 0; y < L; ++y) row[y] += f.value * w[y];
    }
  }
  return table;
}

bool CrfModel::AllFinite() const {
  return std::all_of(params_.begin(), params_.end(),
                     [](double v) { return std::isfinite(v); });
}

double PathScore(const EmissionTable &emissions, const CrfModel &model,
                 std::span<const Label> path) {
  CheckShape(emissions, model);
  if (path.size() != emissions.length()) {
    throw IntegrityError("label sequence length " + std::to_string(path.size()) +
                         " != emission length " +
                         std::to_string(emissions.length()));
  }
  double score = model.start(path.front()) + model.end(path.back());
  for (size_t t = 0; t < path.size(); ++t) {
    score += emissions(t, path[t]);
    if (t > 0) score += model.transition(path[t - 1], path[t]);
  }
  return score;
}

ForwardBackward RunForwardBackward(const EmissionTable &emissions,
                                   const CrfModel &model) {
  CheckShape(emissions, model);
  const size_t T = emissions.length();
  const size_t L = model.num_labels();
  ForwardBackward fb{EmissionTable(T, L), EmissionTable(T, L), 0.0};
  std::vector<double> scratch(L);

  for (size_t y = 0; y < L; ++y) {
    fb.alpha(0, y) = model.start(y) + emissions(0, y);
  }
  for (size_t t = 1; t < T; ++t) {
    for (size_t y = 0; y < L; ++y) {
      for (size_t p = 0; p < L; ++p) {
        scratch[p] = fb.alpha(t - 1, p) + model.transition(p, y);
      }
      fb.alpha(t, y) = emissions(t, y) + LogSumExp(scratch);
    }
  }

  for (size_t y = 0; y < L; ++y) fb.beta(T - 1, y) = model.end(y);
  for (size_t t = T - 1; t-- > 0;) {
    for (size_t y = 0; y < L; ++y) {
      for (size_t n = 0; n < L; ++n) {
        scratch[n] =
            model.transition(y, n) + emissions(t + 1, n) + fb.beta(t + 1, n);
      }
      fb.beta(t, y) = LogSumExp(scratch);
    }
  }

  for (size_t y = 0; y < L; ++y) scratch[y] = fb.alpha(T - 1, y) + model.end(y);
  fb.log_partition = LogSumExp(scratch);
  return fb;
}

double LogPartition(const EmissionTable &emissions, const CrfModel &model) {
  CheckShape(emissions, model);
  const size_t T = emissions.length();
  const size_t L = model.num_labels();
  std::vector<double> alpha(L), next(L), scratch(L);
  for (size_t y = 0; y < L; ++y) alpha[y] = model.start(y) + emissions(0, y);
  for (size_t t = 1; t < T; ++t) {
    for (size_t y = 0; y < L; ++y) {
      for (size_t p = 0; p < L; ++p) scratch[p] = alpha[p] + model.transition(p, y);
      next[y] = emissions(t, y) + LogSumExp(scratch);
    }
    alpha.swap(next);
  }
  for (size_t y = 0; y < L; ++y) alpha[y] += model.end(y);
  return LogSumExp(alpha);
}

double SequenceLogLikelihood(const EmissionTable &emissions,
                             std::span<const Label> gold,
                             const CrfModel &model) {
  double score = PathScore(emissions, model, gold);
  return score - LogPartition(emissions, model);
}

EmissionTable Marginals(const EmissionTable &emissions, const CrfModel &model) {
  ForwardBackward fb = RunForwardBackward(emissions, model);
  EmissionTable p(emissions.length(), model.num_labels());
  for (size_t t = 0; t < emissions.length(); ++t) {
    for (size_t y = 0; y < model.num_labels(); ++y) {
      p(t, y) = std::exp(fb.alpha(t, y) + fb.beta(t, y) - fb.log_partition);
    }
  }
  return p;
}

std::vector<Label> ViterbiDecode(const EmissionTable &emissions,
                                 const CrfModel &model) {
  CheckShape(emissions, model);
  const size_t T = emissions.length();
  const size_t L = model.num_labels();
  std::vector<double> delta(L), next(L);
  std::vector<Label> back(T * L, 0);

  for (size_t y = 0; y < L; ++y) delta[y] = model.start(y) + emissions(0, y);
  for (size_t t = 1; t < T; ++t) {
    for (size_t y = 0; y < L; ++y) {
      Label best = 0;
      double best_score = delta[0] + model.transition(0, y);
      for (size_t p = 1; p < L; ++p) {
        double s = delta[p] + model.transition(p, y);
        if (s > best_score) {
          best_score = s;
          best = static_cast<Label>(p);
        }
      }
      next[y] = best_score + emissions(t, y);
      back[t * L + y] = best;
    }
    delta.swap(next);
  }

  Label last = 0;
  double best_score = delta[0] + model.end(0);
  for (size_t y = 1; y < L; ++y) {
    double s = delta[y] + model.end(y);
    if (s > best_score) {
      best_score = s;
      last = static_cast<Label>(y);
    }
  }
  std::vector<Label> path(T);
  path[T - 1] = last;
  for (size_t t = T - 1; t > 0; --t) path[t - 1] = back[t * L + path[t]];
  return path;
}

void ForceOutside(EmissionTable &emissions, const std::vector<bool> &eligible,
                  Label outside) {
  if (eligible.size() != emissions.length()) {
    throw IntegrityError("eligibility mask length " +
                         std::to_string(eligible.size()) +
                         " != report length " +
                         std::to_string(emissions.length()));
  }
  for (size_t t = 0; t < emissions.length(); ++t) {
    if (eligible[t]) continue;
    for (size_t y = 0; y < emissions.num_labels(); ++y) {
      emissions(t, y) = static_cast<Label>(y) == outside ? kForcedScore
                                                         : -kForcedScore;
    }
  }
}

}  // namespace initdet
