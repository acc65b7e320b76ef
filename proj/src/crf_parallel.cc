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

#include "initdet/crf_parallel.h"

#include <cmath>
#include <exception>

#include "initdet/error.h"

namespace initdet {
namespace {

// Folds per-sequence statistics into the batch objective in batch order.
Objective Reduce(const CrfModel &model, std::span<const TrainingSequence> data,
                 std::span<const size_t> batch,
                 const std::vector<SequenceStats> &stats, double l2) {
  const size_t L = model.num_labels();
  Objective obj;
  obj.gradient.assign(model.num_params(), 0.0);
  double ll = 0.0;
  for (size_t b = 0; b < batch.size(); ++b) {
    const SequenceStats &s = stats[b];
    ll += s.log_likelihood;
    for (size_t k = 0; k < s.structural_grad.size(); ++k) {
      obj.gradient[k] += s.structural_grad[k];
    }
    if (!model.uses_features()) continue;
    const TrainingSequence &seq = data[batch[b]];
    for (size_t t = 0; t < seq.length(); ++t) {
      auto g = s.emission_grad.row(t);
      for (const Feature &f : seq.features[t]) {
        double *w = obj.gradient.data() + model.weight_index(f.id, 0);
        for (size_t y = 0; y < L; ++y) w[y] += f.value * g[y];
      }
    }
  }

  const double inv_n = batch.empty() ? 0.0 : 1.0 / static_cast<double>(batch.size());
  auto params = model.params();
  double sq = 0.0;
  for (size_t k = 0; k < obj.gradient.size(); ++k) {
    obj.gradient[k] = obj.gradient[k] * inv_n - l2 * params[k];
    sq += params[k] * params[k];
  }
  obj.mean_log_likelihood = ll * inv_n;
  obj.value = obj.mean_log_likelihood - 0.5 * l2 * sq;
  return obj;
}

void CheckBatch(std::span<const TrainingSequence> data,
                std::span<const size_t> batch) {
  if (batch.empty()) throw UsageError("empty training batch");
  for (size_t b : batch) {
    if (b >= data.size()) throw UsageError("batch index out of range");
  }
}

}  // namespace

EmissionTable SequenceEmissions(const CrfModel &model,
                                const TrainingSequence &seq) {
  if (model.uses_features()) {
    if (seq.features.size() != seq.length()) {
      throw IntegrityError("report " + seq.report_id +
                           ": feature rows do not match gold length");
    }
    return model.Emissions(seq.features);
  }
  if (seq.emissions.length() != seq.length()) {
    throw IntegrityError("report " + seq.report_id +
                         ": emission rows do not match gold length");
  }
  return seq.emissions;
}

SequenceStats ComputeSequenceStats(const CrfModel &model,
                                   const TrainingSequence &seq) {
  const EmissionTable emissions = SequenceEmissions(model, seq);
  const ForwardBackward fb = RunForwardBackward(emissions, model);
  const size_t T = emissions.length();
  const size_t L = model.num_labels();
  const double log_z = fb.log_partition;

  SequenceStats s;
  s.log_likelihood = PathScore(emissions, model, seq.gold) - log_z;
  s.structural_grad.assign(model.num_structural_params(), 0.0);
  s.emission_grad = EmissionTable(T, L);

  for (size_t t = 0; t < T; ++t) {
    for (size_t y = 0; y < L; ++y) {
      double p = std::exp(fb.alpha(t, y) + fb.beta(t, y) - log_z);
      s.emission_grad(t, y) = (seq.gold[t] == static_cast<Label>(y) ? 1.0 : 0.0) - p;
    }
  }
  for (size_t y = 0; y < L; ++y) {
    s.structural_grad[model.start_index(y)] = -std::exp(
        fb.alpha(0, y) + fb.beta(0, y) - log_z);
    s.structural_grad[model.end_index(y)] = -std::exp(
        fb.alpha(T - 1, y) + fb.beta(T - 1, y) - log_z);
  }
  s.structural_grad[model.start_index(seq.gold.front())] += 1.0;
  s.structural_grad[model.end_index(seq.gold.back())] += 1.0;

  for (size_t t = 1; t < T; ++t) {
    s.structural_grad[model.transition_index(seq.gold[t - 1], seq.gold[t])] += 1.0;
    for (size_t a = 0; a < L; ++a) {
      for (size_t b = 0; b < L; ++b) {
        double p = std::exp(fb.alpha(t - 1, a) + model.transition(a, b) +
                            emissions(t, b) + fb.beta(t, b) - log_z);
        s.structural_grad[model.transition_index(a, b)] -= p;
      }
    }
  }
  return s;
}

Objective BatchObjectiveSerial(const CrfModel &model,
                               std::span<const TrainingSequence> data,
                               std::span<const size_t> batch, double l2) {
  CheckBatch(data, batch);
  std::vector<SequenceStats> stats;
  stats.reserve(batch.size());
  for (size_t b : batch) stats.push_back(ComputeSequenceStats(model, data[b]));
  return Reduce(model, data, batch, stats, l2);
}

Objective BatchObjectiveParallel(const CrfModel &model,
                                 std::span<const TrainingSequence> data,
                                 std::span<const size_t> batch, double l2) {
  CheckBatch(data, batch);
  std::vector<SequenceStats> stats(batch.size());
  const long long n = static_cast<long long>(batch.size());
  // Exceptions must not escape an OpenMP region; capture the first one.
  std::exception_ptr failure;
  #pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      stats[i] = ComputeSequenceStats(model, data[batch[i]]);
    } catch (...) {
      #pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return Reduce(model, data, batch, stats, l2);
}

std::vector<std::vector<Label>> DecodeSerial(
    const CrfModel &model, std::span<const EmissionTable> emissions) {
  std::vector<std::vector<Label>> out;
  out.reserve(emissions.size());
  for (const auto &e : emissions) out.push_back(ViterbiDecode(e, model));
  return out;
}

std::vector<std::vector<Label>> DecodeParallel(
    const CrfModel &model, std::span<const EmissionTable> emissions) {
  std::vector<std::vector<Label>> out(emissions.size());
  const long long n = static_cast<long long>(emissions.size());
  std::exception_ptr failure;
  #pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      out[i] = ViterbiDecode(emissions[i], model);
    } catch (...) {
      #pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace initdet
