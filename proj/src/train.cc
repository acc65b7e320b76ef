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

#include "initdet/train.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <unordered_map>

#include "initdet/error.h"

namespace initdet {
namespace {

using ObjectiveFn = Objective (*)(const CrfModel &,
                                  std::span<const TrainingSequence>,
                                  std::span<const size_t>, double);

EpochRecord Evaluate(int epoch, const CrfModel &model,
                     std::span<const TrainingSequence> train,
                     std::span<const TrainingSequence> dev,
                     const std::vector<size_t> &all, const CrfTrainConfig &cfg,
                     ObjectiveFn objective) {
  Objective full = objective(model, train, all, cfg.l2_lambda);
  EpochRecord rec;
  rec.epoch = epoch;
  rec.train_objective = full.value;
  rec.train_log_likelihood = full.mean_log_likelihood;
  if (!dev.empty()) rec.dev_log_likelihood = MeanLogLikelihood(model, dev);
  if (!std::isfinite(rec.train_objective) ||
      (rec.dev_log_likelihood && !std::isfinite(*rec.dev_log_likelihood))) {
    throw NumericalError("non-finite objective after epoch " +
                         std::to_string(epoch));
  }
  return rec;
}

const LabelSeq &FindLabels(
    const std::unordered_map<std::string_view, const LabelSeq *> &by_id,
    const std::string &report_id, size_t length) {
  auto it = by_id.find(report_id);
  if (it == by_id.end()) {
    throw IntegrityError("no labels for report " + report_id);
  }
  if (it->second->labels.size() != length) {
    throw IntegrityError("report " + report_id + " has " +
                         std::to_string(length) + " sentences but " +
                         std::to_string(it->second->labels.size()) + " labels");
  }
  return *it->second;
}

std::unordered_map<std::string_view, const LabelSeq *> IndexLabels(
    std::span<const LabelSeq> labels) {
  std::unordered_map<std::string_view, const LabelSeq *> by_id;
  for (const auto &seq : labels) by_id[seq.report_id] = &seq;
  return by_id;
}

template <typename Fn>
void ForEachReport(size_t n, bool parallel, Fn fn) {
  std::exception_ptr failure;
  #pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      fn(static_cast<size_t>(i));
    } catch (...) {
      #pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void CrfTrainConfig::Validate() const {
  if (!(learning_rate > 0.0)) throw UsageError("learning_rate must be positive");
  if (!(l2_lambda >= 0.0)) throw UsageError("l2_lambda must be non-negative");
  if (max_epochs < 0) throw UsageError("max_epochs must be non-negative");
  if (patience <= 0) throw UsageError("patience must be positive");
  if (batch_size == 0) throw UsageError("batch_size must be positive");
}

double MeanLogLikelihood(const CrfModel &model,
                         std::span<const TrainingSequence> data) {
  if (data.empty()) return 0.0;
  double sum = 0.0;
  for (const auto &seq : data) {
    sum += SequenceLogLikelihood(SequenceEmissions(model, seq), seq.gold, model);
  }
  return sum / static_cast<double>(data.size());
}

TrainResult Train(CrfModel init, std::span<const TrainingSequence> train,
                  std::span<const TrainingSequence> dev,
                  const CrfTrainConfig &cfg) {
  cfg.Validate();
  if (train.empty()) throw UsageError("no training reports");
  ObjectiveFn objective =
      cfg.parallel ? &BatchObjectiveParallel : &BatchObjectiveSerial;

  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  const std::vector<size_t> all = order;

  TrainResult result{init, {}, 0};
  CrfModel model = std::move(init);
  result.history.push_back(Evaluate(0, model, train, dev, all, cfg, objective));
  std::optional<double> best_dev = result.history.back().dev_log_likelihood;
  int since_best = 0;

  std::mt19937_64 rng(cfg.seed);
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      size_t end = std::min(order.size(), begin + cfg.batch_size);
      std::span<const size_t> batch(order.data() + begin, end - begin);
      Objective obj = objective(model, train, batch, cfg.l2_lambda);
      if (!std::isfinite(obj.value)) {
        throw NumericalError("non-finite batch objective in epoch " +
                             std::to_string(epoch));
      }
      auto params = model.params();
      for (size_t k = 0; k < params.size(); ++k) {
        params[k] += cfg.learning_rate * obj.gradient[k];
      }
    }
    if (!model.AllFinite()) {
      throw NumericalError("non-finite parameters after epoch " +
                           std::to_string(epoch));
    }

    const EpochRecord &rec = result.history.emplace_back(
        Evaluate(epoch, model, train, dev, all, cfg, objective));
    if (!rec.dev_log_likelihood) {
      result.model = model;
      result.best_epoch = epoch;
      continue;
    }
    if (*rec.dev_log_likelihood > *best_dev) {
      best_dev = rec.dev_log_likelihood;
      result.model = model;
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
  return result;
}

std::vector<TrainingSequence> BuildFeatureSequences(
    const Corpus &corpus, std::span<const LabelSeq> labels,
    const FeatureConfig &cfg) {
  cfg.Validate();
  auto by_id = IndexLabels(labels);
  std::vector<TrainingSequence> out(corpus.reports.size());
  for (size_t r = 0; r < corpus.reports.size(); ++r) {
    const Report &report = corpus.reports[r];
    out[r].report_id = report.id;
    out[r].gold = FindLabels(by_id, report.id, report.size()).labels;
  }
  ForEachReport(corpus.reports.size(), true, [&](size_t r) {
    out[r].features = ExtractReportFeatures(corpus.reports[r], cfg);
  });
  return out;
}

std::vector<TrainingSequence> BuildEmissionSequences(
    const EmissionSet &emissions, std::span<const LabelSeq> labels) {
  auto by_id = IndexLabels(labels);
  std::vector<TrainingSequence> out;
  for (const auto &[id, table] : emissions) {
    TrainingSequence seq;
    seq.report_id = id;
    seq.gold = FindLabels(by_id, id, table.length()).labels;
    seq.emissions = table;
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<LabelSeq> Predict(const Corpus &corpus, const CrfModel &model,
                              const EligibilityMask &mask, Schema mode,
                              bool parallel) {
  if (model.label_set().schema() != mode) {
    throw UsageError("model label set does not match prediction mode");
  }
  if (!model.uses_features()) {
    throw UsageError("model consumes external emissions; use decode");
  }
  if (mask.size() != corpus.reports.size()) {
    throw IntegrityError("eligibility mask does not cover the corpus");
  }
  std::vector<LabelSeq> out(corpus.reports.size());
  ForEachReport(corpus.reports.size(), parallel, [&](size_t r) {
    const Report &report = corpus.reports[r];
    LabelSeq &seq = out[r];
    seq.report_id = report.id;
    seq.schema = mode;
    if (report.size() == 0) return;
    EmissionTable e =
        model.Emissions(ExtractReportFeatures(report, model.feature_config()));
    ForceOutside(e, mask[r], model.label_set().outside());
    seq.labels = ViterbiDecode(e, model);
  });
  return out;
}

std::vector<LabelSeq> DecodeEmissions(const EmissionSet &emissions,
                                      const CrfModel &model,
                                      const EligibilitySet &eligible,
                                      bool parallel) {
  std::vector<const std::pair<const std::string, EmissionTable> *> items;
  for (const auto &item : emissions) items.push_back(&item);
  std::vector<LabelSeq> out(items.size());
  ForEachReport(items.size(), parallel, [&](size_t r) {
    const auto &[id, table] = *items[r];
    EmissionTable e = table;
    if (auto it = eligible.find(id); it != eligible.end()) {
      ForceOutside(e, it->second, model.label_set().outside());
    }
    out[r].report_id = id;
    out[r].schema = model.label_set().schema();
    if (!e.empty()) out[r].labels = ViterbiDecode(e, model);
  });
  return out;
}

}  // namespace initdet
