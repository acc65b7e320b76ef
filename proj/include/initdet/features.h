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

#ifndef INITDET_FEATURES_H_
#define INITDET_FEATURES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "initdet/corpus.h"

namespace initdet {

struct FeatureConfig {
  // Sentences of context on each side of the target.
  int window = 1;
  // Number of hash buckets; must be a power of two >= 2.
  uint32_t hash_dim = 1u << 18;
  bool lowercase = true;

  void Validate() const;
  friend bool operator==(const FeatureConfig &, const FeatureConfig &) = default;
};

struct Feature {
  uint32_t id = 0;
  double value = 0.0;

  friend bool operator==(const Feature &, const Feature &) = default;
};

// Sorted by id, ids unique.
using FeatureVector = std::vector<Feature>;

// Features of sentence `index`: every token of sentence index+d, for each
// offset d in [-window, window] that exists, hashed together with d; a bias
// feature; and a bucket of the target's token count. Features are binary:
// repeated or colliding keys collapse to one entry of value 1.
FeatureVector ExtractFeatures(std::span<const Sentence> report, size_t index,
                              const FeatureConfig &cfg);

// Features for every sentence of the report.
std::vector<FeatureVector> ExtractReportFeatures(const Report &report,
                                                 const FeatureConfig &cfg);

}  // namespace initdet

#endif  // INITDET_FEATURES_H_
