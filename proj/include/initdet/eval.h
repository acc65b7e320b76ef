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

#ifndef INITDET_EVAL_H_
#define INITDET_EVAL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "initdet/corpus.h"

namespace initdet {

enum class MatchRegime { kMinMatch, kExactMatch };

std::string_view RegimeName(MatchRegime regime);

struct MatchReport {
  MatchRegime regime = MatchRegime::kExactMatch;
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // Fills precision/recall/f1 from the counts; each is 0 when undefined.
  static MatchReport FromCounts(MatchRegime regime, size_t tp, size_t fp,
                                size_t fn);
};

// Both functions group spans by report_id and micro-average: counts are
// summed over reports before precision and recall are taken.

// A prediction is a hit iff some gold span has the same (start, end).
MatchReport MatchExact(std::span<const InitiativeSpan> pred,
                       std::span<const InitiativeSpan> gold);

// One-to-one: predictions in (start, end) order each claim the earliest
// starting unclaimed gold span they share a sentence with.
MatchReport MatchMin(std::span<const InitiativeSpan> pred,
                     std::span<const InitiativeSpan> gold);

MatchReport Match(std::span<const InitiativeSpan> pred,
                  std::span<const InitiativeSpan> gold, MatchRegime regime);

// Initiative counts from a double-annotation study.
struct AgreementCounts {
  std::string name;
  size_t n1 = 0;  // found by annotator 1
  size_t n2 = 0;  // found by annotator 2
  size_t nm = 0;  // found by both
};

struct AgreementResult {
  double min_pct = 0.0;  // nm / (n1 + n2 - nm), as a percentage
  double max_pct = 0.0;  // nm / min(n1, n2), as a percentage
};

// Throws UsageError for zero counts or nm > min(n1, n2).
AgreementResult Agreement(const AgreementCounts &counts);

// Unweighted mean of the per-row percentages.
AgreementResult MeanAgreement(std::span<const AgreementCounts> rows);

}  // namespace initdet

#endif  // INITDET_EVAL_H_
