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

#include "initdet/aggregate.h"

namespace initdet {
namespace {

InitiativeSpan MakeSpan(const LabelSeq &labels, size_t start, size_t end) {
  return InitiativeSpan{labels.report_id,
                        labels.report_id + ":" + std::to_string(start), start,
                        end};
}

}  // namespace

std::vector<InitiativeSpan> AggregateBinary(const LabelSeq &labels) {
  std::vector<InitiativeSpan> spans;
  const auto &y = labels.labels;
  size_t i = 0;
  while (i < y.size()) {
    if (y[i] == kNo) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < y.size() && y[j + 1] != kNo) ++j;
    spans.push_back(MakeSpan(labels, i, j));
    i = j + 1;
  }
  return spans;
}

std::vector<InitiativeSpan> AggregateIobes(const LabelSeq &labels) {
  std::vector<InitiativeSpan> spans;
  const auto &y = labels.labels;
  size_t i = 0;
  while (i < y.size()) {
    if (y[i] == kO) {
      ++i;
      continue;
    }
    if (y[i] == kB) {
      size_t j = i + 1;
      while (j < y.size() && y[j] == kI) ++j;
      if (j < y.size() && y[j] == kE && j - i + 1 <= kMaxStructureLength) {
        spans.push_back(MakeSpan(labels, i, j));
        i = j + 1;
        continue;
      }
    }
    // S, or anything not consumed by a valid structure.
    spans.push_back(MakeSpan(labels, i, i));
    ++i;
  }
  return spans;
}

std::vector<InitiativeSpan> Aggregate(const LabelSeq &labels) {
  return labels.schema == Schema::kBinary ? AggregateBinary(labels)
                                          : AggregateIobes(labels);
}

}  // namespace initdet
