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

#ifndef INITDET_AGGREGATE_H_
#define INITDET_AGGREGATE_H_

#include <cstddef>
#include <vector>

#include "initdet/corpus.h"
#include "initdet/labels.h"

namespace initdet {

// Longest predicted structure accepted as one initiative: S, BE, BIE, BIIE,
// BIIIE. Gold spans may be longer.
inline constexpr size_t kMaxStructureLength = 5;

// Maximal runs of 1s become spans.
std::vector<InitiativeSpan> AggregateBinary(const LabelSeq &labels);

// Left-to-right scan. S emits a singleton; B followed by I* and E emits the
// run if its length is <= kMaxStructureLength. Every other non-O label
// (dangling B/I/E, over-long runs) becomes its own singleton.
std::vector<InitiativeSpan> AggregateIobes(const LabelSeq &labels);

// Dispatches on labels.schema.
std::vector<InitiativeSpan> Aggregate(const LabelSeq &labels);

}  // namespace initdet

#endif  // INITDET_AGGREGATE_H_
