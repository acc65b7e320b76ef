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

#ifndef INITDET_LABELS_H_
#define INITDET_LABELS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "initdet/corpus.h"

namespace initdet {

enum class Schema { kBinary, kIobes };

// Canonical label indices. They are part of the model and emissions file
// formats and must never be reordered.
enum BinaryLabel : int { kNo = 0, kYes = 1 };
enum IobesLabel : int { kO = 0, kS = 1, kB = 2, kI = 3, kE = 4 };

using Label = int;

class LabelSet {
 public:
  explicit LabelSet(Schema schema) : schema_(schema) {}

  Schema schema() const { return schema_; }
  size_t size() const { return schema_ == Schema::kBinary ? 2 : 5; }
  // The non-initiative label (0 or O); index 0 in both schemas.
  Label outside() const { return 0; }

  std::string_view Name(Label label) const;
  std::optional<Label> Parse(std::string_view name) const;
  std::string_view SchemaName() const;

  friend bool operator==(const LabelSet &, const LabelSet &) = default;

 private:
  Schema schema_;
};

std::optional<Schema> ParseSchema(std::string_view name);

struct LabelSeq {
  std::string report_id;
  Schema schema = Schema::kIobes;
  std::vector<Label> labels;

  friend bool operator==(const LabelSeq &, const LabelSeq &) = default;
};

// Spans must belong to one report, lie within [0, report_length) and not
// overlap; otherwise IntegrityError.
LabelSeq DeriveBinary(std::span<const InitiativeSpan> spans,
                      size_t report_length);
LabelSeq DeriveIobes(std::span<const InitiativeSpan> spans,
                     size_t report_length);
LabelSeq DeriveLabels(std::span<const InitiativeSpan> spans,
                      size_t report_length, Schema schema);

// Gold label sequences for every report, in report order.
std::vector<LabelSeq> DeriveCorpusLabels(const Corpus &corpus, Schema schema);

}  // namespace initdet

#endif  // INITDET_LABELS_H_
