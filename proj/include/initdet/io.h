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

#ifndef INITDET_IO_H_
#define INITDET_IO_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "initdet/corpus.h"
#include "initdet/crf.h"
#include "initdet/eval.h"
#include "initdet/labels.h"
#include "initdet/train.h"

namespace initdet {

// All record files are line-delimited JSON, one object per line.
//
//   labels     {"report_id": str, "index": int, "label": "O"|"S"|...|"0"|"1"}
//   spans      {"report_id": str, "start": int, "end": int[, "initiative_id": str]}
//   emissions  {"report_id": str, "index": int, "scores": [L numbers]}
//
// The schema of a labels file is inferred from its alphabet; mixing the
// binary and IOBES alphabets is a parse error.

void WriteLabels(std::span<const LabelSeq> labels, std::ostream &out);
std::vector<LabelSeq> ReadLabels(std::istream &in);

void WriteSpans(std::span<const InitiativeSpan> spans, std::ostream &out);
// Sorted and validated (no overlaps within a report).
std::vector<InitiativeSpan> ReadSpans(std::istream &in);

struct EmissionFile {
  EmissionSet emissions;
  // Sentences without a record are ineligible; their rows are zero.
  EligibilitySet eligible;
};

void WriteEmissions(const EmissionSet &emissions, std::ostream &out);
// With a corpus, report lengths come from it (reports absent from the file
// become fully ineligible); otherwise a report ends at its largest index.
EmissionFile ReadEmissions(std::istream &in, size_t num_labels,
                           const Corpus *corpus = nullptr);

// Model file: one JSON document with format tag and version, the label set,
// the feature configuration (null for emission models), dense transition,
// start and end arrays, and non-zero weights as [feature, label, value].
inline constexpr int kModelFormatVersion = 1;
void SaveModel(const CrfModel &model, std::ostream &out);
CrfModel LoadModel(std::istream &in);
void SaveModelFile(const CrfModel &model, const std::string &path);
CrfModel LoadModelFile(const std::string &path);

// Agreement rows: "name,n1,n2,nm" or whitespace separated; a header line
// whose count fields are not numeric is skipped, '#' starts a comment.
std::vector<AgreementCounts> ReadAgreementRows(std::istream &in);

}  // namespace initdet

#endif  // INITDET_IO_H_
