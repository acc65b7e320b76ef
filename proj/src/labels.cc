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

#include "initdet/labels.h"

#include <algorithm>

#include "initdet/error.h"

namespace initdet {

namespace {
constexpr std::string_view kBinaryNames[] = {"0", "1"};
constexpr std::string_view kIobesNames[] = {"O", "S", "B", "I", "E"};

void CheckSpans(std::span<const InitiativeSpan> spans, size_t report_length) {
  std::vector<const InitiativeSpan *> sorted;
  for (const auto &s : spans) {
    if (s.start > s.end || s.end >= report_length) {
      throw IntegrityError("span [" + std::to_string(s.start) + "," +
                           std::to_string(s.end) + "] out of range for report " +
                           s.report_id + " of length " +
                           std::to_string(report_length));
    }
    if (!spans.empty() && s.report_id != spans.front().report_id) {
      throw IntegrityError("spans from different reports mixed");
    }
    sorted.push_back(&s);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](auto *a, auto *b) { return a->start < b->start; });
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1]->Overlaps(*sorted[i])) {
      throw IntegrityError("overlapping spans in report " +
                           sorted[i]->report_id);
    }
  }
}

std::string ReportIdOf(std::span<const InitiativeSpan> spans) {
  return spans.empty() ? std::string() : spans.front().report_id;
}

}  // namespace

std::string_view LabelSet::Name(Label label) const {
  if (label < 0 || static_cast<size_t>(label) >= size()) return "?";
  return schema_ == Schema::kBinary ? kBinaryNames[label] : kIobesNames[label];
}

std::optional<Label> LabelSet::Parse(std::string_view name) const {
  for (size_t i = 0; i < size(); ++i) {
    if (Name(static_cast<Label>(i)) == name) return static_cast<Label>(i);
  }
  return std::nullopt;
}

std::string_view LabelSet::SchemaName() const {
  return schema_ == Schema::kBinary ? "binary" : "iobes";
}

std::optional<Schema> ParseSchema(std::string_view name) {
  if (name == "binary" || name == "BINARY") return Schema::kBinary;
  if (name == "iobes" || name == "IOBES") return Schema::kIobes;
  return std::nullopt;
}

LabelSeq DeriveBinary(std::span<const InitiativeSpan> spans,
                      size_t report_length) {
  CheckSpans(spans, report_length);
  LabelSeq seq{ReportIdOf(spans), Schema::kBinary,
               std::vector<Label>(report_length, kNo)};
  for (const auto &s : spans) {
    std::fill(seq.labels.begin() + s.start, seq.labels.begin() + s.end + 1,
              kYes);
  }
  return seq;
}

LabelSeq DeriveIobes(std::span<const InitiativeSpan> spans,
                     size_t report_length) {
  CheckSpans(spans, report_length);
  LabelSeq seq{ReportIdOf(spans), Schema::kIobes,
               std::vector<Label>(report_length, kO)};
  for (const auto &s : spans) {
    if (s.start == s.end) {
      seq.labels[s.start] = kS;
      continue;
    }
    seq.labels[s.start] = kB;
    for (size_t i = s.start + 1; i < s.end; ++i) seq.labels[i] = kI;
    seq.labels[s.end] = kE;
  }
  return seq;
}

LabelSeq DeriveLabels(std::span<const InitiativeSpan> spans,
                      size_t report_length, Schema schema) {
  return schema == Schema::kBinary ? DeriveBinary(spans, report_length)
                                   : DeriveIobes(spans, report_length);
}

std::vector<LabelSeq> DeriveCorpusLabels(const Corpus &corpus, Schema schema) {
  std::vector<LabelSeq> out;
  out.reserve(corpus.reports.size());
  for (const Report &r : corpus.reports) {
    auto spans = ExtractSpans(r);
    LabelSeq seq = DeriveLabels(spans, r.size(), schema);
    seq.report_id = r.id;
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace initdet
