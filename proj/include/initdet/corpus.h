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

#ifndef INITDET_CORPUS_H_
#define INITDET_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace initdet {

// One segmented sentence of a report.
struct Sentence {
  std::string report_id;
  size_t index = 0;
  std::string text;
  std::optional<std::string> initiative_id;
  // Opaque pass-through (e.g. SDG annotations); never interpreted.
  std::optional<std::string> sdg;
};

// Contiguous, inclusive range of sentence indices within one report.
struct InitiativeSpan {
  std::string report_id;
  std::string initiative_id;
  size_t start = 0;
  size_t end = 0;

  size_t length() const { return end - start + 1; }
  bool Overlaps(const InitiativeSpan &other) const {
    return start <= other.end && other.start <= end;
  }
  // Identity is (report, start, end); the id is a label, not a key.
  friend bool operator==(const InitiativeSpan &a, const InitiativeSpan &b) {
    return a.report_id == b.report_id && a.start == b.start && a.end == b.end;
  }
};

struct Report {
  std::string id;
  std::vector<Sentence> sentences;

  size_t size() const { return sentences.size(); }
};

enum class Split { kTrain, kDev, kTest, kUnsplit };

std::string_view SplitName(Split split);
// Accepts train/dev/test/unsplit (also "develop" for dev).
std::optional<Split> ParseSplit(std::string_view name);

struct Corpus {
  std::vector<Report> reports;
  Split split = Split::kUnsplit;

  size_t num_sentences() const;
  const Report *Find(std::string_view report_id) const;

  // Throws IntegrityError on dense-index or contiguity violations.
  void Validate() const;
};

struct CorpusStats {
  size_t n_reports = 0;
  size_t n_sentences = 0;
  size_t n_initiatives = 0;
  double pct_sentences_in_initiatives = 0.0;
  // Set when the corpus has no sentences and the percentage is undefined.
  bool empty_warning = false;
};

// Parses line-delimited JSON sentence records. Records of one report must
// carry indices 0, 1, 2, ... in file order; reports may interleave and keep
// their first-appearance order. Blank lines are skipped.
Corpus ParseCorpus(std::istream &in, Split split = Split::kUnsplit);
Corpus LoadCorpus(const std::string &path, Split split = Split::kUnsplit);
void WriteCorpus(const Corpus &corpus, std::ostream &out);

// Manifest lines: "<path> <split>". '#' starts a comment.
std::vector<std::pair<std::string, Split>> LoadManifest(const std::string &path);

// Gold spans of one report, sorted by start.
std::vector<InitiativeSpan> ExtractSpans(const Report &report);
// Gold spans of all reports, grouped in report order.
std::vector<InitiativeSpan> ExtractSpans(const Corpus &corpus);

CorpusStats ComputeStats(const Corpus &corpus);

// Sorts spans by (report, start, end) and throws IntegrityError if any pair
// within a report overlaps or start > end.
void SortAndValidateSpans(std::vector<InitiativeSpan> &spans);

}  // namespace initdet

#endif  // INITDET_CORPUS_H_
