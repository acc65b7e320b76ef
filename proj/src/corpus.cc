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

#include "initdet/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "initdet/error.h"
#include "json.hpp"

namespace initdet {

using nlohmann::json;

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
    case Split::kUnsplit: return "unsplit";
  }
  return "unsplit";
}

std::optional<Split> ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev" || name == "develop") return Split::kDev;
  if (name == "test") return Split::kTest;
  if (name == "unsplit") return Split::kUnsplit;
  return std::nullopt;
}

size_t Corpus::num_sentences() const {
  size_t n = 0;
  for (const Report &r : reports) n += r.size();
  return n;
}

const Report *Corpus::Find(std::string_view report_id) const {
  for (const Report &r : reports) {
    if (r.id == report_id) return &r;
  }
  return nullptr;
}

namespace {

void ValidateReport(const Report &report) {
  // Last index at which each initiative id was seen.
  std::unordered_map<std::string, size_t> last_seen;
  for (size_t i = 0; i < report.size(); ++i) {
    const Sentence &s = report.sentences[i];
    if (s.index != i) {
      throw IntegrityError("report " + report.id + ": expected index " +
                           std::to_string(i) + ", got " +
                           std::to_string(s.index));
    }
    if (s.report_id != report.id) {
      throw IntegrityError("sentence " + std::to_string(i) + " of report " +
                           report.id + " carries report_id " + s.report_id);
    }
    if (!s.initiative_id) continue;
    auto it = last_seen.find(*s.initiative_id);
    if (it != last_seen.end() && it->second + 1 != i) {
      throw IntegrityError("report " + report.id + ": initiative " +
                           *s.initiative_id + " is not contiguous (gap before "
                           "sentence " + std::to_string(i) + ")");
    }
    last_seen[*s.initiative_id] = i;
  }
}

std::string RequireString(const json &record, const char *key, size_t line) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw ParseError(std::string("field '") + key + "' must be a string", line);
  }
  return it->get<std::string>();
}

std::optional<std::string> OptionalString(const json &record, const char *key,
                                          size_t line) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw ParseError(std::string("field '") + key + "' must be a string or null",
                     line);
  }
  return it->get<std::string>();
}

}  // namespace

void Corpus::Validate() const {
  std::unordered_map<std::string_view, int> ids;
  for (const Report &r : reports) {
    if (!ids.emplace(r.id, 0).second) {
      throw IntegrityError("duplicate report " + r.id);
    }
    ValidateReport(r);
  }
}

Corpus ParseCorpus(std::istream &in, Split split) {
  Corpus corpus;
  corpus.split = split;
  std::unordered_map<std::string, size_t> slot;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!record.is_object()) throw ParseError("record must be an object", line_no);

    Sentence s;
    s.report_id = RequireString(record, "report_id", line_no);
    auto idx = record.find("index");
    if (idx == record.end() || !idx->is_number_integer() ||
        idx->get<long long>() < 0) {
      throw ParseError("field 'index' must be a non-negative integer", line_no);
    }
    s.index = idx->get<size_t>();
    s.text = RequireString(record, "text", line_no);
    s.initiative_id = OptionalString(record, "initiative_id", line_no);
    if (s.initiative_id && s.initiative_id->empty()) {
      throw ParseError("field 'initiative_id' must not be empty", line_no);
    }
    s.sdg = OptionalString(record, "sdg", line_no);

    auto [it, inserted] = slot.emplace(s.report_id, corpus.reports.size());
    if (inserted) corpus.reports.push_back(Report{s.report_id, {}});
    Report &report = corpus.reports[it->second];
    if (s.index != report.size()) {
      throw IntegrityError("line " + std::to_string(line_no) + ": report " +
                           s.report_id + " expected index " +
                           std::to_string(report.size()) + ", got " +
                           std::to_string(s.index));
    }
    report.sentences.push_back(std::move(s));
  }
  for (const Report &r : corpus.reports) ValidateReport(r);
  return corpus;
}

Corpus LoadCorpus(const std::string &path, Split split) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open corpus file " + path);
  return ParseCorpus(in, split);
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  for (const Report &r : corpus.reports) {
    for (const Sentence &s : r.sentences) {
      json record = {{"report_id", s.report_id},
                     {"index", s.index},
                     {"text", s.text},
                     {"initiative_id", nullptr}};
      if (s.initiative_id) record["initiative_id"] = *s.initiative_id;
      if (s.sdg) record["sdg"] = *s.sdg;
      out << record.dump() << '\n';
    }
  }
}

std::vector<std::pair<std::string, Split>> LoadManifest(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open manifest " + path);
  std::vector<std::pair<std::string, Split>> entries;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string file, split_name, extra;
    if (!(fields >> file)) continue;
    if (!(fields >> split_name) || (fields >> extra)) {
      throw ParseError("expected '<path> <split>'", line_no);
    }
    auto split = ParseSplit(split_name);
    if (!split) throw ParseError("unknown split '" + split_name + "'", line_no);
    entries.emplace_back(file, *split);
  }
  return entries;
}

std::vector<InitiativeSpan> ExtractSpans(const Report &report) {
  std::vector<InitiativeSpan> spans;
  for (size_t i = 0; i < report.size(); ++i) {
    const auto &id = report.sentences[i].initiative_id;
    if (!id) continue;
    if (!spans.empty() && spans.back().initiative_id == *id &&
        spans.back().end + 1 == i) {
      spans.back().end = i;
    } else {
      spans.push_back(InitiativeSpan{report.id, *id, i, i});
    }
  }
  return spans;
}

std::vector<InitiativeSpan> ExtractSpans(const Corpus &corpus) {
  std::vector<InitiativeSpan> spans;
  for (const Report &r : corpus.reports) {
    auto report_spans = ExtractSpans(r);
    spans.insert(spans.end(), report_spans.begin(), report_spans.end());
  }
  return spans;
}

CorpusStats ComputeStats(const Corpus &corpus) {
  CorpusStats stats;
  stats.n_reports = corpus.reports.size();
  size_t tagged = 0;
  for (const Report &r : corpus.reports) {
    stats.n_sentences += r.size();
    stats.n_initiatives += ExtractSpans(r).size();
    for (const Sentence &s : r.sentences) tagged += s.initiative_id ? 1 : 0;
  }
  if (stats.n_sentences == 0) {
    stats.empty_warning = true;
  } else {
    stats.pct_sentences_in_initiatives =
        100.0 * static_cast<double>(tagged) /
        static_cast<double>(stats.n_sentences);
  }
  return stats;
}

void SortAndValidateSpans(std::vector<InitiativeSpan> &spans) {
  std::unordered_map<std::string, size_t> order;
  for (const auto &s : spans) order.emplace(s.report_id, order.size());
  std::stable_sort(spans.begin(), spans.end(),
                   [&](const InitiativeSpan &a, const InitiativeSpan &b) {
                     size_t ra = order[a.report_id], rb = order[b.report_id];
                     if (ra != rb) return ra < rb;
                     if (a.start != b.start) return a.start < b.start;
                     return a.end < b.end;
                   });
  for (size_t i = 0; i < spans.size(); ++i) {
    const InitiativeSpan &s = spans[i];
    if (s.start > s.end) {
      throw IntegrityError("span " + s.report_id + " [" +
                           std::to_string(s.start) + "," +
                           std::to_string(s.end) + "] has start > end");
    }
    if (i > 0 && spans[i - 1].report_id == s.report_id &&
        spans[i - 1].Overlaps(s)) {
      throw IntegrityError("overlapping spans in report " + s.report_id +
                           " at sentence " + std::to_string(s.start));
    }
  }
}

}  // namespace initdet
