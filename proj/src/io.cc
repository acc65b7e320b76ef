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

#include "initdet/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "initdet/error.h"
#include "json.hpp"

namespace initdet {

using nlohmann::json;

namespace {

// Calls fn(record, line_no) for every non-blank line.
template <typename Fn>
void ForEachRecord(std::istream &in, Fn fn) {
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
    fn(record, line_no);
  }
}

std::string GetString(const json &r, const char *key, size_t line) {
  auto it = r.find(key);
  if (it == r.end() || !it->is_string()) {
    throw ParseError(std::string("field '") + key + "' must be a string", line);
  }
  return it->get<std::string>();
}

size_t GetIndex(const json &r, const char *key, size_t line) {
  auto it = r.find(key);
  if (it == r.end() || !it->is_number_integer() || it->get<long long>() < 0) {
    throw ParseError(std::string("field '") + key +
                         "' must be a non-negative integer",
                     line);
  }
  return it->get<size_t>();
}

// Keeps first-appearance order of report ids.
template <typename T>
class OrderedGroups {
 public:
  T &operator[](const std::string &id) {
    auto [it, inserted] = slot_.emplace(id, items_.size());
    if (inserted) items_.emplace_back(id, T{});
    return items_[it->second].second;
  }
  std::vector<std::pair<std::string, T>> &items() { return items_; }

 private:
  std::unordered_map<std::string, size_t> slot_;
  std::vector<std::pair<std::string, T>> items_;
};

json ToJson(const FeatureConfig &cfg) {
  return {{"window", cfg.window},
          {"hash_dim", cfg.hash_dim},
          {"lowercase", cfg.lowercase}};
}

template <typename T>
T Field(const json &doc, const char *key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("model missing '") + key + "'", 0);
  try {
    return it->get<T>();
  } catch (const json::exception &e) {
    throw ParseError(std::string("model field '") + key + "': " + e.what(), 0);
  }
}

}  // namespace

void WriteLabels(std::span<const LabelSeq> labels, std::ostream &out) {
  for (const LabelSeq &seq : labels) {
    LabelSet set(seq.schema);
    for (size_t i = 0; i < seq.labels.size(); ++i) {
      json r = {{"report_id", seq.report_id},
                {"index", i},
                {"label", std::string(set.Name(seq.labels[i]))}};
      out << r.dump() << '\n';
    }
  }
}

std::vector<LabelSeq> ReadLabels(std::istream &in) {
  OrderedGroups<std::vector<std::string>> groups;
  std::optional<Schema> schema;
  const LabelSet binary(Schema::kBinary), iobes(Schema::kIobes);
  ForEachRecord(in, [&](const json &r, size_t line) {
    std::string id = GetString(r, "report_id", line);
    size_t index = GetIndex(r, "index", line);
    std::string label = GetString(r, "label", line);
    std::optional<Schema> s;
    if (binary.Parse(label)) s = Schema::kBinary;
    if (iobes.Parse(label)) s = Schema::kIobes;
    if (!s) throw ParseError("unknown label '" + label + "'", line);
    if (schema && *schema != *s) {
      throw ParseError("labels mix binary and IOBES alphabets", line);
    }
    schema = s;
    auto &list = groups[id];
    if (index != list.size()) {
      throw IntegrityError("line " + std::to_string(line) + ": report " + id +
                           " expected index " + std::to_string(list.size()) +
                           ", got " + std::to_string(index));
    }
    list.push_back(label);
  });
  std::vector<LabelSeq> out;
  const Schema sc = schema.value_or(Schema::kIobes);
  const LabelSet set(sc);
  for (auto &[id, names] : groups.items()) {
    LabelSeq seq{id, sc, {}};
    for (const auto &n : names) seq.labels.push_back(*set.Parse(n));
    out.push_back(std::move(seq));
  }
  return out;
}

void WriteSpans(std::span<const InitiativeSpan> spans, std::ostream &out) {
  for (const auto &s : spans) {
    json r = {{"report_id", s.report_id}, {"start", s.start}, {"end", s.end}};
    if (!s.initiative_id.empty()) r["initiative_id"] = s.initiative_id;
    out << r.dump() << '\n';
  }
}

std::vector<InitiativeSpan> ReadSpans(std::istream &in) {
  std::vector<InitiativeSpan> spans;
  ForEachRecord(in, [&](const json &r, size_t line) {
    InitiativeSpan s;
    s.report_id = GetString(r, "report_id", line);
    s.start = GetIndex(r, "start", line);
    s.end = GetIndex(r, "end", line);
    if (auto it = r.find("initiative_id"); it != r.end() && it->is_string()) {
      s.initiative_id = it->get<std::string>();
    }
    if (s.start > s.end) throw ParseError("span start exceeds end", line);
    spans.push_back(std::move(s));
  });
  SortAndValidateSpans(spans);
  return spans;
}

void WriteEmissions(const EmissionSet &emissions, std::ostream &out) {
  for (const auto &[id, table] : emissions) {
    for (size_t t = 0; t < table.length(); ++t) {
      auto row = table.row(t);
      json r = {{"report_id", id},
                {"index", t},
                {"scores", std::vector<double>(row.begin(), row.end())}};
      out << r.dump() << '\n';
    }
  }
}

EmissionFile ReadEmissions(std::istream &in, size_t num_labels,
                           const Corpus *corpus) {
  std::map<std::string, std::map<size_t, std::vector<double>>> rows;
  ForEachRecord(in, [&](const json &r, size_t line) {
    std::string id = GetString(r, "report_id", line);
    size_t index = GetIndex(r, "index", line);
    auto it = r.find("scores");
    if (it == r.end() || !it->is_array() || it->size() != num_labels) {
      throw ParseError("field 'scores' must hold " + std::to_string(num_labels) +
                           " numbers",
                       line);
    }
    std::vector<double> scores;
    for (const auto &v : *it) {
      if (!v.is_number()) throw ParseError("non-numeric score", line);
      scores.push_back(v.get<double>());
    }
    if (!rows[id].emplace(index, std::move(scores)).second) {
      throw IntegrityError("line " + std::to_string(line) +
                           ": duplicate emission record for " + id + " index " +
                           std::to_string(index));
    }
  });

  std::map<std::string, size_t> lengths;
  if (corpus) {
    for (const Report &rep : corpus->reports) lengths[rep.id] = rep.size();
    for (const auto &[id, by_index] : rows) {
      auto it = lengths.find(id);
      if (it == lengths.end()) {
        throw IntegrityError("emissions for report " + id + " not in corpus");
      }
      if (by_index.rbegin()->first >= it->second) {
        throw IntegrityError("emission index out of range for report " + id);
      }
    }
  } else {
    for (const auto &[id, by_index] : rows) {
      lengths[id] = by_index.rbegin()->first + 1;
    }
  }

  EmissionFile file;
  for (const auto &[id, length] : lengths) {
    EmissionTable table(length, num_labels);
    std::vector<bool> eligible(length, false);
    if (auto it = rows.find(id); it != rows.end()) {
      for (const auto &[index, scores] : it->second) {
        std::copy(scores.begin(), scores.end(), table.row(index).begin());
        eligible[index] = true;
      }
    }
    file.emissions.emplace(id, std::move(table));
    file.eligible.emplace(id, std::move(eligible));
  }
  return file;
}

void SaveModel(const CrfModel &model, std::ostream &out) {
  const size_t L = model.num_labels();
  json doc;
  doc["format"] = "initdet-crf";
  doc["version"] = kModelFormatVersion;
  doc["label_set"] = std::string(model.label_set().SchemaName());
  doc["features"] = model.uses_features() ? ToJson(model.feature_config())
                                          : json(nullptr);
  json transitions = json::array();
  for (size_t a = 0; a < L; ++a) {
    json row = json::array();
    for (size_t b = 0; b < L; ++b) row.push_back(model.transition(a, b));
    transitions.push_back(row);
  }
  doc["transitions"] = transitions;
  json start = json::array(), end = json::array();
  for (size_t y = 0; y < L; ++y) {
    start.push_back(model.start(y));
    end.push_back(model.end(y));
  }
  doc["start"] = start;
  doc["end"] = end;
  json weights = json::array();
  if (model.uses_features()) {
    for (uint32_t f = 0; f < model.feature_config().hash_dim; ++f) {
      for (size_t y = 0; y < L; ++y) {
        double w = model.weight(f, y);
        if (w != 0.0) weights.push_back(json::array({f, y, w}));
      }
    }
  }
  doc["weights"] = weights;
  out << doc.dump() << '\n';
}

CrfModel LoadModel(std::istream &in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("model is not valid JSON: ") + e.what(), 0);
  }
  if (!doc.is_object() || doc.value("format", "") != "initdet-crf") {
    throw ParseError("not an initdet-crf model file", 0);
  }
  if (Field<int>(doc, "version") != kModelFormatVersion) {
    throw ParseError("unsupported model version", 0);
  }
  auto schema = ParseSchema(Field<std::string>(doc, "label_set"));
  if (!schema) throw ParseError("unknown label_set", 0);
  LabelSet labels(*schema);

  std::optional<CrfModel> model;
  const json &features = doc["features"];
  if (features.is_null()) {
    model.emplace(labels);
  } else {
    FeatureConfig cfg;
    cfg.window = Field<int>(features, "window");
    cfg.hash_dim = Field<uint32_t>(features, "hash_dim");
    cfg.lowercase = Field<bool>(features, "lowercase");
    try {
      model.emplace(labels, cfg);
    } catch (const UsageError &e) {
      throw ParseError(std::string("model feature config: ") + e.what(), 0);
    }
  }

  const size_t L = labels.size();
  auto transitions = Field<std::vector<std::vector<double>>>(doc, "transitions");
  auto start = Field<std::vector<double>>(doc, "start");
  auto end = Field<std::vector<double>>(doc, "end");
  if (transitions.size() != L || start.size() != L || end.size() != L) {
    throw IntegrityError("model arrays do not match label set size");
  }
  for (size_t a = 0; a < L; ++a) {
    if (transitions[a].size() != L) {
      throw IntegrityError("model transition row has wrong size");
    }
    for (size_t b = 0; b < L; ++b) model->transition(a, b) = transitions[a][b];
    model->start(a) = start[a];
    model->end(a) = end[a];
  }
  for (const auto &entry : Field<json>(doc, "weights")) {
    if (!model->uses_features()) {
      throw IntegrityError("emission model must not carry feature weights");
    }
    if (!entry.is_array() || entry.size() != 3) {
      throw ParseError("weight entries must be [feature, label, value]", 0);
    }
    auto f = entry[0].get<uint32_t>();
    auto y = entry[1].get<size_t>();
    if (f >= model->feature_config().hash_dim || y >= L) {
      throw IntegrityError("weight index out of range");
    }
    model->weight(f, y) = entry[2].get<double>();
  }
  if (!model->AllFinite()) throw NumericalError("model has non-finite parameters");
  return std::move(*model);
}

void SaveModelFile(const CrfModel &model, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write model file " + path);
  SaveModel(model, out);
}

CrfModel LoadModelFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open model file " + path);
  return LoadModel(in);
}

std::vector<AgreementCounts> ReadAgreementRows(std::istream &in) {
  std::vector<AgreementCounts> rows;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::vector<std::string> fields;
    std::string field;
    const bool csv = line.find(',') != std::string::npos ||
                     line.find('\t') != std::string::npos;
    if (csv) {
      std::istringstream ss(line);
      while (std::getline(ss, field, line.find(',') != std::string::npos ? ',' : '\t')) {
        field.erase(0, field.find_first_not_of(" \r"));
        field.erase(field.find_last_not_of(" \r") + 1);
        fields.push_back(field);
      }
    } else {
      // Whitespace form: the last three fields are counts, anything before
      // them is the (possibly multi-word) name.
      std::istringstream ss(line);
      while (ss >> field) fields.push_back(field);
      if (fields.size() > 4) {
        std::string name = fields[0];
        for (size_t k = 1; k + 3 < fields.size(); ++k) name += " " + fields[k];
        fields.erase(fields.begin(), fields.end() - 3);
        fields.insert(fields.begin(), name);
      }
    }
    if (fields.empty() || (fields.size() == 1 && fields[0].empty())) continue;
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError("expected [name,] n1, n2, nm", line_no);
    }
    const size_t base = fields.size() - 3;
    size_t counts[3];
    bool numeric = true;
    for (size_t k = 0; k < 3; ++k) {
      const std::string &f = fields[base + k];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), counts[k]);
      if (ec != std::errc() || ptr != f.data() + f.size()) numeric = false;
    }
    if (!numeric) {
      if (rows.empty()) continue;  // header
      throw ParseError("counts must be non-negative integers", line_no);
    }
    AgreementCounts row;
    row.name = base == 1 ? fields[0] : "row " + std::to_string(rows.size() + 1);
    row.n1 = counts[0];
    row.n2 = counts[1];
    row.nm = counts[2];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace initdet
