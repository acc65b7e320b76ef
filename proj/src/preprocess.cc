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

#include "initdet/preprocess.h"

#include <cctype>

#include "initdet/error.h"

namespace initdet {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }
bool IsPunct(char c) { return std::ispunct(static_cast<unsigned char>(c)); }

template <typename Emit>
void ForEachToken(std::string_view text, Emit emit) {
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    size_t j = i;
    while (j < text.size() && !IsSpace(text[j])) ++j;
    if (i == j) break;
    std::string_view chunk = text.substr(i, j - i);
    i = j;

    size_t lead = 0;
    while (lead < chunk.size() && IsPunct(chunk[lead])) ++lead;
    size_t trail = chunk.size();
    while (trail > lead && IsPunct(chunk[trail - 1])) --trail;
    for (size_t k = 0; k < lead; ++k) emit(chunk.substr(k, 1));
    if (trail > lead) emit(chunk.substr(lead, trail - lead));
    for (size_t k = trail; k < chunk.size(); ++k) emit(chunk.substr(k, 1));
  }
}

}  // namespace

void PreprocessConfig::Validate() const {
  if (min_tokens == 0 || max_tokens == 0) {
    throw UsageError("token thresholds must be positive");
  }
  if (min_tokens > max_tokens) {
    throw UsageError("min_tokens must not exceed max_tokens");
  }
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  ForEachToken(text, [&](std::string_view t) { tokens.emplace_back(t); });
  return tokens;
}

size_t TokenCount(std::string_view text) {
  size_t n = 0;
  ForEachToken(text, [&](std::string_view) { ++n; });
  return n;
}

bool IsEligible(std::string_view text, const PreprocessConfig &cfg) {
  size_t n = TokenCount(text);
  return n >= cfg.min_tokens && n <= cfg.max_tokens;
}

EligibilityMask FilterMask(const Corpus &corpus, const PreprocessConfig &cfg) {
  cfg.Validate();
  EligibilityMask mask(corpus.reports.size());
  #pragma omp parallel for schedule(dynamic)
  for (size_t r = 0; r < corpus.reports.size(); ++r) {
    const Report &report = corpus.reports[r];
    std::vector<bool> m(report.size());
    for (size_t i = 0; i < report.size(); ++i) {
      m[i] = IsEligible(report.sentences[i].text, cfg);
    }
    mask[r] = std::move(m);
  }
  return mask;
}

}  // namespace initdet
