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

#include "initdet/synthetic.h"

#include <algorithm>
#include <cctype>
#include <random>
#include <string_view>
#include <vector>

#include "initdet/error.h"
#include "initdet/labels.h"

namespace initdet {
namespace {

constexpr std::string_view kFiller[] = {
    "the",       "company",    "report",    "annual",     "board",
    "revenue",   "market",     "customers", "network",    "services",
    "employees", "group",      "strategy",  "quarter",    "growth",
    "operations", "investment", "shareholders", "results", "products",
    "regional",  "management", "financial", "overview",   "subsidiary",
    "policy",    "governance", "risk",      "value",      "digital",
    "mobile",    "energy",     "local",     "community",  "business",
    "partners",  "year",       "during",    "with",       "across"};

std::string MakeSentence(std::mt19937_64 &rng, const SyntheticConfig &cfg,
                         std::string_view cue) {
  std::uniform_int_distribution<size_t> len(cfg.min_words, cfg.max_words);
  std::uniform_int_distribution<size_t> word(0, std::size(kFiller) - 1);
  std::vector<std::string_view> words(len(rng));
  for (auto &w : words) w = kFiller[word(rng)];
  if (!cue.empty()) {
    std::uniform_int_distribution<size_t> pos(0, words.size());
    words.insert(words.begin() + static_cast<long>(pos(rng)), cue);
  }
  std::string text;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) text += ' ';
    text += words[i];
  }
  if (!text.empty()) text[0] = static_cast<char>(std::toupper(text[0]));
  text += '.';
  return text;
}

}  // namespace

Corpus GenerateSyntheticCorpus(const SyntheticConfig &cfg) {
  if (cfg.report_length == 0 || cfg.span_length_weights.empty() ||
      cfg.min_words > cfg.max_words || cfg.initiative_rate < 0.0 ||
      cfg.initiative_rate > 1.0) {
    throw UsageError("invalid synthetic corpus configuration");
  }
  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution starts(cfg.initiative_rate);
  std::discrete_distribution<size_t> span_len(cfg.span_length_weights.begin(),
                                              cfg.span_length_weights.end());

  Corpus corpus;
  size_t remaining = cfg.num_sentences;
  size_t report_no = 0;
  while (remaining > 0) {
    const size_t n = std::min(remaining, cfg.report_length);
    remaining -= n;
    Report report;
    report.id = cfg.report_prefix + std::to_string(report_no++);
    size_t initiative_no = 0;
    size_t i = 0;
    while (i < n) {
      size_t k = starts(rng) ? span_len(rng) + 1 : 0;
      if (k == 0 || i + k > n) {
        report.sentences.push_back(
            Sentence{report.id, i, MakeSentence(rng, cfg, ""), {}, {}});
        ++i;
        continue;
      }
      std::string id = report.id + "-" + std::to_string(initiative_no++);
      for (size_t j = 0; j < k; ++j) {
        Label role = k == 1 ? kS : j == 0 ? kB : j + 1 == k ? kE : kI;
        report.sentences.push_back(
            Sentence{report.id, i + j, MakeSentence(rng, cfg, cfg.cues[role]),
                     id, {}});
      }
      i += k;
    }
    corpus.reports.push_back(std::move(report));
  }
  corpus.Validate();
  return corpus;
}

}  // namespace initdet
