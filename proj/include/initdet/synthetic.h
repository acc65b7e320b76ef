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

#ifndef INITDET_SYNTHETIC_H_
#define INITDET_SYNTHETIC_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "initdet/corpus.h"

namespace initdet {

// Generator for corpora whose initiatives are marked by planted words. Each
// initiative sentence carries the cue word of its IOBES role; outside
// sentences are drawn from a filler vocabulary that never contains a cue.
struct SyntheticConfig {
  size_t num_sentences = 1000;
  size_t report_length = 20;
  // Probability that an initiative starts at a free position.
  double initiative_rate = 0.1;
  // Relative frequency of span lengths 1, 2, ...; the default follows the
  // observed shape of real reports, where about half of all initiatives are
  // single sentences and almost none exceed four.
  std::vector<double> span_length_weights = {0.45, 0.25, 0.18, 0.12};
  // Cue per IOBES label index; the O entry is unused.
  std::array<std::string, 5> cues = {"", "delivered", "launched", "expanded",
                                     "achieved"};
  // Filler tokens per sentence, before the final period.
  size_t min_words = 6;
  size_t max_words = 18;
  uint64_t seed = 1;
  std::string report_prefix = "SYN";
};

Corpus GenerateSyntheticCorpus(const SyntheticConfig &cfg);

}  // namespace initdet

#endif  // INITDET_SYNTHETIC_H_
