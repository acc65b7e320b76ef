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

#ifndef INITDET_PREPROCESS_H_
#define INITDET_PREPROCESS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "initdet/corpus.h"

namespace initdet {

struct PreprocessConfig {
  size_t min_tokens = 5;
  size_t max_tokens = 100;

  // Throws UsageError unless 0 < min_tokens <= max_tokens.
  void Validate() const;
};

// Splits on ASCII whitespace, then peels leading and trailing ASCII
// punctuation off each chunk, one token per punctuation character.
// Non-ASCII bytes are treated as word characters.
std::vector<std::string> Tokenize(std::string_view text);
size_t TokenCount(std::string_view text);

bool IsEligible(std::string_view text, const PreprocessConfig &cfg);

// One mask per report, aligned with corpus.reports. true = the model may
// label the sentence; false = forced to the non-initiative label.
using EligibilityMask = std::vector<std::vector<bool>>;
EligibilityMask FilterMask(const Corpus &corpus, const PreprocessConfig &cfg);

}  // namespace initdet

#endif  // INITDET_PREPROCESS_H_
