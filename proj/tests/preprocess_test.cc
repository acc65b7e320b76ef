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

#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "initdet/error.h"

namespace initdet {
namespace {

std::string Words(size_t n) {
  std::string s;
  for (size_t i = 0; i < n; ++i) s += (i ? " w" : "w") + std::to_string(i);
  return s;
}

TEST_CASE("token counts") {
  CHECK(TokenCount("We launched a program.") == 5);
  CHECK(TokenCount("") == 0);
  CHECK(TokenCount("   \t ") == 0);
  CHECK(TokenCount("word") == 1);
  CHECK(Tokenize("(hello), world!") ==
        std::vector<std::string>{"(", "hello", ")", ",", "world", "!"});
  // Inner punctuation stays with the word.
  CHECK(Tokenize("10,000 e-mail") == std::vector<std::string>{"10,000", "e-mail"});
  CHECK(TokenCount("...") == 3);
}

TEST_CASE("thresholds keep 5 and 100 tokens and drop the rest") {
  PreprocessConfig cfg;
  CHECK_FALSE(IsEligible(Words(3), cfg));
  CHECK_FALSE(IsEligible(Words(4), cfg));
  CHECK(IsEligible(Words(5), cfg));
  CHECK(IsEligible(Words(50), cfg));
  CHECK(IsEligible(Words(100), cfg));
  CHECK_FALSE(IsEligible(Words(101), cfg));
}

TEST_CASE("filter mask follows corpus layout") {
  Corpus c = fixtures::ParseString(
      R"({"report_id": "R", "index": 0, "text": "Too short."}
{"report_id": "R", "index": 1, "text": "We launched a program today."}
{"report_id": "Q", "index": 0, "text": "One two three four five"}
)");
  EligibilityMask m = FilterMask(c, PreprocessConfig{});
  REQUIRE(m.size() == 2);
  CHECK(m[0] == std::vector<bool>{false, true});
  CHECK(m[1] == std::vector<bool>{true});
}

TEST_CASE("widening the window never removes a sentence") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<size_t> len(0, 130), bound(1, 120);
  for (int trial = 0; trial < 500; ++trial) {
    size_t a = bound(rng), b = bound(rng);
    PreprocessConfig narrow{std::min(a, b), std::max(a, b)};
    size_t da = std::uniform_int_distribution<size_t>(0, narrow.min_tokens - 1)(rng);
    size_t db = std::uniform_int_distribution<size_t>(0, 20)(rng);
    PreprocessConfig wide{narrow.min_tokens - da, narrow.max_tokens + db};
    if (wide.min_tokens == 0) wide.min_tokens = 1;
    std::string s = Words(len(rng));
    if (IsEligible(s, narrow)) CHECK(IsEligible(s, wide));
  }
}

TEST_CASE("invalid thresholds") {
  CHECK_THROWS_AS((PreprocessConfig{10, 5}.Validate()), UsageError);
  CHECK_THROWS_AS((PreprocessConfig{0, 5}.Validate()), UsageError);
  CHECK_NOTHROW((PreprocessConfig{5, 5}.Validate()));
}

}  // namespace
}  // namespace initdet
