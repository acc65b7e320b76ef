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

#include "initdet/features.h"

#include <random>
#include <set>

#include "doctest.h"
#include "initdet/error.h"

namespace initdet {
namespace {

std::vector<Sentence> Report(std::initializer_list<const char *> texts) {
  std::vector<Sentence> out;
  size_t i = 0;
  for (const char *t : texts) out.push_back(Sentence{"R", i++, t, {}, {}});
  return out;
}

std::set<uint32_t> Ids(const FeatureVector &fv) {
  std::set<uint32_t> ids;
  for (const auto &f : fv) ids.insert(f.id);
  return ids;
}

FeatureConfig Small(int window) {
  FeatureConfig cfg;
  cfg.window = window;
  cfg.hash_dim = 1u << 20;
  return cfg;
}

TEST_CASE("window 0 depends only on the target sentence") {
  auto a = Report({"alpha beta.", "we launched it.", "gamma delta."});
  auto b = Report({"other words here.", "we launched it.", "more text."});
  CHECK(ExtractFeatures(a, 1, Small(0)) == ExtractFeatures(b, 1, Small(0)));
  CHECK_FALSE(ExtractFeatures(a, 1, Small(1)) == ExtractFeatures(b, 1, Small(1)));
}

TEST_CASE("first sentence has no left-context features") {
  auto r = Report({"alpha.", "beta."});
  auto with_left = Report({"gamma.", "alpha.", "beta."});
  auto first = Ids(ExtractFeatures(r, 0, Small(1)));
  auto middle = Ids(ExtractFeatures(with_left, 1, Small(1)));
  // The middle sentence adds exactly "gamma" and "." at offset -1.
  for (uint32_t id : first) CHECK(middle.count(id) == 1);
  CHECK(middle.size() == first.size() + 2);
}

TEST_CASE("offset is part of the hash key") {
  auto left = Report({"solar", "target", "filler"});
  auto right = Report({"filler", "target", "solar"});
  auto l = Ids(ExtractFeatures(left, 1, Small(1)));
  auto r = Ids(ExtractFeatures(right, 1, Small(1)));
  CHECK(l != r);
}

TEST_CASE("features are deterministic, bounded and unique") {
  std::mt19937_64 rng(5);
  const char *vocab[] = {"a", "b", "c", "d", "Solar", "solar", "!", "x"};
  for (uint32_t dim : {2u, 16u, 1u << 18}) {
    FeatureConfig cfg;
    cfg.hash_dim = dim;
    cfg.window = 2;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Sentence> r;
      size_t n = std::uniform_int_distribution<size_t>(1, 6)(rng);
      for (size_t i = 0; i < n; ++i) {
        std::string text;
        for (int k = 0; k < 6; ++k) text += std::string(vocab[rng() % 8]) + " ";
        r.push_back(Sentence{"R", i, text, {}, {}});
      }
      size_t idx = rng() % n;
      auto fv = ExtractFeatures(r, idx, cfg);
      CHECK(fv == ExtractFeatures(r, idx, cfg));
      for (size_t k = 0; k < fv.size(); ++k) {
        CHECK(fv[k].id < dim);
        if (k > 0) CHECK(fv[k - 1].id < fv[k].id);
      }
    }
  }
}

TEST_CASE("changing a sentence only affects features within the window") {
  std::mt19937_64 rng(9);
  for (int window : {0, 1, 2}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Sentence> base;
      for (size_t i = 0; i < 8; ++i) {
        base.push_back(Sentence{"R", i, "s" + std::to_string(rng() % 1000), {}, {}});
      }
      size_t j = rng() % 8;
      auto changed = base;
      changed[j].text = "changed sentence text";
      for (size_t i = 0; i < 8; ++i) {
        bool same = ExtractFeatures(base, i, Small(window)) ==
                    ExtractFeatures(changed, i, Small(window));
        long dist = std::labs(static_cast<long>(i) - static_cast<long>(j));
        if (dist > window) CHECK(same);
      }
    }
  }
}

TEST_CASE("lowercasing is configurable") {
  auto r = Report({"Solar"});
  auto s = Report({"solar"});
  FeatureConfig cfg = Small(0);
  CHECK(ExtractFeatures(r, 0, cfg) == ExtractFeatures(s, 0, cfg));
  cfg.lowercase = false;
  CHECK_FALSE(ExtractFeatures(r, 0, cfg) == ExtractFeatures(s, 0, cfg));
}

TEST_CASE("invalid configurations") {
  FeatureConfig cfg;
  cfg.hash_dim = 1000;
  CHECK_THROWS_AS(cfg.Validate(), UsageError);
  cfg.hash_dim = 1;
  CHECK_THROWS_AS(cfg.Validate(), UsageError);
  cfg.hash_dim = 2;
  cfg.window = -1;
  CHECK_THROWS_AS(cfg.Validate(), UsageError);
}

}  // namespace
}  // namespace initdet
