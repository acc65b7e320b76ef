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

#include <algorithm>
#include <bit>
#include <cctype>
#include <string>

#include "initdet/error.h"
#include "initdet/preprocess.h"

namespace initdet {
namespace {

// 64-bit FNV-1a.
constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

uint64_t Fnv(uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

// Key layout: namespace tag, 0x1f, payload. Offsets are encoded as text so
// "w-1" and "w+1" never share a prefix state.
uint32_t Bucket(std::string_view tag, std::string_view payload, uint32_t dim) {
  uint64_t h = Fnv(kFnvOffset, tag);
  h = Fnv(h, "\x1f");
  h = Fnv(h, payload);
  // Final avalanche so low bits depend on every input byte.
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return static_cast<uint32_t>(h & (dim - 1));
}

std::string OffsetTag(int d) {
  return d < 0 ? "w" + std::to_string(d) : "w+" + std::to_string(d);
}

int CountBucket(size_t n) {
  if (n == 0) return 0;
  return std::min(8, static_cast<int>(std::bit_width(n)));
}

}  // namespace

void FeatureConfig::Validate() const {
  if (window < 0) throw UsageError("feature window must be >= 0");
  if (hash_dim < 2 || !std::has_single_bit(hash_dim)) {
    throw UsageError("hash_dim must be a power of two >= 2");
  }
}

FeatureVector ExtractFeatures(std::span<const Sentence> report, size_t index,
                              const FeatureConfig &cfg) {
  std::vector<uint32_t> ids;
  ids.push_back(Bucket("bias", "", cfg.hash_dim));

  for (int d = -cfg.window; d <= cfg.window; ++d) {
    long long j = static_cast<long long>(index) + d;
    if (j < 0 || j >= static_cast<long long>(report.size())) continue;
    const std::string tag = OffsetTag(d);
    for (std::string &tok : Tokenize(report[static_cast<size_t>(j)].text)) {
      if (cfg.lowercase) {
        for (char &c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      ids.push_back(Bucket(tag, tok, cfg.hash_dim));
    }
  }
  size_t n_tokens = TokenCount(report[index].text);
  ids.push_back(Bucket("len", std::to_string(CountBucket(n_tokens)), cfg.hash_dim));

  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  FeatureVector features;
  features.reserve(ids.size());
  for (uint32_t id : ids) features.push_back(Feature{id, 1.0});
  return features;
}

std::vector<FeatureVector> ExtractReportFeatures(const Report &report,
                                                 const FeatureConfig &cfg) {
  std::vector<FeatureVector> out(report.size());
  for (size_t i = 0; i < report.size(); ++i) {
    out[i] = ExtractFeatures(report.sentences, i, cfg);
  }
  return out;
}

}  // namespace initdet
