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

#include "initdet/eval.h"

#include <algorithm>
#include <map>

#include "initdet/error.h"

namespace initdet {
namespace {

using SpanGroups = std::map<std::string_view, std::vector<const InitiativeSpan *>>;

SpanGroups GroupByReport(std::span<const InitiativeSpan> spans) {
  SpanGroups groups;
  for (const auto &s : spans) groups[s.report_id].push_back(&s);
  for (auto &[id, list] : groups) {
    std::stable_sort(list.begin(), list.end(), [](auto *a, auto *b) {
      return a->start != b->start ? a->start < b->start : a->end < b->end;
    });
  }
  return groups;
}

size_t CountExact(const std::vector<const InitiativeSpan *> &pred,
                  const std::vector<const InitiativeSpan *> &gold) {
  // Gold spans within a report never overlap, so (start, end) is unique and
  // each gold span can be hit at most once.
  std::vector<bool> used(gold.size(), false);
  size_t tp = 0;
  for (const auto *p : pred) {
    for (size_t g = 0; g < gold.size(); ++g) {
      if (!used[g] && gold[g]->start == p->start && gold[g]->end == p->end) {
        used[g] = true;
        ++tp;
        break;
      }
    }
  }
  return tp;
}

size_t CountMin(const std::vector<const InitiativeSpan *> &pred,
                const std::vector<const InitiativeSpan *> &gold) {
  std::vector<bool> used(gold.size(), false);
  size_t tp = 0;
  for (const auto *p : pred) {
    for (size_t g = 0; g < gold.size(); ++g) {
      if (!used[g] && gold[g]->Overlaps(*p)) {
        used[g] = true;
        ++tp;
        break;
      }
    }
  }
  return tp;
}

template <typename Counter>
MatchReport MatchWith(std::span<const InitiativeSpan> pred,
                      std::span<const InitiativeSpan> gold, MatchRegime regime,
                      Counter count) {
  SpanGroups pred_groups = GroupByReport(pred);
  SpanGroups gold_groups = GroupByReport(gold);
  size_t tp = 0;
  for (const auto &[id, preds] : pred_groups) {
    auto it = gold_groups.find(id);
    if (it != gold_groups.end()) tp += count(preds, it->second);
  }
  return MatchReport::FromCounts(regime, tp, pred.size() - tp,
                                 gold.size() - tp);
}

double Ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view RegimeName(MatchRegime regime) {
  return regime == MatchRegime::kMinMatch ? "min_match" : "exact_match";
}

MatchReport MatchReport::FromCounts(MatchRegime regime, size_t tp, size_t fp,
                                    size_t fn) {
  MatchReport r;
  r.regime = regime;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.precision = Ratio(tp, tp + fp);
  r.recall = Ratio(tp, tp + fn);
  double sum = r.precision + r.recall;
  r.f1 = sum > 0.0 ? 2.0 * r.precision * r.recall / sum : 0.0;
  return r;
}

MatchReport MatchExact(std::span<const InitiativeSpan> pred,
                       std::span<const InitiativeSpan> gold) {
  return MatchWith(pred, gold, MatchRegime::kExactMatch, CountExact);
}

MatchReport MatchMin(std::span<const InitiativeSpan> pred,
                     std::span<const InitiativeSpan> gold) {
  return MatchWith(pred, gold, MatchRegime::kMinMatch, CountMin);
}

MatchReport Match(std::span<const InitiativeSpan> pred,
                  std::span<const InitiativeSpan> gold, MatchRegime regime) {
  return regime == MatchRegime::kMinMatch ? MatchMin(pred, gold)
                                          : MatchExact(pred, gold);
}

AgreementResult Agreement(const AgreementCounts &c) {
  if (c.n1 == 0 || c.n2 == 0) {
    throw UsageError("agreement needs n1 > 0 and n2 > 0");
  }
  if (c.nm > std::min(c.n1, c.n2)) {
    throw UsageError("matches exceed the smaller annotator count");
  }
  AgreementResult r;
  r.min_pct = 100.0 * static_cast<double>(c.nm) /
              static_cast<double>(c.n1 + c.n2 - c.nm);
  r.max_pct = 100.0 * static_cast<double>(c.nm) /
              static_cast<double>(std::min(c.n1, c.n2));
  return r;
}

AgreementResult MeanAgreement(std::span<const AgreementCounts> rows) {
  if (rows.empty()) throw UsageError("no agreement rows");
  AgreementResult mean;
  for (const auto &row : rows) {
    AgreementResult r = Agreement(row);
    mean.min_pct += r.min_pct;
    mean.max_pct += r.max_pct;
  }
  mean.min_pct /= static_cast<double>(rows.size());
  mean.max_pct /= static_cast<double>(rows.size());
  return mean;
}

}  // namespace initdet
