// Copyright 2026 The refannot Authors.
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

// Scoring of annotations against gold: per-item Dice and exact match, mean
// Dice and accuracy per method, and paired comparison of two methods.

#ifndef REFANNOT_EVALUATION_H_
#define REFANNOT_EVALUATION_H_

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "refannot/domain.h"
#include "refannot/statistics.h"

namespace refannot {

// 2|a & b| / (|a| + |b|). Two empty sets coincide totally: 1.0.
template <typename Set>
double Dice(const Set &a, const Set &b) {
  if (a.empty() && b.empty()) return 1.0;
  size_t common = 0;
  for (const auto &element : a) common += b.count(element);
  return 2.0 * static_cast<double>(common) /
         static_cast<double>(a.size() + b.size());
}

struct ItemScore {
  std::string id;
  double dice = 0;
  bool exact = false;
};

struct EvalReport {
  std::string method;
  std::string corpus;
  bool role_aware = false;
  std::vector<ItemScore> items;
  double mean_dice = 0;
  double accuracy = 0;

  size_t n() const { return items.size(); }
};

// Throws Error(kInvalidArgument) when the three lists differ in length or are
// empty.
EvalReport Evaluate(const std::vector<std::string> &ids,
                    const std::vector<PropertySet> &hypotheses,
                    const std::vector<PropertySet> &golds);
EvalReport Evaluate(const std::vector<std::string> &ids,
                    const std::vector<RolePropertySet> &hypotheses,
                    const std::vector<RolePropertySet> &golds);

enum class Direction { kFirstHigher, kSecondHigher, kEqual };

const char *DirectionName(Direction direction);

struct ComparisonSummary {
  std::string method_a;
  std::string method_b;
  std::string corpus;
  size_t n = 0;
  double mean_dice_a = 0, mean_dice_b = 0;
  double accuracy_a = 0, accuracy_b = 0;
  double alpha = 0.05;

  Direction dice_direction = Direction::kEqual;
  Direction accuracy_direction = Direction::kEqual;

  // Absent when the test is undefined for the data (e.g. identical reports);
  // the note then says why.
  std::optional<WilcoxonResult> wilcoxon;
  std::string wilcoxon_note;
  std::optional<ChiSquareResult> chi_square;
  std::string chi_square_note;

  bool dice_significant = false;
  bool accuracy_significant = false;
};

// Wilcoxon signed-rank on paired Dice scores and chi-square on exact/inexact
// counts. Throws Error(kInvalidArgument) unless both reports cover the same
// item ids in the same order.
ComparisonSummary CompareMethods(const EvalReport &a, const EvalReport &b,
                                 double alpha = 0.05);

// Aligned text tables: method x {Dice, Acc.}.
std::string RenderReportTable(const std::vector<EvalReport> &reports);
std::string RenderComparisonTable(const ComparisonSummary &summary);

}  // namespace refannot

#endif  // REFANNOT_EVALUATION_H_
