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

#include "refannot/evaluation.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "refannot/error.h"

namespace refannot {

namespace {

template <typename Set>
EvalReport EvaluateSets(const std::vector<std::string> &ids,
                        const std::vector<Set> &hypotheses,
                        const std::vector<Set> &golds) {
  if (hypotheses.size() != golds.size() || ids.size() != golds.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "evaluation needs one hypothesis per gold item: " +
                    std::to_string(hypotheses.size()) + " hypotheses, " +
                    std::to_string(golds.size()) + " gold items");
  }
  if (golds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to evaluate");
  }
  EvalReport report;
  double dice_sum = 0;
  size_t exact = 0;
  for (size_t i = 0; i < golds.size(); ++i) {
    ItemScore score;
    score.id = ids[i];
    score.exact = hypotheses[i] == golds[i];
    score.dice = score.exact ? 1.0 : Dice(hypotheses[i], golds[i]);
    dice_sum += score.dice;
    exact += score.exact ? 1 : 0;
    report.items.push_back(std::move(score));
  }
  report.mean_dice = dice_sum / static_cast<double>(golds.size());
  report.accuracy =
      static_cast<double>(exact) / static_cast<double>(golds.size());
  return report;
}

Direction Compare(double a, double b) {
  if (std::fabs(a - b) <= 1e-12) return Direction::kEqual;
  return a > b ? Direction::kFirstHigher : Direction::kSecondHigher;
}

std::string Fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

std::string General(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4g", value);
  return buffer;
}

std::string Pad(const std::string &s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string PadLeft(const std::string &s, size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

EvalReport Evaluate(const std::vector<std::string> &ids,
                    const std::vector<PropertySet> &hypotheses,
                    const std::vector<PropertySet> &golds) {
  return EvaluateSets(ids, hypotheses, golds);
}

EvalReport Evaluate(const std::vector<std::string> &ids,
                    const std::vector<RolePropertySet> &hypotheses,
                    const std::vector<RolePropertySet> &golds) {
  EvalReport report = EvaluateSets(ids, hypotheses, golds);
  report.role_aware = true;
  return report;
}

const char *DirectionName(Direction direction) {
  switch (direction) {
    case Direction::kFirstHigher: return "first higher";
    case Direction::kSecondHigher: return "second higher";
    case Direction::kEqual: return "equal";
  }
  return "equal";
}

ComparisonSummary CompareMethods(const EvalReport &a, const EvalReport &b,
                                 double alpha) {
  if (a.items.size() != b.items.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "reports cover different numbers of items (" +
                    std::to_string(a.items.size()) + " vs " +
                    std::to_string(b.items.size()) + ")");
  }
  std::vector<double> dice_a, dice_b;
  double exact_a = 0, exact_b = 0;
  for (size_t i = 0; i < a.items.size(); ++i) {
    if (a.items[i].id != b.items[i].id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "reports differ at item " + std::to_string(i) + ": '" +
                      a.items[i].id + "' vs '" + b.items[i].id + "'");
    }
    dice_a.push_back(a.items[i].dice);
    dice_b.push_back(b.items[i].dice);
    exact_a += a.items[i].exact ? 1 : 0;
    exact_b += b.items[i].exact ? 1 : 0;
  }

  ComparisonSummary summary;
  summary.method_a = a.method;
  summary.method_b = b.method;
  summary.corpus = a.corpus;
  summary.n = a.items.size();
  summary.alpha = alpha;
  summary.mean_dice_a = a.mean_dice;
  summary.mean_dice_b = b.mean_dice;
  summary.accuracy_a = a.accuracy;
  summary.accuracy_b = b.accuracy;
  summary.dice_direction = Compare(a.mean_dice, b.mean_dice);
  summary.accuracy_direction = Compare(a.accuracy, b.accuracy);

  try {
    summary.wilcoxon = WilcoxonSignedRank(dice_a, dice_b);
    summary.dice_significant = summary.wilcoxon->p < alpha;
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kStatistics) throw;
    summary.wilcoxon_note = "no difference: " + std::string(e.what());
  }

  const double n = static_cast<double>(summary.n);
  try {
    summary.chi_square = ChiSquare2x2({{{exact_a, n - exact_a},
                                        {exact_b, n - exact_b}}});
    summary.accuracy_significant = summary.chi_square->p < alpha;
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kStatistics) throw;
    summary.chi_square_note = "not computable: " + std::string(e.what());
  }
  return summary;
}

std::string RenderReportTable(const std::vector<EvalReport> &reports) {
  std::ostringstream out;
  out << Pad("Method", 16) << PadLeft("Dice", 8) << PadLeft("Acc.", 8)
      << PadLeft("N", 8) << "\n";
  for (const EvalReport &report : reports) {
    out << Pad(report.method, 16) << PadLeft(Fixed(report.mean_dice, 2), 8)
        << PadLeft(Fixed(report.accuracy, 2), 8)
        << PadLeft(std::to_string(report.n()), 8) << "\n";
  }
  return out.str();
}

std::string RenderComparisonTable(const ComparisonSummary &s) {
  // Significantly higher scores are starred.
  auto cell = [](double value, bool star) {
    return PadLeft((star ? "*" : "") + Fixed(value, 2), 7);
  };
  const bool dice_a = s.dice_significant &&
                      s.dice_direction == Direction::kFirstHigher;
  const bool dice_b = s.dice_significant &&
                      s.dice_direction == Direction::kSecondHigher;
  const bool acc_a = s.accuracy_significant &&
                     s.accuracy_direction == Direction::kFirstHigher;
  const bool acc_b = s.accuracy_significant &&
                     s.accuracy_direction == Direction::kSecondHigher;

  const size_t label = std::max<size_t>(16, s.corpus.size() + 2);
  std::ostringstream out;
  out << Pad("", label) << Pad(" " + s.method_a, 16) << " " << s.method_b
      << "\n";
  out << Pad("Test corpus", label) << PadLeft("Dice", 7) << PadLeft("Acc.", 7)
      << "  " << PadLeft("Dice", 7) << PadLeft("Acc.", 7) << "\n";
  out << Pad(s.corpus.empty() ? "-" : s.corpus, label)
      << cell(s.mean_dice_a, dice_a) << cell(s.accuracy_a, acc_a) << "  "
      << cell(s.mean_dice_b, dice_b) << cell(s.accuracy_b, acc_b) << "\n\n";

  out << "Dice, Wilcoxon signed-rank: ";
  if (s.wilcoxon) {
    out << "W=" << General(s.wilcoxon->w) << ", Z=" << Fixed(s.wilcoxon->z, 2)
        << ", p=" << General(s.wilcoxon->p) << ", n=" << s.wilcoxon->nonzero;
  } else {
    out << s.wilcoxon_note;
  }
  out << (s.dice_significant ? "  [significant" : "  [not significant")
      << " at alpha=" << General(s.alpha) << "]\n";

  out << "Accuracy, chi-square: ";
  if (s.chi_square) {
    out << "chi2=" << Fixed(s.chi_square->chi2, 2)
        << ", df=" << s.chi_square->df << ", p=" << General(s.chi_square->p);
  } else {
    out << s.chi_square_note;
  }
  out << (s.accuracy_significant ? "  [significant" : "  [not significant")
      << " at alpha=" << General(s.alpha) << "]\n";
  out << "N=" << s.n << " items; starred scores are significantly higher.\n";
  return out.str();
}

}  // namespace refannot
