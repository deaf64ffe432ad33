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

#include "refannot/statistics.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "refannot/error.h"

namespace refannot {

namespace {

constexpr double kZeroTolerance = 1e-12;
constexpr double kTieTolerance = 1e-9;

}  // namespace

double NormalTwoSidedP(double z) { return std::erfc(std::fabs(z) / M_SQRT2); }

double ChiSquare1Sf(double chi2) {
  if (chi2 <= 0) return 1.0;
  return std::erfc(std::sqrt(chi2 / 2));
}

WilcoxonResult WilcoxonSignedRank(std::span<const double> a,
                                  std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "Wilcoxon test needs paired samples, got " +
                    std::to_string(a.size()) + " and " +
                    std::to_string(b.size()) + " values");
  }
  std::vector<double> d;
  for (size_t i = 0; i < a.size(); ++i) {
    double diff = a[i] - b[i];
    if (std::fabs(diff) > kZeroTolerance) d.push_back(diff);
  }
  const size_t n = d.size();
  if (n < 5) {
    throw Error(ErrorCode::kStatistics,
                "Wilcoxon test needs at least 5 nonzero differences, got " +
                    std::to_string(n));
  }

  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return std::fabs(d[x]) < std::fabs(d[y]);
  });

  WilcoxonResult result;
  result.nonzero = n;
  double tie_correction = 0;
  for (size_t start = 0; start < n;) {
    const double magnitude = std::fabs(d[order[start]]);
    size_t end = start + 1;
    while (end < n && std::fabs(d[order[end]]) - magnitude <=
                          kTieTolerance * std::max(1.0, magnitude)) {
      ++end;
    }
    // Ranks start+1 .. end share their mean.
    const double rank = (static_cast<double>(start + 1) + end) / 2;
    for (size_t k = start; k < end; ++k) {
      if (d[order[k]] > 0) {
        result.positive_rank_sum += rank;
      } else {
        result.negative_rank_sum += rank;
      }
    }
    const double t = static_cast<double>(end - start);
    tie_correction += t * t * t - t;
    start = end;
  }

  const double nn = static_cast<double>(n);
  const double variance = nn * (nn + 1) * (2 * nn + 1) / 6 - tie_correction / 12;
  if (variance <= 0) {
    throw Error(ErrorCode::kStatistics, "Wilcoxon variance is not positive");
  }
  result.w = result.positive_rank_sum - result.negative_rank_sum;
  result.z = result.w / std::sqrt(variance);
  result.p = NormalTwoSidedP(result.z);
  return result;
}

ChiSquareResult ChiSquare2x2(
    const std::array<std::array<double, 2>, 2> &table) {
  double rows[2] = {0, 0}, cols[2] = {0, 0}, total = 0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double count = table[r][c];
      if (!(count >= 0) || !std::isfinite(count)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "contingency counts must be finite and non-negative");
      }
      rows[r] += count;
      cols[c] += count;
      total += count;
    }
  }
  if (rows[0] == 0 || rows[1] == 0 || cols[0] == 0 || cols[1] == 0) {
    throw Error(ErrorCode::kStatistics,
                "chi-square test undefined: a row or column of the 2x2 table "
                "sums to zero");
  }
  ChiSquareResult result;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double expected = rows[r] * cols[c] / total;
      const double delta = table[r][c] - expected;
      result.chi2 += delta * delta / expected;
    }
  }
  result.p = ChiSquare1Sf(result.chi2);
  return result;
}

}  // namespace refannot
