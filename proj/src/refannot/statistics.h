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

// Significance tests used to compare two annotation methods.

#ifndef REFANNOT_STATISTICS_H_
#define REFANNOT_STATISTICS_H_

#include <array>
#include <cstddef>
#include <span>

namespace refannot {

struct WilcoxonResult {
  double w = 0;        // sum of positive ranks minus sum of negative ranks
  double z = 0;        // normal approximation, tie-corrected variance
  double p = 1;        // two-sided
  double positive_rank_sum = 0;
  double negative_rank_sum = 0;
  size_t nonzero = 0;  // pairs left after dropping zero differences
};

// Paired Wilcoxon signed-rank test on a - b. Zero differences are dropped and
// tied magnitudes share their mean rank. Differences within 1e-12 of zero
// count as zero and magnitudes within a relative 1e-9 count as tied, so that
// scores computed along different arithmetic paths compare sensibly.
//
// Throws Error(kInvalidArgument) on length mismatch and Error(kStatistics)
// when fewer than 5 nonzero differences remain.
WilcoxonResult WilcoxonSignedRank(std::span<const double> a,
                                  std::span<const double> b);

struct ChiSquareResult {
  double chi2 = 0;
  int df = 1;
  double p = 1;
};

// Pearson chi-square on a 2x2 table {{a, b}, {c, d}}, no continuity
// correction. Throws Error(kStatistics) when a row or column sums to zero and
// Error(kInvalidArgument) on negative counts.
ChiSquareResult ChiSquare2x2(const std::array<std::array<double, 2>, 2> &table);

// Two-sided tail probability of a standard normal deviate.
double NormalTwoSidedP(double z);

// Upper tail of the chi-square distribution with one degree of freedom.
double ChiSquare1Sf(double chi2);

}  // namespace refannot

#endif  // REFANNOT_STATISTICS_H_
