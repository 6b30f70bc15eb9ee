// Copyright 2026 The privcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVCALC_ACCURACY_HPP
#define PRIVCALC_ACCURACY_HPP

#include <vector>

namespace privcalc {

// (alpha, beta)-accuracy: with probability at least 1 - beta the released
// value is within alpha of the noiseless one, per-coordinate absolute error.
struct AccuracyBound {
  double alpha = 0.0;
  double beta = 0.0;
};

// Exact Laplace tail: Pr[|Lap(b)| > alpha] = exp(-alpha/b), so the
// beta-quantile of the absolute error is b * ln(1/beta).
double laplace_alpha(double scale, double beta);

// Inverse direction: the epsilon that makes a sensitivity-c Laplace release
// (alpha, beta)-accurate; epsilon = c * ln(1/beta) / alpha. Exact inverse of
// laplace_alpha with b = c/epsilon. c = 0 means a data-independent statistic
// and costs nothing.
double epsilon_for_accuracy(double sensitivity, double alpha, double beta);

// Union bound over a joint release: per-coordinate alphas unchanged,
// beta_total = min(1, sum of betas).
struct ComposedAccuracy {
  std::vector<double> alphas;
  double beta = 0.0;
};
ComposedAccuracy compose_accuracy_union(const std::vector<AccuracyBound>& bounds);

}  // namespace privcalc

#endif  // PRIVCALC_ACCURACY_HPP
