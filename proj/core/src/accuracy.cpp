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

#include "privcalc/accuracy.hpp"

#include <algorithm>
#include <cmath>

#include "privcalc/error.hpp"

namespace privcalc {
namespace {

void require_beta(double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw Error(ErrorKind::kInvalidBeta, "beta must lie in (0, 1)");
  }
}

}  // namespace

double laplace_alpha(double scale, double beta) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::kNonpositiveScale, "scale must be positive");
  }
  require_beta(beta);
  return scale * std::log(1.0 / beta);
}

double epsilon_for_accuracy(double sensitivity, double alpha, double beta) {
  if (sensitivity < 0.0 || !std::isfinite(sensitivity)) {
    throw Error(ErrorKind::kInvalidArgument, "sensitivity must be nonnegative");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::kNonpositiveAlpha, "alpha must be positive");
  }
  require_beta(beta);
  if (sensitivity == 0.0) return 0.0;
  return sensitivity * std::log(1.0 / beta) / alpha;
}

ComposedAccuracy compose_accuracy_union(const std::vector<AccuracyBound>& bounds) {
  if (bounds.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "accuracy composition needs at least one bound");
  }
  ComposedAccuracy out;
  out.alphas.reserve(bounds.size());
  for (const AccuracyBound& b : bounds) {
    out.alphas.push_back(b.alpha);
    out.beta += b.beta;
  }
  out.beta = std::min(out.beta, 1.0);
  return out;
}

}  // namespace privcalc
