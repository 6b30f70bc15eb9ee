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

#include "privcalc/mechanisms.hpp"

#include <cmath>
#include <utility>

#include "privcalc/combinators.hpp"
#include "privcalc/transforms.hpp"

namespace privcalc {
namespace {

void require_positive_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::kNonpositiveEpsilon,
                "epsilon must be positive and finite");
  }
}

}  // namespace

Measurement laplace_noise(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::kNonpositiveScale,
                "Laplace scale must be positive and finite");
  }
  auto fn = [scale](const Value& v, Rng& rng) {
    return Value(v.scalar() + rng.next_laplace(scale));
  };
  return make_measurement("laplace(b=" + std::to_string(scale) + ")",
                          Domain::scalar(), Metric::absolute(), std::move(fn),
                          PrivacyMap::linear(PrivacyLoss::pure(1.0 / scale)));
}

Measurement randomized_response(double p) {
  if (!(p >= 0.5) || !(p < 1.0)) {
    throw Error(ErrorKind::kInvalidProbability,
                "randomized response needs 0.5 <= p < 1");
  }
  const double epsilon = std::log(p / (1.0 - p));
  auto fn = [p](const Value& v, Rng& rng) {
    bool truth = v.as_bool();
    return Value(rng.next_bernoulli(p) ? truth : !truth);
  };
  DiscreteFn discrete = [p](const Value& v) {
    bool truth = v.as_bool();
    return OutcomeDistribution{{Value(false), truth ? 1.0 - p : p},
                               {Value(true), truth ? p : 1.0 - p}};
  };
  return make_measurement("randomized_response(p=" + std::to_string(p) + ")",
                          Domain::bit(), Metric::absolute(), std::move(fn),
                          PrivacyMap::linear(PrivacyLoss::pure(epsilon)),
                          std::move(discrete));
}

Measurement noisy_count(const Domain& input_domain, const Metric& metric,
                        double epsilon) {
  require_positive_epsilon(epsilon);
  return chain_mt(laplace_noise(1.0 / epsilon), count(input_domain, metric));
}

Measurement noisy_sum(const Domain& input_domain, const Metric& metric,
                      const std::string& column, Bounds bounds, double epsilon) {
  require_positive_epsilon(epsilon);
  Transformation clamped = clamp(input_domain, metric, column, bounds);
  Transformation total = sum_clamped(clamped.output_domain(), metric, column);
  const double c = *total.stability().linear_constant();
  Transformation prepared = chain_tt(total, clamped);
  if (c == 0.0) {
    // Degenerate all-zero bounds: the sum is constant, release it exactly.
    auto fn = [prepared](const Value& v, Rng&) { return prepared(v); };
    return make_measurement("noisy_sum(" + column + ")", input_domain, metric,
                            std::move(fn),
                            PrivacyMap::linear(PrivacyLoss::pure(0.0)));
  }
  return chain_mt(laplace_noise(c / epsilon), prepared);
}

Measurement noisy_average(const Domain& input_domain, const Metric& metric,
                          const std::string& column, double epsilon) {
  require_positive_epsilon(epsilon);
  Transformation clamped = clamp(input_domain, metric, column, Bounds{-1.0, 1.0});
  const Domain& mid = clamped.output_domain();

  Transformation total = sum_clamped(mid, metric, column);
  const double c = *total.stability().linear_constant();
  Measurement sum_part = chain_mt(laplace_noise(c / (epsilon / 2.0)), total);
  Measurement count_part = noisy_count(mid, metric, epsilon / 2.0);

  Measurement pair = chain_mt(compose_basic({sum_part, count_part}), clamped);
  auto quotient = [](const Value& v) {
    const auto& parts = v.as_list();
    double num = parts[0].as_real();
    double den = parts[1].as_real();
    // Guard for empty or noise-wiped denominators; a documented bias source.
    if (den <= 0.0) return Value(0.0);
    return Value(num / den);
  };
  return post_process(pair, quotient, "noisy_average(" + column + ")");
}

}  // namespace privcalc
