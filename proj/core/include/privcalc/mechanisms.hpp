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

#ifndef PRIVCALC_MECHANISMS_HPP
#define PRIVCALC_MECHANISMS_HPP

#include <string>

#include "privcalc/measurement.hpp"

namespace privcalc {

// Adds Laplace(0, scale) noise to a real scalar. Privacy map d -> d / scale
// under AbsoluteDistance: for a statistic of sensitivity c released at
// target eps, pass scale = c / eps. Inverse-CDF sampler; the floating-point
// caveat is documented, not fixed.
Measurement laplace_noise(double scale);

// Reports a bit truthfully with probability p, flipped otherwise;
// eps = ln(p / (1 - p)). Requires 0.5 <= p < 1. Enumerable, so exact
// divergence checks apply.
Measurement randomized_response(double p);

// Laplace-noised dataset size: laplace_noise(1/eps) after count, chained by
// Rule 1. Under ChangeOneDistance the count is insensitive and the map is 0.
Measurement noisy_count(const Domain& input_domain, const Metric& metric,
                        double epsilon);

// clamp -> sum -> laplace at scale c/eps with c from sum_clamped's stability
// under `metric`; loss_at(1) = eps.
Measurement noisy_sum(const Domain& input_domain, const Metric& metric,
                      const std::string& column, Bounds bounds, double epsilon);

// Average of a column clamped to [-1, 1]: a noisy clamped sum at eps/2 and a
// noisy count at eps/2, with the quotient taken as post-processing. An empty
// (or noise-negative) denominator yields 0 - a documented bias source, not
// an error.
Measurement noisy_average(const Domain& input_domain, const Metric& metric,
                          const std::string& column, double epsilon);

}  // namespace privcalc

#endif  // PRIVCALC_MECHANISMS_HPP
