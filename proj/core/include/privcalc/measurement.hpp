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

#ifndef PRIVCALC_MEASUREMENT_HPP
#define PRIVCALC_MEASUREMENT_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "privcalc/domain.hpp"
#include "privcalc/error.hpp"
#include "privcalc/maps.hpp"
#include "privcalc/metric.hpp"
#include "privcalc/rng.hpp"
#include "privcalc/value.hpp"

namespace privcalc {

// One point mass of a discrete output distribution.
struct OutcomePoint {
  Value value;
  double probability = 0.0;
};

using OutcomeDistribution = std::vector<OutcomePoint>;

// Optional hook: mechanisms with finitely many outcomes can expose the full
// output distribution for a fixed input, enabling exact divergence checks.
using DiscreteFn = std::function<OutcomeDistribution(const Value&)>;

// A randomized function from a metric space into a measure space, together
// with a privacy map bounding the divergence of output distributions for
// inputs at a given distance. The rng passed to an invocation is owned by
// the caller; runners derive one child stream per invocation so results are
// replayable.
class Measurement {
 public:
  using Fn = std::function<Value(const Value&, Rng&)>;

  Measurement(std::string name, Domain input_domain, Metric input_metric,
              Fn fn, PrivacyMap privacy_map, std::optional<DiscreteFn> discrete)
      : name_(std::move(name)),
        input_domain_(std::move(input_domain)),
        input_metric_(input_metric),
        fn_(std::move(fn)),
        privacy_map_(std::move(privacy_map)),
        discrete_(std::move(discrete)) {}

  Value operator()(const Value& input, Rng& rng) const { return fn_(input, rng); }

  const std::string& name() const { return name_; }
  const Domain& input_domain() const { return input_domain_; }
  const Metric& input_metric() const { return input_metric_; }
  const PrivacyMap& privacy_map() const { return privacy_map_; }
  MeasureKind measure_kind() const { return privacy_map_.kind(); }

  // Privacy loss incurred when neighbours are at distance d_in.
  PrivacyLoss loss_at(double d_in) const { return privacy_map_.at(d_in); }

  bool is_enumerable() const { return discrete_.has_value(); }

  // Full output distribution for one input; only for enumerable mechanisms.
  OutcomeDistribution enumerate(const Value& input) const {
    if (!discrete_) {
      throw Error(ErrorKind::kNotEnumerable,
                  "measurement " + name_ + " has no discrete enumeration");
    }
    return (*discrete_)(input);
  }

 private:
  std::string name_;
  Domain input_domain_;
  Metric input_metric_;
  Fn fn_;
  PrivacyMap privacy_map_;
  std::optional<DiscreteFn> discrete_;
};

// Validates metric compatibility and sanity of the privacy map (nonnegative,
// monotone at the probe points 0 and 1) before constructing.
inline Measurement make_measurement(std::string name, Domain input_domain,
                                    Metric input_metric, Measurement::Fn fn,
                                    PrivacyMap privacy_map,
                                    std::optional<DiscreteFn> discrete = {}) {
  if (!input_metric.applies_to(input_domain)) {
    throw Error(ErrorKind::kIncompatibleMetric,
                "input metric " + std::string(input_metric.name()) +
                    " does not apply to domain " + input_domain.to_string());
  }
  PrivacyLoss at0 = privacy_map.at(0.0);
  PrivacyLoss at1 = privacy_map.at(1.0);
  if (!at0.nonnegative() || !at1.nonnegative() || !at0.leq(at1)) {
    throw Error(ErrorKind::kInvalidPrivacyMap,
                "privacy map for " + name + " is negative or non-monotone");
  }
  return Measurement(std::move(name), std::move(input_domain), input_metric,
                     std::move(fn), std::move(privacy_map), std::move(discrete));
}

}  // namespace privcalc

#endif  // PRIVCALC_MEASUREMENT_HPP
