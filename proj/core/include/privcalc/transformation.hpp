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

#ifndef PRIVCALC_TRANSFORMATION_HPP
#define PRIVCALC_TRANSFORMATION_HPP

#include <functional>
#include <string>
#include <utility>

#include "privcalc/domain.hpp"
#include "privcalc/error.hpp"
#include "privcalc/maps.hpp"
#include "privcalc/metric.hpp"
#include "privcalc/value.hpp"

namespace privcalc {

// A deterministic function between metric spaces together with a stability
// map bounding how far apart outputs can drift for inputs at a given
// distance. Instances are immutable and cheap to copy (shared state).
class Transformation {
 public:
  using Fn = std::function<Value(const Value&)>;

  Transformation(std::string name, Domain input_domain, Metric input_metric,
                 Domain output_domain, Metric output_metric, Fn fn,
                 StabilityMap stability)
      : name_(std::move(name)),
        input_domain_(std::move(input_domain)),
        input_metric_(input_metric),
        output_domain_(std::move(output_domain)),
        output_metric_(output_metric),
        fn_(std::move(fn)),
        stability_(std::move(stability)) {}

  Value operator()(const Value& input) const { return fn_(input); }

  const std::string& name() const { return name_; }
  const Domain& input_domain() const { return input_domain_; }
  const Metric& input_metric() const { return input_metric_; }
  const Domain& output_domain() const { return output_domain_; }
  const Metric& output_metric() const { return output_metric_; }
  const StabilityMap& stability() const { return stability_; }

  // Upper bound on output distance for inputs at distance d_in.
  double stability_at(double d_in) const { return stability_(d_in); }

 private:
  std::string name_;
  Domain input_domain_;
  Metric input_metric_;
  Domain output_domain_;
  Metric output_metric_;
  Fn fn_;
  StabilityMap stability_;
};

// Validates metric/domain compatibility before constructing.
inline Transformation make_transformation(std::string name, Domain input_domain,
                                          Metric input_metric,
                                          Domain output_domain,
                                          Metric output_metric,
                                          Transformation::Fn fn,
                                          StabilityMap stability) {
  if (!input_metric.applies_to(input_domain)) {
    throw Error(ErrorKind::kIncompatibleMetric,
                "input metric " + std::string(input_metric.name()) +
                    " does not apply to domain " + input_domain.to_string());
  }
  if (!output_metric.applies_to(output_domain)) {
    throw Error(ErrorKind::kIncompatibleMetric,
                "output metric " + std::string(output_metric.name()) +
                    " does not apply to domain " + output_domain.to_string());
  }
  return Transformation(std::move(name), std::move(input_domain), input_metric,
                        std::move(output_domain), output_metric, std::move(fn),
                        std::move(stability));
}

}  // namespace privcalc

#endif  // PRIVCALC_TRANSFORMATION_HPP
