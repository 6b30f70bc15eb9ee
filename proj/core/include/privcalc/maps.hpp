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

#ifndef PRIVCALC_MAPS_HPP
#define PRIVCALC_MAPS_HPP

#include <functional>
#include <optional>

#include "privcalc/error.hpp"
#include "privcalc/privacy_loss.hpp"

namespace privcalc {

// Monotone bound d_out <= map(d_in) for a deterministic transformation.
// A declared linear constant c (map(d) = c*d, a.k.a. c-stable / c-Lipschitz)
// lets combinators compose in closed form; the function is the general
// fallback. Monotonicity is caller-asserted and audited by property tests.
class StabilityMap {
 public:
  static StabilityMap linear(double c) {
    StabilityMap m;
    m.c_ = c;
    return m;
  }

  static StabilityMap from_function(std::function<double(double)> fn) {
    StabilityMap m;
    m.fn_ = std::move(fn);
    return m;
  }

  double operator()(double d_in) const {
    if (d_in < 0.0) {
      throw Error(ErrorKind::kNegativeDistance, "stability map at negative distance");
    }
    if (c_) {
      if (d_in == 0.0 || *c_ == 0.0) return 0.0;  // avoids 0 * inf
      return *c_ * d_in;
    }
    return fn_(d_in);
  }

  std::optional<double> linear_constant() const { return c_; }

  // this followed by `outer` (function composition outer . this).
  StabilityMap then(const StabilityMap& outer) const {
    if (c_ && outer.c_) return linear(*c_ * *outer.c_);
    StabilityMap inner = *this;
    StabilityMap out = outer;
    return from_function([inner, out](double d) { return out(inner(d)); });
  }

 private:
  std::function<double(double)> fn_;
  std::optional<double> c_;
};

// Monotone bound on output-distribution divergence as a function of input
// distance. Linear maps carry a per-unit loss; under approximate DP the
// linear extension d -> (d*eps, d*delta) is the conservative group-privacy
// default, recorded as conservative rather than tight.
class PrivacyMap {
 public:
  static PrivacyMap linear(PrivacyLoss per_unit) {
    PrivacyMap m;
    m.kind_ = per_unit.kind;
    m.per_unit_ = per_unit;
    return m;
  }

  static PrivacyMap from_function(MeasureKind kind,
                                  std::function<PrivacyLoss(double)> fn) {
    PrivacyMap m;
    m.kind_ = kind;
    m.fn_ = std::move(fn);
    return m;
  }

  PrivacyLoss at(double d_in) const {
    if (d_in < 0.0) {
      throw Error(ErrorKind::kNegativeDistance, "privacy map at negative distance");
    }
    if (per_unit_) {
      if (d_in == 0.0) return PrivacyLoss::zero(kind_);
      return per_unit_->scaled(d_in);
    }
    PrivacyLoss loss = fn_(d_in);
    if (loss.kind != kind_) {
      throw Error(ErrorKind::kHeterogeneousMeasures, "privacy map changed measure");
    }
    return loss;
  }

  MeasureKind kind() const { return kind_; }
  std::optional<PrivacyLoss> per_unit() const { return per_unit_; }

  // Privacy map of self applied after a stable transformation:
  // d -> at(stability(d)).
  PrivacyMap after(const StabilityMap& stability) const {
    if (per_unit_ && stability.linear_constant()) {
      return linear(per_unit_->scaled(*stability.linear_constant()));
    }
    PrivacyMap outer = *this;
    return from_function(kind_, [outer, stability](double d) {
      return outer.at(stability(d));
    });
  }

 private:
  MeasureKind kind_ = MeasureKind::kPureDP;
  std::function<PrivacyLoss(double)> fn_;
  std::optional<PrivacyLoss> per_unit_;
};

}  // namespace privcalc

#endif  // PRIVCALC_MAPS_HPP
