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

#ifndef PRIVCALC_PRIVACY_LOSS_HPP
#define PRIVCALC_PRIVACY_LOSS_HPP

#include <string>
#include <string_view>

#include "privcalc/error.hpp"

namespace privcalc {

enum class MeasureKind { kPureDP, kApproxDP };

std::string_view to_string(MeasureKind kind);

// Privacy loss tagged by its measure: pure-DP epsilon, or approximate-DP
// (epsilon, delta). Losses are comparable only within the same measure;
// approximate-DP ordering is componentwise.
struct PrivacyLoss {
  MeasureKind kind = MeasureKind::kPureDP;
  double epsilon = 0.0;
  double delta = 0.0;  // always 0 under pure DP

  static PrivacyLoss pure(double epsilon) {
    return PrivacyLoss{MeasureKind::kPureDP, epsilon, 0.0};
  }
  static PrivacyLoss approx(double epsilon, double delta) {
    return PrivacyLoss{MeasureKind::kApproxDP, epsilon, delta};
  }
  static PrivacyLoss zero(MeasureKind kind) { return PrivacyLoss{kind, 0.0, 0.0}; }

  bool is_zero() const { return epsilon == 0.0 && delta == 0.0; }
  bool nonnegative() const { return epsilon >= 0.0 && delta >= 0.0; }

  PrivacyLoss operator+(const PrivacyLoss& other) const {
    require_same_kind(other);
    return PrivacyLoss{kind, epsilon + other.epsilon, delta + other.delta};
  }

  PrivacyLoss scaled(double factor) const {
    if (epsilon == 0.0 && delta == 0.0) return *this;
    return PrivacyLoss{kind, factor * epsilon, factor * delta};
  }

  // Componentwise comparison; only a partial order under approximate DP.
  bool leq(const PrivacyLoss& other) const {
    require_same_kind(other);
    return epsilon <= other.epsilon && delta <= other.delta;
  }

  static PrivacyLoss max(const PrivacyLoss& a, const PrivacyLoss& b) {
    a.require_same_kind(b);
    return PrivacyLoss{a.kind, a.epsilon > b.epsilon ? a.epsilon : b.epsilon,
                       a.delta > b.delta ? a.delta : b.delta};
  }

  bool operator==(const PrivacyLoss&) const = default;

  std::string to_string() const;

 private:
  void require_same_kind(const PrivacyLoss& other) const {
    if (kind != other.kind) {
      throw Error(ErrorKind::kHeterogeneousMeasures,
                  "cannot combine losses under different privacy measures");
    }
  }
};

}  // namespace privcalc

#endif  // PRIVCALC_PRIVACY_LOSS_HPP
