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

#ifndef PRIVCALC_METRIC_HPP
#define PRIVCALC_METRIC_HPP

#include <string>
#include <vector>

#include "privcalc/domain.hpp"
#include "privcalc/value.hpp"

namespace privcalc {

// Distance notion together with the carrier it applies to:
//
//   SymmetricDistance   datasets; insert/delete count (unbounded DP)
//   ChangeOneDistance   datasets; records changed at fixed n (bounded DP)
//   AbsoluteDistance    scalars and bits; |y - y'|
//   L1Distance          real vectors; sum of coordinate gaps
//   PerPieceDistance    dataset lists; per-piece symmetric distances,
//                       aggregated by sum
class Metric {
 public:
  enum class Kind {
    kSymmetricDistance,
    kChangeOneDistance,
    kAbsoluteDistance,
    kL1Distance,
    kPerPieceDistance,
  };

  Metric() = default;
  Metric(Kind kind) : kind_(kind) {}

  static Metric symmetric() { return Metric(Kind::kSymmetricDistance); }
  static Metric change_one() { return Metric(Kind::kChangeOneDistance); }
  static Metric absolute() { return Metric(Kind::kAbsoluteDistance); }
  static Metric l1() { return Metric(Kind::kL1Distance); }
  static Metric per_piece() { return Metric(Kind::kPerPieceDistance); }

  Kind kind() const { return kind_; }
  bool is_dataset_metric() const {
    return kind_ == Kind::kSymmetricDistance || kind_ == Kind::kChangeOneDistance;
  }

  bool applies_to(const Domain& domain) const;

  // Distance between two values of the carrier. PerPieceDistance returns the
  // sum over pieces; per_piece_distances exposes the underlying vector.
  double distance(const Value& a, const Value& b) const;
  std::vector<double> per_piece_distances(const Value& a, const Value& b) const;

  bool operator==(const Metric&) const = default;

  std::string_view name() const;

 private:
  Kind kind_ = Kind::kSymmetricDistance;
};

}  // namespace privcalc

#endif  // PRIVCALC_METRIC_HPP
