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

#include "privcalc/metric.hpp"

#include <cmath>
#include <limits>

#include "privcalc/error.hpp"

namespace privcalc {

bool Metric::applies_to(const Domain& domain) const {
  switch (kind_) {
    case Kind::kSymmetricDistance:
    case Kind::kChangeOneDistance:
      return domain.kind() == Domain::Kind::kData;
    case Kind::kAbsoluteDistance:
      return domain.kind() == Domain::Kind::kScalar ||
             domain.kind() == Domain::Kind::kBit;
    case Kind::kL1Distance:
      return domain.kind() == Domain::Kind::kRealVector;
    case Kind::kPerPieceDistance:
      return domain.kind() == Domain::Kind::kDataList;
  }
  return false;
}

double Metric::distance(const Value& a, const Value& b) const {
  switch (kind_) {
    case Kind::kSymmetricDistance:
      return Dataset::symmetric_distance(a.as_dataset(), b.as_dataset());
    case Kind::kChangeOneDistance:
      return Dataset::change_one_distance(a.as_dataset(), b.as_dataset());
    case Kind::kAbsoluteDistance:
      return std::abs(a.scalar() - b.scalar());
    case Kind::kL1Distance: {
      const auto& x = a.as_list();
      const auto& y = b.as_list();
      if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
      double total = 0.0;
      for (size_t i = 0; i < x.size(); ++i) {
        total += std::abs(x[i].as_real() - y[i].as_real());
      }
      return total;
    }
    case Kind::kPerPieceDistance: {
      double total = 0.0;
      for (double d : per_piece_distances(a, b)) total += d;
      return total;
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown metric");
}

std::vector<double> Metric::per_piece_distances(const Value& a, const Value& b) const {
  if (kind_ != Kind::kPerPieceDistance) {
    throw Error(ErrorKind::kInvalidArgument, "not a per-piece metric");
  }
  const auto& x = a.as_list();
  const auto& y = b.as_list();
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kArityMismatch, "piece counts differ");
  }
  std::vector<double> out;
  out.reserve(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    out.push_back(Dataset::symmetric_distance(x[i].as_dataset(), y[i].as_dataset()));
  }
  return out;
}

std::string_view Metric::name() const {
  switch (kind_) {
    case Kind::kSymmetricDistance:
      return "SymmetricDistance";
    case Kind::kChangeOneDistance:
      return "ChangeOneDistance";
    case Kind::kAbsoluteDistance:
      return "AbsoluteDistance";
    case Kind::kL1Distance:
      return "L1Distance";
    case Kind::kPerPieceDistance:
      return "PerPieceDistance";
  }
  return "unknown";
}

}  // namespace privcalc
