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

#ifndef PRIVCALC_DOMAIN_HPP
#define PRIVCALC_DOMAIN_HPP

#include <map>
#include <optional>
#include <string>

#include "privcalc/value.hpp"

namespace privcalc {

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double x) const { return lower <= x && x <= upper; }
  bool operator==(const Bounds&) const = default;
};

// Carrier description for transformation and measurement endpoints.
//
//   Scalar      real number, optionally bounded
//   Bit         boolean
//   Data        dataset with a schema; columns may carry clamp bounds
//   DataList    fixed-arity list of datasets (partition output)
//   RealVector  fixed-length list of reals, optionally bounded entries
class Domain {
 public:
  enum class Kind { kScalar, kBit, kData, kDataList, kRealVector };

  static Domain scalar(std::optional<Bounds> bounds = std::nullopt);
  static Domain bit();
  static Domain data(Schema schema, std::map<std::string, Bounds> column_bounds = {});
  static Domain data_list(const Domain& element, size_t pieces);
  static Domain real_vector(size_t length, std::optional<Bounds> bounds = std::nullopt);

  Kind kind() const { return kind_; }
  bool is_data() const { return kind_ == Kind::kData; }

  const std::optional<Bounds>& bounds() const { return bounds_; }
  const Schema& schema() const;
  const std::map<std::string, Bounds>& column_bounds() const { return column_bounds_; }
  std::optional<Bounds> column_bounds_for(const std::string& column) const;
  size_t count() const { return count_; }

  // Membership check for runtime values (shape and schema; clamp bounds are
  // also enforced so that "already clamped" is a real precondition).
  bool admits(const Value& value) const;

  bool operator==(const Domain& other) const;

  std::string to_string() const;

 private:
  Kind kind_ = Kind::kScalar;
  std::optional<Bounds> bounds_;
  Schema schema_;
  std::map<std::string, Bounds> column_bounds_;
  size_t count_ = 0;
};

}  // namespace privcalc

#endif  // PRIVCALC_DOMAIN_HPP
