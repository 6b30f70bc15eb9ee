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

#ifndef PRIVCALC_VALUE_HPP
#define PRIVCALC_VALUE_HPP

#include <string>
#include <variant>
#include <vector>

#include "privcalc/data.hpp"

namespace privcalc {

// Runtime value flowing through a pipeline: a bit, a real scalar, a dataset,
// or a list of values (partition pieces, composed answers, block estimates).
class Value {
 public:
  using List = std::vector<Value>;

  Value() : v_(0.0) {}
  Value(bool b) : v_(b) {}
  Value(double x) : v_(x) {}
  Value(Dataset d) : v_(std::move(d)) {}
  Value(List l) : v_(std::move(l)) {}

  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_real() const { return std::holds_alternative<double>(v_); }
  bool is_dataset() const { return std::holds_alternative<Dataset>(v_); }
  bool is_list() const { return std::holds_alternative<List>(v_); }

  bool as_bool() const;
  double as_real() const;
  const Dataset& as_dataset() const;
  const List& as_list() const;

  // Scalar view: reals as-is, bits as 0/1.
  double scalar() const;

  bool operator==(const Value& other) const { return compare(*this, other) == 0; }

  // Total order over all values (datasets carry no NaNs, so reals are
  // totally ordered too). Used for canonical outcome enumeration.
  static int compare(const Value& a, const Value& b);

  // Short stable content digest, hex-encoded. Used in transcripts.
  std::string digest() const;

  std::string to_debug_string() const;

 private:
  std::variant<bool, double, Dataset, List> v_;
};

}  // namespace privcalc

#endif  // PRIVCALC_VALUE_HPP
