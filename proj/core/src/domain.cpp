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

#include "privcalc/domain.hpp"

#include <sstream>

#include "privcalc/error.hpp"

namespace privcalc {

Domain Domain::scalar(std::optional<Bounds> bounds) {
  Domain d;
  d.kind_ = Kind::kScalar;
  if (bounds && bounds->lower > bounds->upper) {
    throw Error(ErrorKind::kBoundsInverted, "scalar bounds inverted");
  }
  d.bounds_ = bounds;
  return d;
}

Domain Domain::bit() {
  Domain d;
  d.kind_ = Kind::kBit;
  return d;
}

Domain Domain::data(Schema schema, std::map<std::string, Bounds> column_bounds) {
  Domain d;
  d.kind_ = Kind::kData;
  for (const auto& [name, b] : column_bounds) {
    if (schema.index_of(name) < 0) {
      throw Error(ErrorKind::kInvalidSchema, "bounds on unknown column '" + name + "'");
    }
    if (b.lower > b.upper) {
      throw Error(ErrorKind::kBoundsInverted, "bounds inverted on column '" + name + "'");
    }
  }
  d.schema_ = std::move(schema);
  d.column_bounds_ = std::move(column_bounds);
  return d;
}

Domain Domain::data_list(const Domain& element, size_t pieces) {
  if (element.kind_ != Kind::kData) {
    throw Error(ErrorKind::kInvalidArgument, "data_list element must be a data domain");
  }
  Domain d = element;
  d.kind_ = Kind::kDataList;
  d.count_ = pieces;
  return d;
}

Domain Domain::real_vector(size_t length, std::optional<Bounds> bounds) {
  if (bounds && bounds->lower > bounds->upper) {
    throw Error(ErrorKind::kBoundsInverted, "vector bounds inverted");
  }
  Domain d;
  d.kind_ = Kind::kRealVector;
  d.count_ = length;
  d.bounds_ = bounds;
  return d;
}

const Schema& Domain::schema() const {
  if (kind_ != Kind::kData && kind_ != Kind::kDataList) {
    throw Error(ErrorKind::kInvalidArgument, "domain has no schema");
  }
  return schema_;
}

std::optional<Bounds> Domain::column_bounds_for(const std::string& column) const {
  auto it = column_bounds_.find(column);
  if (it == column_bounds_.end()) return std::nullopt;
  return it->second;
}

namespace {

bool dataset_admitted(const Schema& schema,
                      const std::map<std::string, Bounds>& column_bounds,
                      const Dataset& data) {
  if (!(data.schema() == schema)) return false;
  for (const auto& [name, bounds] : column_bounds) {
    const int idx = schema.index_of(name);
    for (const auto& record : data.records()) {
      const Cell& cell = record[static_cast<size_t>(idx)];
      double x;
      if (const double* f = std::get_if<double>(&cell)) {
        x = *f;
      } else if (const int64_t* i = std::get_if<int64_t>(&cell)) {
        x = static_cast<double>(*i);
      } else {
        return false;
      }
      if (!bounds.contains(x)) return false;
    }
  }
  return true;
}

}  // namespace

bool Domain::admits(const Value& value) const {
  switch (kind_) {
    case Kind::kScalar:
      return value.is_real() && (!bounds_ || bounds_->contains(value.as_real()));
    case Kind::kBit:
      return value.is_bool();
    case Kind::kData:
      return value.is_dataset() &&
             dataset_admitted(schema_, column_bounds_, value.as_dataset());
    case Kind::kDataList: {
      if (!value.is_list()) return false;
      const auto& items = value.as_list();
      if (items.size() != count_) return false;
      for (const auto& item : items) {
        if (!item.is_dataset() ||
            !dataset_admitted(schema_, column_bounds_, item.as_dataset())) {
          return false;
        }
      }
      return true;
    }
    case Kind::kRealVector: {
      if (!value.is_list()) return false;
      const auto& items = value.as_list();
      if (items.size() != count_) return false;
      for (const auto& item : items) {
        if (!item.is_real()) return false;
        if (bounds_ && !bounds_->contains(item.as_real())) return false;
      }
      return true;
    }
  }
  return false;
}

bool Domain::operator==(const Domain& other) const {
  return kind_ == other.kind_ && bounds_ == other.bounds_ &&
         schema_ == other.schema_ && column_bounds_ == other.column_bounds_ &&
         count_ == other.count_;
}

std::string Domain::to_string() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::kScalar:
      out << "scalar";
      if (bounds_) out << "[" << bounds_->lower << ", " << bounds_->upper << "]";
      break;
    case Kind::kBit:
      out << "bit";
      break;
    case Kind::kData:
      out << "data(" << schema_.size() << " cols";
      if (!column_bounds_.empty()) out << ", " << column_bounds_.size() << " bounded";
      out << ")";
      break;
    case Kind::kDataList:
      out << "data_list(" << count_ << " pieces)";
      break;
    case Kind::kRealVector:
      out << "real_vector(" << count_ << ")";
      break;
  }
  return out.str();
}

}  // namespace privcalc
