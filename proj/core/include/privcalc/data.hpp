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

#ifndef PRIVCALC_DATA_HPP
#define PRIVCALC_DATA_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace privcalc {

enum class CellKind { kInt64, kFloat64, kBool, kString };

std::string_view to_string(CellKind kind);
CellKind cell_kind_from_string(std::string_view name);

// One cell of a record. Non-finite floats are rejected at dataset
// construction so that cells always admit a total order.
using Cell = std::variant<int64_t, double, bool, std::string>;

using Record = std::vector<Cell>;

bool cell_matches(const Cell& cell, CellKind kind);
int compare_cells(const Cell& a, const Cell& b);   // -1 / 0 / 1
int compare_records(const Record& a, const Record& b);

struct Column {
  std::string name;
  CellKind kind;

  bool operator==(const Column&) const = default;
};

// Ordered list of named, typed columns. Names are unique and non-empty.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<Column> columns);

  const std::vector<Column>& columns() const { return columns_; }
  size_t size() const { return columns_.size(); }

  // Index of `name`, or -1 if absent.
  int index_of(std::string_view name) const;
  const Column& at(size_t i) const { return columns_[i]; }

  bool conforms(const Record& record) const;

  std::string to_json() const;
  static Schema from_json(const std::string& text);

  bool operator==(const Schema&) const = default;

 private:
  std::vector<Column> columns_;
};

// Multiset of records conforming to a schema. Records are held in canonical
// sorted order, so record order is never observable: two datasets built from
// permutations of the same records compare equal and behave identically
// downstream (including under fixed seeds).
class Dataset {
 public:
  Dataset() = default;
  Dataset(Schema schema, std::vector<Record> records);

  const Schema& schema() const { return schema_; }
  const std::vector<Record>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  bool operator==(const Dataset& other) const {
    return schema_ == other.schema_ && records_ == other.records_;
  }

  // Multiset edit distances. symmetric_distance counts inserts plus deletes;
  // change_one_distance counts changed records at fixed n and is +infinity
  // when the sizes differ.
  static double symmetric_distance(const Dataset& a, const Dataset& b);
  static double change_one_distance(const Dataset& a, const Dataset& b);

 private:
  Schema schema_;
  std::vector<Record> records_;
};

int compare_datasets(const Dataset& a, const Dataset& b);

}  // namespace privcalc

#endif  // PRIVCALC_DATA_HPP
