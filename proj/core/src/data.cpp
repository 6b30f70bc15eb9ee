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

#include "privcalc/data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "json.hpp"
#include "privcalc/error.hpp"

namespace privcalc {

std::string_view to_string(CellKind kind) {
  switch (kind) {
    case CellKind::kInt64:
      return "int64";
    case CellKind::kFloat64:
      return "float64";
    case CellKind::kBool:
      return "bool";
    case CellKind::kString:
      return "string";
  }
  return "unknown";
}

CellKind cell_kind_from_string(std::string_view name) {
  if (name == "int64") return CellKind::kInt64;
  if (name == "float64") return CellKind::kFloat64;
  if (name == "bool") return CellKind::kBool;
  if (name == "string") return CellKind::kString;
  throw Error(ErrorKind::kInvalidSchema,
              "unknown cell kind '" + std::string(name) + "'");
}

bool cell_matches(const Cell& cell, CellKind kind) {
  switch (kind) {
    case CellKind::kInt64:
      return std::holds_alternative<int64_t>(cell);
    case CellKind::kFloat64:
      return std::holds_alternative<double>(cell);
    case CellKind::kBool:
      return std::holds_alternative<bool>(cell);
    case CellKind::kString:
      return std::holds_alternative<std::string>(cell);
  }
  return false;
}

int compare_cells(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if (x < y) return -1;
        if (y < x) return 1;
        return 0;
      },
      a);
}

int compare_records(const Record& a, const Record& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare_cells(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

Schema::Schema(std::vector<Column> columns) : columns_(std::move(columns)) {
  std::set<std::string> seen;
  for (const auto& col : columns_) {
    if (col.name.empty()) {
      throw Error(ErrorKind::kInvalidSchema, "column name must be non-empty");
    }
    if (!seen.insert(col.name).second) {
      throw Error(ErrorKind::kInvalidSchema,
                  "duplicate column name '" + col.name + "'");
    }
  }
}

int Schema::index_of(std::string_view name) const {
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool Schema::conforms(const Record& record) const {
  if (record.size() != columns_.size()) return false;
  for (size_t i = 0; i < record.size(); ++i) {
    if (!cell_matches(record[i], columns_[i].kind)) return false;
  }
  return true;
}

std::string Schema::to_json() const {
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const auto& col : columns_) {
    cols.push_back({{"name", col.name}, {"kind", std::string(to_string(col.kind))}});
  }
  nlohmann::ordered_json doc;
  doc["columns"] = cols;
  return doc.dump();
}

Schema Schema::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidSchema, std::string("bad JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("columns") || !doc["columns"].is_array()) {
    throw Error(ErrorKind::kInvalidSchema, "expected {\"columns\": [...]}");
  }
  std::vector<Column> cols;
  for (const auto& c : doc["columns"]) {
    if (!c.is_object() || !c.contains("name") || !c.contains("kind") ||
        !c["name"].is_string() || !c["kind"].is_string()) {
      throw Error(ErrorKind::kInvalidSchema,
                  "each column needs string fields 'name' and 'kind'");
    }
    cols.push_back({c["name"].get<std::string>(),
                    cell_kind_from_string(c["kind"].get<std::string>())});
  }
  return Schema(std::move(cols));
}

Dataset::Dataset(Schema schema, std::vector<Record> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
  for (const auto& record : records_) {
    if (!schema_.conforms(record)) {
      throw Error(ErrorKind::kInvalidRecord, "record does not conform to schema");
    }
    for (const auto& cell : record) {
      if (const double* x = std::get_if<double>(&cell); x && !std::isfinite(*x)) {
        throw Error(ErrorKind::kInvalidRecord, "non-finite float cell");
      }
    }
  }
  std::sort(records_.begin(), records_.end(),
            [](const Record& a, const Record& b) { return compare_records(a, b) < 0; });
}

namespace {

// Counts records only in `a`, walking both canonically sorted record lists.
size_t one_sided_difference(const std::vector<Record>& a, const std::vector<Record>& b) {
  size_t i = 0, j = 0, only_a = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_records(a[i], b[j]);
    if (c < 0) {
      ++only_a;
      ++i;
    } else if (c > 0) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return only_a + (a.size() - i);
}

}  // namespace

double Dataset::symmetric_distance(const Dataset& a, const Dataset& b) {
  return static_cast<double>(one_sided_difference(a.records_, b.records_) +
                             one_sided_difference(b.records_, a.records_));
}

double Dataset::change_one_distance(const Dataset& a, const Dataset& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(one_sided_difference(a.records_, b.records_));
}

int compare_datasets(const Dataset& a, const Dataset& b) {
  const auto& ra = a.records();
  const auto& rb = b.records();
  const size_t n = std::min(ra.size(), rb.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare_records(ra[i], rb[i]);
    if (c != 0) return c;
  }
  if (ra.size() != rb.size()) return ra.size() < rb.size() ? -1 : 1;
  return 0;
}

}  // namespace privcalc
