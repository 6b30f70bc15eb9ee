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

#include "privcalc/transforms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "privcalc/rng.hpp"

namespace privcalc {
namespace {

const Schema& require_data(const Domain& domain, const char* op) {
  if (!domain.is_data()) {
    throw Error(ErrorKind::kDomainMismatch,
                std::string(op) + " requires a dataset domain, got " +
                    domain.to_string());
  }
  return domain.schema();
}

void require_dataset_metric(const Metric& metric, const char* op) {
  if (!metric.is_dataset_metric()) {
    throw Error(ErrorKind::kIncompatibleMetric,
                std::string(op) + " requires a dataset metric, got " +
                    std::string(metric.name()));
  }
}

// Stability constant for record-wise maps is the same under both dataset
// metrics; aggregate constants differ, so each caller picks its own.
bool is_change_one(const Metric& metric) {
  return metric.kind() == Metric::Kind::kChangeOneDistance;
}

size_t require_numeric_column(const Schema& schema, const std::string& column,
                              const char* op) {
  int idx = schema.index_of(column);
  if (idx < 0) {
    throw Error(ErrorKind::kInvalidSchema,
                std::string(op) + ": no column named '" + column + "'");
  }
  CellKind kind = schema.at(static_cast<size_t>(idx)).kind;
  if (kind != CellKind::kInt64 && kind != CellKind::kFloat64) {
    throw Error(ErrorKind::kInvalidSchema,
                std::string(op) + ": column '" + column + "' is not numeric");
  }
  return static_cast<size_t>(idx);
}

double numeric_cell(const Cell& cell) {
  if (std::holds_alternative<int64_t>(cell)) {
    return static_cast<double>(std::get<int64_t>(cell));
  }
  return std::get<double>(cell);
}

uint64_t hash_cell(const Cell& cell) {
  switch (cell.index()) {
    case 0:
      return Rng::mix(static_cast<uint64_t>(std::get<int64_t>(cell)));
    case 1:
      return Rng::mix(std::bit_cast<uint64_t>(std::get<double>(cell)));
    case 2:
      return Rng::mix(std::get<bool>(cell) ? 0x9E37ULL : 0x79B9ULL);
    default: {
      // FNV-1a over the bytes, then mixed.
      uint64_t h = 1469598103934665603ULL;
      for (unsigned char c : std::get<std::string>(cell)) {
        h = (h ^ c) * 1099511628211ULL;
      }
      return Rng::mix(h);
    }
  }
}

uint64_t hash_record(uint64_t seed, const Record& record) {
  uint64_t h = Rng::mix(seed);
  for (const Cell& cell : record) {
    h = Rng::mix(h ^ hash_cell(cell));
  }
  return h;
}

}  // namespace

PartitionSpec PartitionSpec::by_predicates(std::vector<RecordPred> predicates) {
  if (predicates.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "partition needs at least one piece");
  }
  PartitionSpec spec;
  spec.pieces_ = predicates.size();
  spec.predicates_ = std::move(predicates);
  return spec;
}

PartitionSpec PartitionSpec::by_assignment(
    size_t pieces, std::function<size_t(const Record&)> assign) {
  if (pieces == 0) {
    throw Error(ErrorKind::kInvalidArgument, "partition needs at least one piece");
  }
  PartitionSpec spec;
  spec.pieces_ = pieces;
  spec.assign_ = std::move(assign);
  return spec;
}

PartitionSpec PartitionSpec::seeded(size_t pieces, uint64_t seed) {
  if (pieces == 0) {
    throw Error(ErrorKind::kInvalidArgument, "partition needs at least one piece");
  }
  return by_assignment(pieces, [pieces, seed](const Record& record) {
    return static_cast<size_t>(hash_record(seed, record) % pieces);
  });
}

size_t PartitionSpec::assign(const Record& record) const {
  if (assign_) {
    size_t piece = assign_(record);
    if (piece >= pieces_) {
      throw Error(ErrorKind::kPartitionNotTotal,
                  "assignment returned piece index out of range");
    }
    return piece;
  }
  size_t match = pieces_;
  for (size_t i = 0; i < predicates_.size(); ++i) {
    if (predicates_[i](record)) {
      if (match != pieces_) {
        throw Error(ErrorKind::kOverlappingPieces,
                    "record matches pieces " + std::to_string(match) + " and " +
                        std::to_string(i));
      }
      match = i;
    }
  }
  if (match == pieces_) {
    throw Error(ErrorKind::kPartitionNotTotal, "record matches no piece");
  }
  return match;
}

std::vector<Dataset> PartitionSpec::split(const Dataset& data) const {
  std::vector<std::vector<Record>> buckets(pieces_);
  for (const Record& record : data.records()) {
    buckets[assign(record)].push_back(record);
  }
  std::vector<Dataset> out;
  out.reserve(pieces_);
  for (auto& bucket : buckets) {
    out.emplace_back(data.schema(), std::move(bucket));
  }
  return out;
}

Transformation map_rows(const Domain& input_domain, const Metric& metric,
                        RecordFn f, Schema out_schema, const std::string& name) {
  require_data(input_domain, "map_rows");
  require_dataset_metric(metric, "map_rows");
  Domain out_domain = Domain::data(out_schema);
  auto fn = [f, out_schema](const Value& v) {
    std::vector<Record> mapped;
    mapped.reserve(v.as_dataset().size());
    for (const Record& record : v.as_dataset().records()) {
      mapped.push_back(f(record));
    }
    return Value(Dataset(out_schema, std::move(mapped)));
  };
  return make_transformation(name, input_domain, metric, out_domain, metric,
                             std::move(fn), StabilityMap::linear(1.0));
}

Transformation multi_map(const Domain& input_domain, const Metric& metric,
                         std::vector<RecordFn> fs, Schema out_schema,
                         const std::string& name) {
  require_data(input_domain, "multi_map");
  require_dataset_metric(metric, "multi_map");
  if (fs.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "multi_map needs at least one map");
  }
  const double k = static_cast<double>(fs.size());
  Domain out_domain = Domain::data(out_schema);
  auto fn = [fs, out_schema](const Value& v) {
    std::vector<Record> mapped;
    mapped.reserve(v.as_dataset().size() * fs.size());
    for (const Record& record : v.as_dataset().records()) {
      for (const auto& f : fs) {
        mapped.push_back(f(record));
      }
    }
    return Value(Dataset(out_schema, std::move(mapped)));
  };
  return make_transformation(name, input_domain, metric, out_domain, metric,
                             std::move(fn), StabilityMap::linear(k));
}

Transformation filter_rows(const Domain& input_domain, const Metric& metric,
                           RecordPred pred, const std::string& name) {
  const Schema& schema = require_data(input_domain, "filter_rows");
  if (metric.kind() != Metric::Kind::kSymmetricDistance) {
    // A filtered output has data-dependent size, which the fixed-n
    // change-one metric cannot measure.
    throw Error(ErrorKind::kIncompatibleMetric,
                "filter_rows supports SymmetricDistance only");
  }
  auto fn = [pred, schema](const Value& v) {
    std::vector<Record> kept;
    for (const Record& record : v.as_dataset().records()) {
      if (pred(record)) kept.push_back(record);
    }
    return Value(Dataset(schema, std::move(kept)));
  };
  return make_transformation(name, input_domain, metric, input_domain, metric,
                             std::move(fn), StabilityMap::linear(1.0));
}

Transformation clamp(const Domain& input_domain, const Metric& metric,
                     const std::string& column, Bounds bounds) {
  const Schema& schema = require_data(input_domain, "clamp");
  require_dataset_metric(metric, "clamp");
  if (bounds.lower > bounds.upper) {
    throw Error(ErrorKind::kBoundsInverted,
                "clamp bounds [" + std::to_string(bounds.lower) + ", " +
                    std::to_string(bounds.upper) + "] are inverted");
  }
  size_t idx = require_numeric_column(schema, column, "clamp");

  std::vector<Column> out_columns = schema.columns();
  out_columns[idx].kind = CellKind::kFloat64;
  Schema out_schema(std::move(out_columns));

  std::map<std::string, Bounds> out_bounds = input_domain.column_bounds();
  out_bounds[column] = bounds;
  Domain out_domain = Domain::data(out_schema, std::move(out_bounds));

  auto fn = [idx, bounds, out_schema](const Value& v) {
    std::vector<Record> clamped = v.as_dataset().records();
    for (Record& record : clamped) {
      double x = numeric_cell(record[idx]);
      record[idx] = Cell(std::min(std::max(x, bounds.lower), bounds.upper));
    }
    return Value(Dataset(out_schema, std::move(clamped)));
  };
  return make_transformation("clamp(" + column + ")", input_domain, metric,
                             out_domain, metric, std::move(fn),
                             StabilityMap::linear(1.0));
}

Transformation sum_clamped(const Domain& input_domain, const Metric& metric,
                           const std::string& column) {
  const Schema& schema = require_data(input_domain, "sum_clamped");
  require_dataset_metric(metric, "sum_clamped");
  size_t idx = require_numeric_column(schema, column, "sum_clamped");
  auto bounds = input_domain.column_bounds_for(column);
  if (!bounds) {
    throw Error(ErrorKind::kUnclampedDomain,
                "sum_clamped: domain carries no bounds for column '" + column +
                    "'; clamp first");
  }
  // One insert/delete moves the sum by at most the largest magnitude in
  // range; one change moves it by at most the range width.
  const double c = is_change_one(metric)
                       ? bounds->upper - bounds->lower
                       : std::max(std::abs(bounds->lower), std::abs(bounds->upper));
  auto fn = [idx](const Value& v) {
    double total = 0.0;
    for (const Record& record : v.as_dataset().records()) {
      total += numeric_cell(record[idx]);
    }
    return Value(total);
  };
  return make_transformation("sum(" + column + ")", input_domain, metric,
                             Domain::scalar(), Metric::absolute(), std::move(fn),
                             StabilityMap::linear(c));
}

Transformation count(const Domain& input_domain, const Metric& metric) {
  require_data(input_domain, "count");
  require_dataset_metric(metric, "count");
  const double c = is_change_one(metric) ? 0.0 : 1.0;
  auto fn = [](const Value& v) {
    return Value(static_cast<double>(v.as_dataset().size()));
  };
  return make_transformation("count", input_domain, metric, Domain::scalar(),
                             Metric::absolute(), std::move(fn),
                             StabilityMap::linear(c));
}

Transformation partition(const Domain& input_domain, const Metric& metric,
                         const PartitionSpec& spec) {
  require_data(input_domain, "partition");
  require_dataset_metric(metric, "partition");
  const double c = is_change_one(metric) ? 2.0 : 1.0;
  Domain out_domain = Domain::data_list(input_domain, spec.pieces());
  auto fn = [spec](const Value& v) {
    Value::List pieces;
    for (Dataset& piece : spec.split(v.as_dataset())) {
      pieces.emplace_back(std::move(piece));
    }
    return Value(std::move(pieces));
  };
  return make_transformation("partition", input_domain, metric, out_domain,
                             Metric::per_piece(), std::move(fn),
                             StabilityMap::linear(c));
}

}  // namespace privcalc
