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

#include "privcalc/sampagg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "privcalc/combinators.hpp"
#include "privcalc/mechanisms.hpp"
#include "privcalc/transforms.hpp"

namespace privcalc {
namespace {

double column_value(const Dataset& data, size_t row, size_t col) {
  const Cell& cell = data.records()[row][col];
  if (std::holds_alternative<int64_t>(cell)) {
    return static_cast<double>(std::get<int64_t>(cell));
  }
  return std::get<double>(cell);
}

size_t numeric_column_index(const Dataset& data, const std::string& column) {
  int idx = data.schema().index_of(column);
  if (idx < 0) {
    throw Error(ErrorKind::kInvalidSchema,
                "estimator: no column named '" + column + "'");
  }
  CellKind kind = data.schema().at(static_cast<size_t>(idx)).kind;
  if (kind != CellKind::kInt64 && kind != CellKind::kFloat64) {
    throw Error(ErrorKind::kInvalidSchema,
                "estimator: column '" + column + "' is not numeric");
  }
  return static_cast<size_t>(idx);
}

void validate(const SampleAggregateOptions& options) {
  if (options.blocks < 2) {
    throw Error(ErrorKind::kTooFewBlocks,
                "sample-and-aggregate needs at least 2 blocks");
  }
  if (!(options.output_range.lower < options.output_range.upper)) {
    throw Error(ErrorKind::kBoundsInverted,
                "sample-and-aggregate output range must have lower < upper");
  }
}

std::vector<Dataset> assign_blocks(const Dataset& data, size_t m, uint64_t seed,
                                   BlockLayout layout) {
  if (layout == BlockLayout::kSeededHash) {
    return PartitionSpec::seeded(m, seed).split(data);
  }
  std::vector<std::vector<Record>> buckets(m);
  for (size_t i = 0; i < data.size(); ++i) {
    buckets[i % m].push_back(data.records()[i]);
  }
  std::vector<Dataset> blocks;
  blocks.reserve(m);
  for (auto& bucket : buckets) {
    blocks.emplace_back(data.schema(), std::move(bucket));
  }
  return blocks;
}

}  // namespace

EstimatorFn make_estimator(const std::string& name, const std::string& column,
                           Bounds output_range) {
  const double midpoint = (output_range.lower + output_range.upper) / 2.0;
  if (name == "mean") {
    return [column, midpoint](const Dataset& block) {
      if (block.empty()) return midpoint;
      size_t idx = numeric_column_index(block, column);
      double total = 0.0;
      for (size_t i = 0; i < block.size(); ++i) {
        total += column_value(block, i, idx);
      }
      return total / static_cast<double>(block.size());
    };
  }
  if (name == "median") {
    return [column, midpoint](const Dataset& block) {
      if (block.empty()) return midpoint;
      size_t idx = numeric_column_index(block, column);
      std::vector<double> values;
      values.reserve(block.size());
      for (size_t i = 0; i < block.size(); ++i) {
        values.push_back(column_value(block, i, idx));
      }
      std::sort(values.begin(), values.end());
      size_t n = values.size();
      return n % 2 == 1 ? values[n / 2]
                        : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    };
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown estimator '" + name + "'");
}

const std::vector<std::string>& estimator_names() {
  static const std::vector<std::string> names{"mean", "median"};
  return names;
}

std::vector<double> block_estimates(const Dataset& data, const EstimatorFn& f,
                                    const SampleAggregateOptions& options,
                                    BlockLayout layout) {
  validate(options);
  const Bounds& range = options.output_range;
  const double midpoint = (range.lower + range.upper) / 2.0;
  std::vector<double> estimates;
  estimates.reserve(options.blocks);
  for (const Dataset& block :
       assign_blocks(data, options.blocks, options.seed, layout)) {
    double estimate;
    if (options.estimator_timeout.count() > 0) {
      auto start = std::chrono::steady_clock::now();
      estimate = f(block);
      auto elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed > options.estimator_timeout) estimate = midpoint;
    } else {
      estimate = f(block);
    }
    if (!std::isfinite(estimate)) estimate = midpoint;
    estimates.push_back(std::min(std::max(estimate, range.lower), range.upper));
  }
  return estimates;
}

double sample_aggregate_exact(const Dataset& data, const EstimatorFn& f,
                              const SampleAggregateOptions& options,
                              BlockLayout layout) {
  std::vector<double> estimates = block_estimates(data, f, options, layout);
  double total = 0.0;
  for (double e : estimates) total += e;
  return total / static_cast<double>(estimates.size());
}

Measurement sample_and_aggregate(const Domain& input_domain, const Metric& metric,
                                 EstimatorFn f,
                                 const SampleAggregateOptions& options,
                                 double epsilon) {
  validate(options);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::kNonpositiveEpsilon,
                "epsilon must be positive and finite");
  }
  const size_t m = options.blocks;
  const Bounds range = options.output_range;
  const double width = range.upper - range.lower;

  // T_blocks: dataset -> m clamped block estimates. One insert or delete
  // perturbs a single block's estimate by at most the range width; a changed
  // record can leave one block and enter another, hence the doubling.
  const bool change_one = metric.kind() == Metric::Kind::kChangeOneDistance;
  SampleAggregateOptions opts = options;
  auto blocks_fn = [f, opts](const Value& v) {
    Value::List out;
    for (double e : block_estimates(v.as_dataset(), f, opts,
                                    BlockLayout::kSeededHash)) {
      out.emplace_back(e);
    }
    return Value(std::move(out));
  };
  Transformation t_blocks = make_transformation(
      "block_estimates[" + std::to_string(m) + "]", input_domain, metric,
      Domain::real_vector(m, range), Metric::l1(), std::move(blocks_fn),
      StabilityMap::linear(change_one ? 2.0 * width : width));

  // Mean of the m estimates is (1/m)-stable from L1 to absolute distance.
  auto mean_fn = [m](const Value& v) {
    double total = 0.0;
    for (const Value& e : v.as_list()) total += e.as_real();
    return Value(total / static_cast<double>(m));
  };
  Transformation t_mean = make_transformation(
      "block_mean", t_blocks.output_domain(), Metric::l1(), Domain::scalar(),
      Metric::absolute(), std::move(mean_fn),
      StabilityMap::linear(1.0 / static_cast<double>(m)));

  // Sensitivity of the block mean per unit dataset distance is width/m, so
  // Laplace(width/(m*eps)) prices the release at eps per unit.
  const double scale = width / (static_cast<double>(m) * epsilon);
  return chain_mt(laplace_noise(scale), chain_tt(t_mean, t_blocks));
}

}  // namespace privcalc
