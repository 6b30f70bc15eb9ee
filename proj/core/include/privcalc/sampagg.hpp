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

#ifndef PRIVCALC_SAMPAGG_HPP
#define PRIVCALC_SAMPAGG_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "privcalc/measurement.hpp"

namespace privcalc {

// Non-private per-block estimator. Estimators need no privacy analysis of
// their own: their influence is bounded by clamping the block estimates.
using EstimatorFn = std::function<double(const Dataset&)>;

// Named estimators usable from plans: "mean" and "median" of a numeric
// column. Empty blocks contribute the output-range midpoint.
EstimatorFn make_estimator(const std::string& name, const std::string& column,
                           Bounds output_range);
const std::vector<std::string>& estimator_names();

// How records are assigned to blocks.
//
//   kSeededHash   pseudorandom piece from a content hash: the same record
//                 value always lands in the same block, so one insert or
//                 delete perturbs exactly one block. This is the mode the
//                 privacy map is stated for.
//   kRoundRobin   block i % m over the canonical record order. Deterministic
//                 and convenient for worked examples, but index-based: an
//                 insert can shift every later record's block, so no
//                 stability claim attaches. Exposed only through the exact
//                 (noise-free) helpers below, never through the Measurement.
enum class BlockLayout { kSeededHash, kRoundRobin };

struct SampleAggregateOptions {
  size_t blocks = 0;
  uint64_t seed = 0;
  Bounds output_range;
  // Per-block wall-clock limit for the estimator; a block whose estimator
  // overruns contributes the range midpoint instead. Zero disables the
  // check, which also makes results timing-independent.
  std::chrono::milliseconds estimator_timeout{0};
};

// Clamped per-block estimates, in block order.
std::vector<double> block_estimates(const Dataset& data, const EstimatorFn& f,
                                    const SampleAggregateOptions& options,
                                    BlockLayout layout = BlockLayout::kSeededHash);

// The noise-free core: mean of the clamped block estimates.
double sample_aggregate_exact(const Dataset& data, const EstimatorFn& f,
                              const SampleAggregateOptions& options,
                              BlockLayout layout = BlockLayout::kSeededHash);

// The private pipeline: hash-partition into m blocks, estimate per block,
// clamp to [L, U], release the mean plus Laplace((U-L)/(m*eps)).
// loss_at(1) = eps under SymmetricDistance; a changed record can move
// between blocks, so the map doubles under ChangeOneDistance.
Measurement sample_and_aggregate(const Domain& input_domain, const Metric& metric,
                                 EstimatorFn f,
                                 const SampleAggregateOptions& options,
                                 double epsilon);

}  // namespace privcalc

#endif  // PRIVCALC_SAMPAGG_HPP
