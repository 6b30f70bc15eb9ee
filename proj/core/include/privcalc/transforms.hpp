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

#ifndef PRIVCALC_TRANSFORMS_HPP
#define PRIVCALC_TRANSFORMS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "privcalc/transformation.hpp"

namespace privcalc {

using RecordPred = std::function<bool(const Record&)>;
using RecordFn = std::function<Record(const Record&)>;

// Total, disjoint assignment of records to pieces. Predicate form checks
// totality/disjointness per record at evaluation time; assignment-function
// and seeded forms are total and disjoint by construction.
class PartitionSpec {
 public:
  // Every record must match exactly one predicate.
  static PartitionSpec by_predicates(std::vector<RecordPred> predicates);

  // assign(record) must return a piece index < pieces.
  static PartitionSpec by_assignment(size_t pieces,
                                     std::function<size_t(const Record&)> assign);

  // Pseudorandom piece from a content hash of the record: the same record
  // value always lands in the same piece, which is what keeps partitioning
  // 1-stable. Used by sample-and-aggregate.
  static PartitionSpec seeded(size_t pieces, uint64_t seed);

  size_t pieces() const { return pieces_; }

  // Piece index for one record; OverlappingPieces / PartitionNotTotal for
  // ill-formed predicate sets.
  size_t assign(const Record& record) const;

  std::vector<Dataset> split(const Dataset& data) const;

 private:
  size_t pieces_ = 0;
  std::vector<RecordPred> predicates_;
  std::function<size_t(const Record&)> assign_;
};

// Record-wise map; 1-stable under both dataset metrics.
Transformation map_rows(const Domain& input_domain, const Metric& metric,
                        RecordFn f, Schema out_schema,
                        const std::string& name = "map_rows");

// Each record maps to k = fs.size() images; k-stable.
Transformation multi_map(const Domain& input_domain, const Metric& metric,
                         std::vector<RecordFn> fs, Schema out_schema,
                         const std::string& name = "multi_map");

// Keeps records satisfying pred; 1-stable under SymmetricDistance. Under
// ChangeOneDistance the output size is data-dependent, so the change-one
// metric cannot carry it and the metric is rejected.
Transformation filter_rows(const Domain& input_domain, const Metric& metric,
                           RecordPred pred,
                           const std::string& name = "filter_rows");

// Restricts a numeric column to [bounds.lower, bounds.upper]; 1-stable. The
// output column becomes float64 and the output domain records the bounds,
// which is what sum_clamped later keys on.
Transformation clamp(const Domain& input_domain, const Metric& metric,
                     const std::string& column, Bounds bounds);

// Sum of an already-clamped column; requires the input domain to carry the
// column's bounds (UnclampedDomain otherwise). Linear stability
// max(|lower|, |upper|) under SymmetricDistance, upper - lower under
// ChangeOneDistance.
Transformation sum_clamped(const Domain& input_domain, const Metric& metric,
                           const std::string& column);

// Dataset size; 1-stable under SymmetricDistance, 0-stable under
// ChangeOneDistance (n is public in bounded DP).
Transformation count(const Domain& input_domain, const Metric& metric);

// Splits into spec.pieces() disjoint datasets under PerPieceDistance;
// 1-stable under SymmetricDistance and 2-stable under ChangeOneDistance
// (a changed record can leave one piece and enter another).
Transformation partition(const Domain& input_domain, const Metric& metric,
                         const PartitionSpec& spec);

}  // namespace privcalc

#endif  // PRIVCALC_TRANSFORMS_HPP
