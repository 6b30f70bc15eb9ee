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

#ifndef PRIVCALC_COMBINATORS_HPP
#define PRIVCALC_COMBINATORS_HPP

#include <optional>
#include <string>
#include <vector>

#include "privcalc/measurement.hpp"
#include "privcalc/transformation.hpp"
#include "privcalc/transforms.hpp"

namespace privcalc {

// t2 after t1. Stabilities compose by function composition; linear constants
// multiply (a c1-stable into a c2-stable is c1*c2-stable).
Transformation chain_tt(const Transformation& t2, const Transformation& t1);

// m after t: privacy map d -> m.privacy(t.stability(d)), so a c-stable
// transformation into an eps-per-unit measurement costs c*eps per unit.
Measurement chain_mt(const Measurement& m, const Transformation& t);

// Joint release of all measurements on the same input; the answer is the
// list of component answers in declared order and the losses add. Component
// RNG streams are derived by index, so components are independent and the
// joint replays bit-identically.
Measurement compose_basic(std::vector<Measurement> ms);

// Applies ms[i] to piece i of the partition; the loss is d times the largest
// per-unit component loss, since d edits touch at most d pieces.
// SymmetricDistance only.
Measurement compose_parallel(const Domain& input_domain, const Metric& metric,
                             const PartitionSpec& spec,
                             std::vector<Measurement> ms);

// Reinterprets a pure-DP measurement under approximate DP: eps -> (eps, 0).
// The explicit embedding replaces silent cross-measure coercion, which
// compose_basic rejects.
Measurement embed_approx(const Measurement& m);

// Deterministic function of a released answer; the privacy map is unchanged
// (resilience to post-processing). Enumerable mechanisms stay enumerable via
// the pushforward distribution.
Measurement post_process(const Measurement& m,
                         std::function<Value(const Value&)> f,
                         const std::string& name);

// Ordered stages: zero or more transformations, then exactly one
// measurement. collapse() folds the stages with chain_tt/chain_mt.
class Pipeline {
 public:
  Pipeline& add(Transformation t);
  Pipeline& finish(Measurement m);

  bool finished() const { return measurement_.has_value(); }

  // The equivalent single measurement; PlanInvalid if no measurement yet.
  Measurement collapse() const;

 private:
  std::vector<Transformation> stages_;
  std::optional<Measurement> measurement_;
};

}  // namespace privcalc

#endif  // PRIVCALC_COMBINATORS_HPP
