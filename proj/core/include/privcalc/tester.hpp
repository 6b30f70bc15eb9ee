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

#ifndef PRIVCALC_TESTER_HPP
#define PRIVCALC_TESTER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "privcalc/measurement.hpp"

namespace privcalc {

// ---------------------------------------------------------------------------
// Exact verification for small discrete mechanisms.

struct DivergenceWitness {
  Value x;
  Value x_prime;
  std::vector<Value> event;  // outcome set achieving the reported divergence
  double divergence = 0.0;
};

struct ExactCheckResult {
  bool pass = false;
  double max_divergence = 0.0;  // ln of worst probability ratio over all pairs
  double claimed_epsilon = 0.0;
  std::optional<DivergenceWitness> witness;  // the violating pair on FAIL
};

// Enumerates the full output distribution for every input and computes the
// exact max divergence over the adjacency relation (both orientations of
// each listed pair). PASS iff it is <= claimed epsilon + 1e-12. The input
// space is capped at 6 elements - this is a proof by enumeration, not a
// search heuristic. NotEnumerable if the mechanism exposes no distribution.
ExactCheckResult exact_divergence_check(
    const Measurement& m, const std::vector<Value>& input_space,
    const std::vector<std::pair<size_t, size_t>>& adjacent_pairs,
    double claimed_epsilon);

// Approximate-DP variant: checks the hockey-stick divergence
// sum_o max(0, P(o) - e^eps Q(o)) <= claimed delta + 1e-12.
ExactCheckResult exact_hockey_stick_check(
    const Measurement& m, const std::vector<Value>& input_space,
    const std::vector<std::pair<size_t, size_t>>& adjacent_pairs,
    double epsilon, double claimed_delta);

// ---------------------------------------------------------------------------
// Stochastic hypothesis tester with counterexample generation.

// One candidate adjacent input pair at distance 1 under the metric.
struct CandidatePair {
  std::string name;
  Value x;
  Value x_prime;
};

// The catalogue of adjacent pairs the tester probes: one-more-equal,
// one-extreme-above, empty-vs-singleton, ramp variants under
// SymmetricDistance; same-size one-changed variants under
// ChangeOneDistance; the flip pair for bits and a unit step for scalars.
// Values respect the domain's column bounds when present.
std::vector<CandidatePair> candidate_pairs(const Domain& domain,
                                           const Metric& metric);

struct EventTest {
  size_t pair_index = 0;
  std::string pair;
  bool swapped = false;     // true: x' plays the numerator role
  bool upper_tail = false;  // event {X > t} vs {X < t}
  double threshold = 0.0;
  double p1_hat = 0.0;
  double p2_hat = 0.0;
  double z = 0.0;
  double p_value = 1.0;
  bool rejected = false;
};

struct StochasticReport {
  bool pass = false;
  bool vacuous = false;  // infinite claim
  double claimed_epsilon = 0.0;
  size_t samples = 0;
  double significance = 0.0;
  double slack = 0.0;
  double z_threshold = 0.0;  // Bonferroni-corrected critical value
  uint64_t seed = 0;
  std::vector<EventTest> tests;
  // Most extreme rejection, if any; pairs with it a PASS/FAIL verdict. PASS
  // is statistical evidence, not proof.
  std::optional<EventTest> counterexample;

  std::string to_json() const;
};

// Samples the mechanism on catalogued adjacent pairs, estimates the
// probabilities of half-line events on a pooled-quantile threshold grid, and
// rejects when a one-sided test refutes p1 <= e^eps * p2 + slack at the
// given significance after Bonferroni correction over the whole grid.
StochasticReport stochastic_test(const Measurement& m, double claimed_epsilon,
                                 size_t samples, double significance,
                                 uint64_t seed);

// Re-runs only the counterexample's (pair, event) cell with the same seed
// and sample count; true iff the rejection reproduces exactly.
bool verify_counterexample(const Measurement& m, const StochasticReport& report);

}  // namespace privcalc

#endif  // PRIVCALC_TESTER_HPP
