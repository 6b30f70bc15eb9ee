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

#include "privcalc/tester.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "privcalc/rng.hpp"

namespace privcalc {
namespace {

constexpr double kExactTolerance = 1e-12;
constexpr double kStochasticSlack = 1e-3;
constexpr size_t kGridSamplesPerSide = 5000;
constexpr uint64_t kGridSalt = 0x9100;
constexpr uint64_t kCountSalt = 0xC000;

OutcomeDistribution canonical_distribution(const Measurement& m, const Value& x) {
  OutcomeDistribution dist = m.enumerate(x);
  double total = 0.0;
  for (const auto& point : dist) {
    if (point.probability < 0.0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "enumerated distribution has a negative probability");
    }
    total += point.probability;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::kInvalidArgument,
                "enumerated distribution does not sum to 1");
  }
  std::sort(dist.begin(), dist.end(), [](const OutcomePoint& a, const OutcomePoint& b) {
    return Value::compare(a.value, b.value) < 0;
  });
  OutcomeDistribution merged;
  for (auto& point : dist) {
    if (!merged.empty() && merged.back().value == point.value) {
      merged.back().probability += point.probability;
    } else {
      merged.push_back(std::move(point));
    }
  }
  return merged;
}

// Walks the union of two sorted supports, yielding (outcome, p, q).
template <typename Fn>
void for_joint_support(const OutcomeDistribution& p, const OutcomeDistribution& q,
                       Fn&& fn) {
  size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    int order = i == p.size()   ? 1
                : j == q.size() ? -1
                                : Value::compare(p[i].value, q[j].value);
    if (order < 0) {
      fn(p[i].value, p[i].probability, 0.0);
      ++i;
    } else if (order > 0) {
      fn(q[j].value, 0.0, q[j].probability);
      ++j;
    } else {
      fn(p[i].value, p[i].probability, q[j].probability);
      ++i;
      ++j;
    }
  }
}

void validate_space(const std::vector<Value>& input_space,
                    const std::vector<std::pair<size_t, size_t>>& adjacent) {
  if (input_space.empty() || input_space.size() > 6) {
    throw Error(ErrorKind::kInvalidArgument,
                "exact checks enumerate input spaces of 1..6 elements");
  }
  for (const auto& [a, b] : adjacent) {
    if (a >= input_space.size() || b >= input_space.size()) {
      throw Error(ErrorKind::kInvalidArgument, "adjacency index out of range");
    }
  }
}

}  // namespace

ExactCheckResult exact_divergence_check(
    const Measurement& m, const std::vector<Value>& input_space,
    const std::vector<std::pair<size_t, size_t>>& adjacent_pairs,
    double claimed_epsilon) {
  validate_space(input_space, adjacent_pairs);
  std::vector<OutcomeDistribution> dists;
  dists.reserve(input_space.size());
  for (const Value& x : input_space) {
    dists.push_back(canonical_distribution(m, x));
  }

  ExactCheckResult result;
  result.claimed_epsilon = claimed_epsilon;
  result.max_divergence = 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : adjacent_pairs) {
    for (const auto& [p_idx, q_idx] :
         {std::pair<size_t, size_t>{a, b}, std::pair<size_t, size_t>{b, a}}) {
      // Pure DP: the worst event is always a single outcome, so per-outcome
      // log ratios decide the max divergence over all outcome sets.
      double pair_max = -std::numeric_limits<double>::infinity();
      std::vector<Value> event;
      for_joint_support(dists[p_idx], dists[q_idx],
                        [&](const Value& o, double p, double q) {
                          if (p == 0.0) return;  // contributes ratio -inf
                          double ratio = q == 0.0
                                             ? std::numeric_limits<double>::infinity()
                                             : std::log(p / q);
                          if (ratio > pair_max) {
                            pair_max = ratio;
                            event.clear();
                          }
                          if (ratio == pair_max) event.push_back(o);
                        });
      if (pair_max > worst) {
        worst = pair_max;
        result.witness = DivergenceWitness{input_space[p_idx], input_space[q_idx],
                                           std::move(event), pair_max};
      }
    }
  }
  result.max_divergence = worst;
  result.pass = worst <= claimed_epsilon + kExactTolerance;
  if (result.pass) result.witness.reset();
  return result;
}

ExactCheckResult exact_hockey_stick_check(
    const Measurement& m, const std::vector<Value>& input_space,
    const std::vector<std::pair<size_t, size_t>>& adjacent_pairs,
    double epsilon, double claimed_delta) {
  validate_space(input_space, adjacent_pairs);
  std::vector<OutcomeDistribution> dists;
  dists.reserve(input_space.size());
  for (const Value& x : input_space) {
    dists.push_back(canonical_distribution(m, x));
  }

  const double factor = std::exp(epsilon);
  ExactCheckResult result;
  result.claimed_epsilon = epsilon;
  double worst = 0.0;
  for (const auto& [a, b] : adjacent_pairs) {
    for (const auto& [p_idx, q_idx] :
         {std::pair<size_t, size_t>{a, b}, std::pair<size_t, size_t>{b, a}}) {
      // The optimal event collects exactly the outcomes with p > e^eps q.
      double delta = 0.0;
      std::vector<Value> event;
      for_joint_support(dists[p_idx], dists[q_idx],
                        [&](const Value& o, double p, double q) {
                          double gap = p - factor * q;
                          if (gap > 0.0) {
                            delta += gap;
                            event.push_back(o);
                          }
                        });
      if (delta > worst) {
        worst = delta;
        result.witness = DivergenceWitness{input_space[p_idx], input_space[q_idx],
                                           std::move(event), delta};
      }
    }
  }
  result.max_divergence = worst;
  result.pass = worst <= claimed_delta + kExactTolerance;
  if (result.pass) result.witness.reset();
  return result;
}

namespace {

double clamp_to(double x, const std::optional<Bounds>& bounds) {
  if (!bounds) return x;
  return std::min(std::max(x, bounds->lower), bounds->upper);
}

Cell default_cell(CellKind kind, const std::optional<Bounds>& bounds) {
  switch (kind) {
    case CellKind::kInt64:
      return Cell(static_cast<int64_t>(std::llround(clamp_to(0.0, bounds))));
    case CellKind::kFloat64:
      return Cell(clamp_to(0.0, bounds));
    case CellKind::kBool:
      return Cell(false);
    case CellKind::kString:
      return Cell(std::string("x"));
  }
  return Cell(std::string());
}

}  // namespace

std::vector<CandidatePair> candidate_pairs(const Domain& domain,
                                           const Metric& metric) {
  std::vector<CandidatePair> pairs;
  if (domain.kind() == Domain::Kind::kBit) {
    pairs.push_back({"bit_flip", Value(false), Value(true)});
    return pairs;
  }
  if (domain.kind() == Domain::Kind::kScalar) {
    double lo = clamp_to(0.0, domain.bounds());
    double hi = clamp_to(lo + 1.0, domain.bounds());
    pairs.push_back({"unit_step", Value(lo), Value(hi)});
    return pairs;
  }
  if (!domain.is_data()) {
    throw Error(ErrorKind::kInvalidArgument,
                "no candidate catalogue for domain " + domain.to_string());
  }

  const Schema& schema = domain.schema();
  int target = -1;
  for (size_t i = 0; i < schema.size(); ++i) {
    CellKind kind = schema.at(i).kind;
    if (kind == CellKind::kInt64 || kind == CellKind::kFloat64) {
      target = static_cast<int>(i);
      break;
    }
  }
  auto record_with = [&](double v) {
    Record record;
    record.reserve(schema.size());
    for (size_t i = 0; i < schema.size(); ++i) {
      auto bounds = domain.column_bounds_for(schema.at(i).name);
      if (static_cast<int>(i) == target) {
        double clamped = clamp_to(v, bounds);
        if (schema.at(i).kind == CellKind::kInt64) {
          record.push_back(Cell(static_cast<int64_t>(std::llround(clamped))));
        } else {
          record.push_back(Cell(clamped));
        }
      } else {
        record.push_back(default_cell(schema.at(i).kind, bounds));
      }
    }
    return record;
  };
  auto dataset = [&](const std::vector<double>& vs) {
    std::vector<Record> records;
    records.reserve(vs.size());
    for (double v : vs) records.push_back(record_with(v));
    return Value(Dataset(schema, std::move(records)));
  };

  if (metric.kind() == Metric::Kind::kSymmetricDistance) {
    pairs.push_back({"empty_vs_singleton", dataset({}), dataset({0})});
    pairs.push_back({"one_more_equal", dataset({1, 1, 1, 1, 1}),
                     dataset({1, 1, 1, 1, 1, 1})});
    pairs.push_back({"one_extreme_above", dataset({1, 1, 1, 1, 1}),
                     dataset({1, 1, 1, 1, 1, 100})});
    pairs.push_back({"ramp_plus_top", dataset({0, 1, 2, 3, 4}),
                     dataset({0, 1, 2, 3, 4, 4})});
  } else if (metric.kind() == Metric::Kind::kChangeOneDistance) {
    pairs.push_back({"one_changed_extreme", dataset({0, 0, 0, 0, 0}),
                     dataset({0, 0, 0, 0, 100})});
    pairs.push_back({"one_changed_unit", dataset({1, 1, 1, 1, 1}),
                     dataset({1, 1, 1, 1, 0})});
    pairs.push_back({"singleton_changed", dataset({0}), dataset({100})});
  } else {
    throw Error(ErrorKind::kIncompatibleMetric,
                "tester catalogues cover dataset metrics only");
  }
  return pairs;
}

namespace {

struct PairCounts {
  std::vector<double> thresholds;
  // counts[side][tail][threshold]: side 0 = x, 1 = x'; tail 0 = >, 1 = <.
  std::vector<size_t> over[2];
  std::vector<size_t> under[2];
};

std::vector<double> threshold_grid(const Measurement& m, const CandidatePair& pair,
                                   uint64_t seed, size_t pair_index) {
  std::vector<double> pooled;
  pooled.reserve(2 * kGridSamplesPerSide);
  for (int side = 0; side < 2; ++side) {
    Rng rng = Rng(seed).derive(kGridSalt + 2 * pair_index + side);
    const Value& input = side == 0 ? pair.x : pair.x_prime;
    for (size_t k = 0; k < kGridSamplesPerSide; ++k) {
      pooled.push_back(m(input, rng).scalar());
    }
  }
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> grid;
  for (int decile = 1; decile <= 9; ++decile) {
    double t = pooled[pooled.size() * decile / 10];
    if (grid.empty() || t > grid.back()) grid.push_back(t);
  }
  return grid;
}

PairCounts count_events(const Measurement& m, const CandidatePair& pair,
                        std::vector<double> thresholds, uint64_t seed,
                        size_t pair_index, size_t samples) {
  PairCounts counts;
  counts.thresholds = std::move(thresholds);
  for (int side = 0; side < 2; ++side) {
    counts.over[side].assign(counts.thresholds.size(), 0);
    counts.under[side].assign(counts.thresholds.size(), 0);
    Rng rng = Rng(seed).derive(kCountSalt + 2 * pair_index + side);
    const Value& input = side == 0 ? pair.x : pair.x_prime;
    for (size_t k = 0; k < samples; ++k) {
      double v = m(input, rng).scalar();
      for (size_t t = 0; t < counts.thresholds.size(); ++t) {
        counts.over[side][t] += v > counts.thresholds[t];
        counts.under[side][t] += v < counts.thresholds[t];
      }
    }
  }
  return counts;
}

EventTest score_cell(double p1, double p2, double claimed_epsilon, size_t samples) {
  EventTest cell;
  cell.p1_hat = p1;
  cell.p2_hat = p2;
  const double factor = std::exp(claimed_epsilon);
  const double n = static_cast<double>(samples);
  double diff = p1 - factor * p2 - kStochasticSlack;
  double variance =
      (p1 * (1.0 - p1) + factor * factor * p2 * (1.0 - p2)) / n;
  if (variance <= 0.0 || !std::isfinite(variance)) {
    cell.z = diff > 0.0 ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
  } else {
    cell.z = diff / std::sqrt(variance);
  }
  boost::math::normal_distribution<double> normal;
  if (std::isfinite(cell.z)) {
    cell.p_value = boost::math::cdf(boost::math::complement(normal, cell.z));
  } else {
    cell.p_value = cell.z > 0.0 ? 0.0 : 1.0;
  }
  return cell;
}

}  // namespace

StochasticReport stochastic_test(const Measurement& m, double claimed_epsilon,
                                 size_t samples, double significance,
                                 uint64_t seed) {
  if (samples < 10000) {
    throw Error(ErrorKind::kInsufficientSamples,
                "stochastic testing needs at least 10^4 samples per input");
  }
  if (!(significance > 0.0) || significance > 0.1) {
    throw Error(ErrorKind::kInvalidArgument, "significance must lie in (0, 0.1]");
  }
  if (claimed_epsilon < 0.0 || std::isnan(claimed_epsilon)) {
    throw Error(ErrorKind::kInvalidArgument, "claimed epsilon must be >= 0");
  }

  StochasticReport report;
  report.claimed_epsilon = claimed_epsilon;
  report.samples = samples;
  report.significance = significance;
  report.slack = kStochasticSlack;
  report.seed = seed;
  if (std::isinf(claimed_epsilon)) {
    report.pass = true;
    report.vacuous = true;
    return report;
  }

  std::vector<CandidatePair> pairs = candidate_pairs(m.input_domain(), m.input_metric());
  std::vector<PairCounts> all_counts;
  all_counts.reserve(pairs.size());
  size_t total_cells = 0;
  for (size_t i = 0; i < pairs.size(); ++i) {
    std::vector<double> grid = threshold_grid(m, pairs[i], seed, i);
    all_counts.push_back(count_events(m, pairs[i], std::move(grid), seed, i, samples));
    total_cells += all_counts.back().thresholds.size() * 4;  // 2 tails x 2 directions
  }

  boost::math::normal_distribution<double> normal;
  report.z_threshold = boost::math::quantile(
      normal, 1.0 - significance / static_cast<double>(total_cells));

  for (size_t i = 0; i < pairs.size(); ++i) {
    const PairCounts& counts = all_counts[i];
    const double n = static_cast<double>(samples);
    for (size_t t = 0; t < counts.thresholds.size(); ++t) {
      for (int tail = 0; tail < 2; ++tail) {
        const auto& hits = tail == 0 ? counts.over : counts.under;
        for (int swapped = 0; swapped < 2; ++swapped) {
          double p1 = static_cast<double>(hits[swapped][t]) / n;
          double p2 = static_cast<double>(hits[1 - swapped][t]) / n;
          EventTest cell = score_cell(p1, p2, claimed_epsilon, samples);
          cell.pair_index = i;
          cell.pair = pairs[i].name;
          cell.swapped = swapped == 1;
          cell.upper_tail = tail == 0;
          cell.threshold = counts.thresholds[t];
          cell.rejected = cell.z > report.z_threshold;
          if (cell.rejected &&
              (!report.counterexample || cell.z > report.counterexample->z)) {
            report.counterexample = cell;
          }
          report.tests.push_back(std::move(cell));
        }
      }
    }
  }
  report.pass = !report.counterexample.has_value();
  return report;
}

bool verify_counterexample(const Measurement& m, const StochasticReport& report) {
  if (!report.counterexample) return false;
  const EventTest& ce = *report.counterexample;
  std::vector<CandidatePair> pairs = candidate_pairs(m.input_domain(), m.input_metric());
  if (ce.pair_index >= pairs.size()) return false;
  PairCounts counts = count_events(m, pairs[ce.pair_index], {ce.threshold},
                                   report.seed, ce.pair_index, report.samples);
  const auto& hits = ce.upper_tail ? counts.over : counts.under;
  const double n = static_cast<double>(report.samples);
  double p1 = static_cast<double>(hits[ce.swapped ? 1 : 0][0]) / n;
  double p2 = static_cast<double>(hits[ce.swapped ? 0 : 1][0]) / n;
  EventTest cell = score_cell(p1, p2, report.claimed_epsilon, report.samples);
  return cell.p1_hat == ce.p1_hat && cell.p2_hat == ce.p2_hat &&
         cell.z > report.z_threshold;
}

std::string StochasticReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = pass ? "PASS" : "FAIL";
  j["note"] = pass ? (vacuous ? "vacuous claim (infinite epsilon)"
                              : "no violation detected; statistical evidence, not proof")
                   : "claim rejected; counterexample attached";
  j["claimed_epsilon"] = claimed_epsilon;
  j["samples"] = samples;
  j["significance"] = significance;
  j["slack"] = slack;
  j["z_threshold"] = z_threshold;
  j["seed"] = seed;
  j["tests"] = nlohmann::ordered_json::array();
  for (const EventTest& cell : tests) {
    nlohmann::ordered_json t;
    t["pair"] = cell.pair;
    t["direction"] = cell.swapped ? "x' vs x" : "x vs x'";
    t["event"] = std::string(cell.upper_tail ? "output > " : "output < ") +
                 std::to_string(cell.threshold);
    t["p1_hat"] = cell.p1_hat;
    t["p2_hat"] = cell.p2_hat;
    t["z"] = std::isfinite(cell.z) ? cell.z : (cell.z > 0 ? 1e308 : -1e308);
    t["p_value"] = cell.p_value;
    t["rejected"] = cell.rejected;
    j["tests"].push_back(std::move(t));
  }
  if (counterexample) {
    nlohmann::ordered_json c;
    c["pair"] = counterexample->pair;
    c["pair_index"] = counterexample->pair_index;
    c["direction"] = counterexample->swapped ? "x' vs x" : "x vs x'";
    c["event"] = std::string(counterexample->upper_tail ? "output > " : "output < ") +
                 std::to_string(counterexample->threshold);
    c["p1_hat"] = counterexample->p1_hat;
    c["p2_hat"] = counterexample->p2_hat;
    c["z"] = std::isfinite(counterexample->z) ? counterexample->z : 1e308;
    j["counterexample"] = std::move(c);
  }
  return j.dump(2);
}

}  // namespace privcalc
