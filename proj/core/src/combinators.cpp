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

#include "privcalc/combinators.hpp"

#include <algorithm>
#include <utility>

namespace privcalc {
namespace {

void require_joint(const Transformation& t, const Domain& domain,
                   const Metric& metric, const std::string& into) {
  if (!(t.output_domain() == domain)) {
    throw Error(ErrorKind::kDomainMismatch,
                "cannot chain " + t.name() + " into " + into +
                    ": output domain " + t.output_domain().to_string() +
                    " != input domain " + domain.to_string());
  }
  if (!(t.output_metric() == metric)) {
    throw Error(ErrorKind::kDomainMismatch,
                "cannot chain " + t.name() + " into " + into +
                    ": output metric " + std::string(t.output_metric().name()) +
                    " != input metric " + std::string(metric.name()));
  }
}

OutcomeDistribution merge_duplicates(OutcomeDistribution dist) {
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

// Cartesian product of per-component distributions; outcome i holds the list
// of component outcomes in declared order.
OutcomeDistribution joint_distribution(
    const std::vector<OutcomeDistribution>& parts) {
  OutcomeDistribution joint{{Value(Value::List{}), 1.0}};
  for (const auto& part : parts) {
    OutcomeDistribution next;
    next.reserve(joint.size() * part.size());
    for (const auto& prefix : joint) {
      for (const auto& point : part) {
        Value::List extended = prefix.value.as_list();
        extended.push_back(point.value);
        next.push_back({Value(std::move(extended)),
                        prefix.probability * point.probability});
      }
    }
    joint = std::move(next);
  }
  return joint;
}

}  // namespace

Transformation chain_tt(const Transformation& t2, const Transformation& t1) {
  require_joint(t1, t2.input_domain(), t2.input_metric(), t2.name());
  auto fn = [t1, t2](const Value& v) { return t2(t1(v)); };
  return make_transformation("chain(" + t2.name() + "," + t1.name() + ")",
                             t1.input_domain(), t1.input_metric(),
                             t2.output_domain(), t2.output_metric(),
                             std::move(fn), t1.stability().then(t2.stability()));
}

Measurement chain_mt(const Measurement& m, const Transformation& t) {
  require_joint(t, m.input_domain(), m.input_metric(), m.name());
  auto fn = [m, t](const Value& v, Rng& rng) { return m(t(v), rng); };
  std::optional<DiscreteFn> discrete;
  if (m.is_enumerable()) {
    discrete = [m, t](const Value& v) { return m.enumerate(t(v)); };
  }
  return make_measurement("chain(" + m.name() + "," + t.name() + ")",
                          t.input_domain(), t.input_metric(), std::move(fn),
                          m.privacy_map().after(t.stability()),
                          std::move(discrete));
}

Measurement compose_basic(std::vector<Measurement> ms) {
  if (ms.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "compose_basic of zero measurements");
  }
  const Domain domain = ms.front().input_domain();
  const Metric metric = ms.front().input_metric();
  const MeasureKind kind = ms.front().measure_kind();
  for (const auto& m : ms) {
    if (!(m.input_domain() == domain) || !(m.input_metric() == metric)) {
      throw Error(ErrorKind::kDomainMismatch,
                  "compose_basic components disagree on input domain/metric");
    }
    if (m.measure_kind() != kind) {
      throw Error(ErrorKind::kHeterogeneousMeasures,
                  "compose_basic across privacy measures; embed_approx first");
    }
  }

  auto fn = [ms](const Value& v, Rng& rng) {
    Value::List answers;
    answers.reserve(ms.size());
    for (size_t i = 0; i < ms.size(); ++i) {
      Rng child = rng.derive(i);
      answers.push_back(ms[i](v, child));
    }
    return Value(std::move(answers));
  };

  // Losses add; with every component linear the sum is linear too.
  bool all_linear = true;
  PrivacyLoss unit = PrivacyLoss::zero(kind);
  for (const auto& m : ms) {
    auto per_unit = m.privacy_map().per_unit();
    if (!per_unit) {
      all_linear = false;
      break;
    }
    unit = unit + *per_unit;
  }
  PrivacyMap map = all_linear
                       ? PrivacyMap::linear(unit)
                       : PrivacyMap::from_function(kind, [ms, kind](double d) {
                           PrivacyLoss total = PrivacyLoss::zero(kind);
                           for (const auto& m : ms) total = total + m.loss_at(d);
                           return total;
                         });

  std::optional<DiscreteFn> discrete;
  if (std::all_of(ms.begin(), ms.end(),
                  [](const Measurement& m) { return m.is_enumerable(); })) {
    discrete = [ms](const Value& v) {
      std::vector<OutcomeDistribution> parts;
      parts.reserve(ms.size());
      for (const auto& m : ms) parts.push_back(m.enumerate(v));
      return joint_distribution(parts);
    };
  }
  return make_measurement("compose[" + std::to_string(ms.size()) + "]", domain,
                          metric, std::move(fn), std::move(map),
                          std::move(discrete));
}

Measurement compose_parallel(const Domain& input_domain, const Metric& metric,
                             const PartitionSpec& spec,
                             std::vector<Measurement> ms) {
  if (metric.kind() != Metric::Kind::kSymmetricDistance) {
    throw Error(ErrorKind::kIncompatibleMetric,
                "parallel composition is stated for SymmetricDistance only");
  }
  if (ms.size() != spec.pieces()) {
    throw Error(ErrorKind::kArityMismatch,
                std::to_string(ms.size()) + " measurements for " +
                    std::to_string(spec.pieces()) + " pieces");
  }
  const MeasureKind kind = ms.front().measure_kind();
  for (const auto& m : ms) {
    if (!(m.input_domain() == input_domain) ||
        !(m.input_metric() == metric)) {
      throw Error(ErrorKind::kDomainMismatch,
                  "parallel component must accept the partitioned domain");
    }
    if (m.measure_kind() != kind) {
      throw Error(ErrorKind::kHeterogeneousMeasures,
                  "parallel composition across privacy measures");
    }
  }

  auto fn = [spec, ms](const Value& v, Rng& rng) {
    std::vector<Dataset> pieces = spec.split(v.as_dataset());
    Value::List answers;
    answers.reserve(ms.size());
    for (size_t i = 0; i < ms.size(); ++i) {
      Rng child = rng.derive(i);
      answers.push_back(ms[i](Value(pieces[i]), child));
    }
    return Value(std::move(answers));
  };

  // d edits touch at most d pieces, each at distance <= its edit share, so
  // the joint loss is bounded by d times the worst per-unit loss.
  PrivacyLoss worst = PrivacyLoss::zero(kind);
  for (const auto& m : ms) worst = PrivacyLoss::max(worst, m.loss_at(1.0));

  std::optional<DiscreteFn> discrete;
  if (std::all_of(ms.begin(), ms.end(),
                  [](const Measurement& m) { return m.is_enumerable(); })) {
    discrete = [spec, ms](const Value& v) {
      std::vector<Dataset> pieces = spec.split(v.as_dataset());
      std::vector<OutcomeDistribution> parts;
      parts.reserve(ms.size());
      for (size_t i = 0; i < ms.size(); ++i) {
        parts.push_back(ms[i].enumerate(Value(pieces[i])));
      }
      return joint_distribution(parts);
    };
  }
  return make_measurement("parallel[" + std::to_string(ms.size()) + "]",
                          input_domain, metric, std::move(fn),
                          PrivacyMap::linear(worst), std::move(discrete));
}

Measurement embed_approx(const Measurement& m) {
  if (m.measure_kind() == MeasureKind::kApproxDP) return m;
  PrivacyMap map = [&] {
    if (auto unit = m.privacy_map().per_unit()) {
      return PrivacyMap::linear(PrivacyLoss::approx(unit->epsilon, 0.0));
    }
    return PrivacyMap::from_function(MeasureKind::kApproxDP, [m](double d) {
      return PrivacyLoss::approx(m.loss_at(d).epsilon, 0.0);
    });
  }();
  auto fn = [m](const Value& v, Rng& rng) { return m(v, rng); };
  std::optional<DiscreteFn> discrete;
  if (m.is_enumerable()) {
    discrete = [m](const Value& v) { return m.enumerate(v); };
  }
  return make_measurement(m.name(), m.input_domain(), m.input_metric(),
                          std::move(fn), std::move(map), std::move(discrete));
}

Measurement post_process(const Measurement& m,
                         std::function<Value(const Value&)> f,
                         const std::string& name) {
  auto fn = [m, f](const Value& v, Rng& rng) { return f(m(v, rng)); };
  std::optional<DiscreteFn> discrete;
  if (m.is_enumerable()) {
    discrete = [m, f](const Value& v) {
      OutcomeDistribution pushed = m.enumerate(v);
      for (auto& point : pushed) point.value = f(point.value);
      return merge_duplicates(std::move(pushed));
    };
  }
  return make_measurement(name, m.input_domain(), m.input_metric(),
                          std::move(fn), m.privacy_map(), std::move(discrete));
}

Pipeline& Pipeline::add(Transformation t) {
  if (measurement_) {
    throw Error(ErrorKind::kPlanInvalid, "pipeline stage after the measurement");
  }
  if (!stages_.empty()) {
    require_joint(stages_.back(), t.input_domain(), t.input_metric(), t.name());
  }
  stages_.push_back(std::move(t));
  return *this;
}

Pipeline& Pipeline::finish(Measurement m) {
  if (measurement_) {
    throw Error(ErrorKind::kPlanInvalid, "pipeline already has a measurement");
  }
  if (!stages_.empty()) {
    require_joint(stages_.back(), m.input_domain(), m.input_metric(), m.name());
  }
  measurement_ = std::move(m);
  return *this;
}

Measurement Pipeline::collapse() const {
  if (!measurement_) {
    throw Error(ErrorKind::kPlanInvalid, "pipeline has no measurement");
  }
  if (stages_.empty()) return *measurement_;
  Transformation combined = stages_.front();
  for (size_t i = 1; i < stages_.size(); ++i) {
    combined = chain_tt(stages_[i], combined);
  }
  return chain_mt(*measurement_, combined);
}

}  // namespace privcalc
