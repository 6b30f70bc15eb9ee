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

#include "plan.hpp"

#include <cmath>
#include <set>
#include <vector>

#include "predicate.hpp"
#include "privcalc/combinators.hpp"
#include "privcalc/csv.hpp"
#include "privcalc/error.hpp"
#include "privcalc/mechanisms.hpp"
#include "privcalc/rational.hpp"
#include "privcalc/sampagg.hpp"
#include "privcalc/transforms.hpp"

namespace privcalc::tools {
namespace {

using nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorKind::kPlanInvalid, "plan invalid: " + msg);
}

double require_number(const ordered_json& stage, const std::string& field) {
  if (!stage.contains(field) || !stage[field].is_number()) {
    invalid("stage '" + stage.value("op", std::string("?")) + "' needs numeric field '" +
            field + "'");
  }
  double v = stage[field].get<double>();
  if (!std::isfinite(v)) invalid("field '" + field + "' must be finite");
  return v;
}

std::string require_string(const ordered_json& stage, const std::string& field) {
  if (!stage.contains(field) || !stage[field].is_string()) {
    invalid("stage '" + stage.value("op", std::string("?")) + "' needs string field '" +
            field + "'");
  }
  return stage[field].get<std::string>();
}

// The transformations and mechanisms reachable from plan documents. Checks
// here are structural; value-level validation (bounds ordering, unknown
// columns, metric compatibility) surfaces when the pipeline is built.
const std::set<std::string> kTransformOps = {"clamp", "filter", "sum", "count"};
const std::set<std::string> kMechanismOps = {
    "noisy_count", "noisy_sum",        "noisy_average",
    "laplace",     "randomized_response", "compose",
    "parallel",    "sample_aggregate"};

void validate_stages(const ordered_json& stages) {
  if (!stages.is_array() || stages.empty()) {
    invalid("pipeline must be a non-empty array of stage objects");
  }
  for (size_t i = 0; i < stages.size(); ++i) {
    const ordered_json& stage = stages[i];
    if (!stage.is_object() || !stage.contains("op") || !stage["op"].is_string()) {
      invalid("stage " + std::to_string(i) + " must be an object with an \"op\"");
    }
    std::string op = stage["op"].get<std::string>();
    bool last = i + 1 == stages.size();
    if (!last) {
      if (!kTransformOps.count(op)) {
        invalid("stage '" + op + "' cannot appear before the final mechanism");
      }
    } else if (!kMechanismOps.count(op)) {
      invalid("final stage '" + op + "' is not a mechanism");
    }

    if (op == "clamp") {
      require_string(stage, "column");
      if (require_number(stage, "lower") > require_number(stage, "upper")) {
        invalid("clamp bounds inverted");
      }
    } else if (op == "filter") {
      require_string(stage, "predicate");
    } else if (op == "sum") {
      require_string(stage, "column");
    } else if (op == "noisy_count") {
      if (require_number(stage, "epsilon") <= 0) invalid("epsilon must be > 0");
    } else if (op == "noisy_sum") {
      require_string(stage, "column");
      if (require_number(stage, "lower") > require_number(stage, "upper")) {
        invalid("noisy_sum bounds inverted");
      }
      if (require_number(stage, "epsilon") <= 0) invalid("epsilon must be > 0");
    } else if (op == "noisy_average") {
      require_string(stage, "column");
      if (require_number(stage, "epsilon") <= 0) invalid("epsilon must be > 0");
    } else if (op == "laplace") {
      if (require_number(stage, "scale") <= 0) invalid("laplace scale must be > 0");
    } else if (op == "randomized_response") {
      double p = require_number(stage, "p");
      if (p < 0.5 || p >= 1.0) invalid("randomized_response needs 0.5 <= p < 1");
      if (stages.size() != 1) {
        invalid("randomized_response consumes a single bit; it must be the only stage");
      }
    } else if (op == "compose") {
      if (!stage.contains("children") || !stage["children"].is_array() ||
          stage["children"].empty()) {
        invalid("compose needs a non-empty \"children\" array");
      }
      for (const ordered_json& child : stage["children"]) validate_stages(child);
    } else if (op == "parallel") {
      if (!stage.contains("partition") || !stage["partition"].is_array() ||
          stage["partition"].empty()) {
        invalid("parallel needs a non-empty \"partition\" array of predicates");
      }
      for (const ordered_json& p : stage["partition"]) {
        if (!p.is_string()) invalid("partition predicates must be strings");
      }
      if (!stage.contains("children") || !stage["children"].is_array() ||
          stage["children"].size() != stage["partition"].size()) {
        invalid("parallel needs one child pipeline per partition piece");
      }
      for (const ordered_json& child : stage["children"]) validate_stages(child);
    } else if (op == "sample_aggregate") {
      require_string(stage, "column");
      std::string estimator = require_string(stage, "estimator");
      bool known = false;
      for (std::string_view name : estimator_names()) known |= name == estimator;
      if (!known) invalid("unknown estimator '" + estimator + "'");
      if (!stage.contains("blocks") || !stage["blocks"].is_number_unsigned() ||
          stage["blocks"].get<uint64_t>() < 2) {
        invalid("sample_aggregate needs integer \"blocks\" >= 2");
      }
      if (!stage.contains("range") || !stage["range"].is_array() ||
          stage["range"].size() != 2 || !stage["range"][0].is_number() ||
          !stage["range"][1].is_number() ||
          !(stage["range"][0].get<double>() < stage["range"][1].get<double>())) {
        invalid("sample_aggregate needs \"range\": [L, U] with L < U");
      }
      if (require_number(stage, "epsilon") <= 0) invalid("epsilon must be > 0");
    }
  }
}

Measurement build_stages(const Domain& domain, const Metric& metric,
                         const ordered_json& stages);

Measurement build_mechanism(const Domain& domain, const Metric& metric,
                            const ordered_json& stage) {
  std::string op = stage["op"].get<std::string>();
  if (op == "noisy_count") {
    return noisy_count(domain, metric, stage["epsilon"].get<double>());
  }
  if (op == "noisy_sum") {
    return noisy_sum(domain, metric, stage["column"].get<std::string>(),
                     Bounds{stage["lower"].get<double>(), stage["upper"].get<double>()},
                     stage["epsilon"].get<double>());
  }
  if (op == "noisy_average") {
    return noisy_average(domain, metric, stage["column"].get<std::string>(),
                         stage["epsilon"].get<double>());
  }
  if (op == "laplace") {
    if (domain.kind() != Domain::Kind::kScalar) {
      invalid("\"laplace\" applies to a scalar stage output; put it after sum/count");
    }
    return laplace_noise(stage["scale"].get<double>());
  }
  if (op == "randomized_response") {
    return randomized_response(stage["p"].get<double>());
  }
  if (op == "compose") {
    std::vector<Measurement> children;
    for (const ordered_json& child : stage["children"]) {
      children.push_back(build_stages(domain, metric, child));
    }
    return compose_basic(std::move(children));
  }
  if (op == "parallel") {
    if (!domain.is_data()) invalid("\"parallel\" applies to dataset stages");
    std::vector<RecordPred> preds;
    for (const ordered_json& p : stage["partition"]) {
      preds.push_back(parse_predicate(p.get<std::string>(), domain.schema()));
    }
    std::vector<Measurement> children;
    for (const ordered_json& child : stage["children"]) {
      children.push_back(build_stages(domain, metric, child));
    }
    return compose_parallel(domain, metric, PartitionSpec::by_predicates(std::move(preds)),
                            std::move(children));
  }
  if (op == "sample_aggregate") {
    SampleAggregateOptions options;
    options.blocks = stage["blocks"].get<uint64_t>();
    options.seed = stage.value("seed", uint64_t{0});
    options.output_range =
        Bounds{stage["range"][0].get<double>(), stage["range"][1].get<double>()};
    EstimatorFn f = make_estimator(stage["estimator"].get<std::string>(),
                                   stage["column"].get<std::string>(),
                                   options.output_range);
    return sample_and_aggregate(domain, metric, std::move(f), options,
                                stage["epsilon"].get<double>());
  }
  invalid("unknown mechanism '" + op + "'");
}

Measurement build_stages(const Domain& domain, const Metric& metric,
                         const ordered_json& stages) {
  Pipeline pipeline;
  Domain current = domain;
  Metric current_metric = metric;
  for (size_t i = 0; i + 1 < stages.size(); ++i) {
    const ordered_json& stage = stages[i];
    std::string op = stage["op"].get<std::string>();
    Transformation t = [&] {
      if (op == "clamp") {
        return clamp(current, current_metric, stage["column"].get<std::string>(),
                     Bounds{stage["lower"].get<double>(), stage["upper"].get<double>()});
      }
      if (op == "filter") {
        if (!current.is_data()) invalid("\"filter\" applies to dataset stages");
        return filter_rows(
            current, current_metric,
            parse_predicate(stage["predicate"].get<std::string>(), current.schema()));
      }
      if (op == "sum") {
        return sum_clamped(current, current_metric, stage["column"].get<std::string>());
      }
      if (op == "count") return count(current, current_metric);
      invalid("unknown transformation '" + op + "'");
    }();
    current = t.output_domain();
    current_metric = t.output_metric();
    pipeline.add(std::move(t));
  }
  pipeline.finish(build_mechanism(current, current_metric, stages.back()));
  return pipeline.collapse();
}

}  // namespace

Plan parse_plan(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) invalid("document is not a JSON object");

  Plan plan;
  if (!doc.contains("version") || !doc["version"].is_number_integer() ||
      doc["version"].get<int>() != 1) {
    invalid("\"version\" must be 1");
  }
  if (!doc.contains("schema") || !doc["schema"].is_array() || doc["schema"].empty()) {
    invalid("\"schema\" must be a non-empty array of columns");
  }
  std::vector<Column> columns;
  std::set<std::string> seen;
  for (const ordered_json& col : doc["schema"]) {
    if (!col.is_object() || !col.contains("name") || !col["name"].is_string() ||
        !col.contains("kind") || !col["kind"].is_string()) {
      invalid("schema columns need string \"name\" and \"kind\"");
    }
    std::string name = col["name"].get<std::string>();
    std::string kind = col["kind"].get<std::string>();
    if (name.empty() || !seen.insert(name).second) {
      invalid("column names must be unique and non-empty");
    }
    CellKind cell_kind;
    if (kind == "int64") cell_kind = CellKind::kInt64;
    else if (kind == "float64") cell_kind = CellKind::kFloat64;
    else if (kind == "bool") cell_kind = CellKind::kBool;
    else if (kind == "string") cell_kind = CellKind::kString;
    else invalid("unknown column kind '" + kind + "'");
    columns.push_back(Column{name, cell_kind});
  }
  plan.schema = Schema(std::move(columns));

  std::string metric = doc.value("metric", std::string("symmetric"));
  if (metric == "symmetric") plan.metric = Metric::symmetric();
  else if (metric == "change_one") plan.metric = Metric::change_one();
  else invalid("\"metric\" must be \"symmetric\" or \"change_one\"");

  if (!doc.contains("budget") || !doc["budget"].is_object() ||
      !doc["budget"].contains("epsilon") || !doc["budget"]["epsilon"].is_number()) {
    invalid("\"budget\" must be an object with numeric \"epsilon\"");
  }
  double eps = doc["budget"]["epsilon"].get<double>();
  if (!(eps >= 0) || !std::isfinite(eps)) invalid("budget epsilon must be finite and >= 0");
  if (doc["budget"].contains("delta")) {
    double delta = doc["budget"]["delta"].get<double>();
    if (!(delta >= 0) || delta > 1) invalid("budget delta must lie in [0, 1]");
    plan.budget = PrivacyLoss::approx(eps, delta);
  } else {
    plan.budget = PrivacyLoss::pure(eps);
  }

  if (!doc.contains("pipeline")) invalid("missing \"pipeline\"");
  validate_stages(doc["pipeline"]);
  plan.pipeline = doc["pipeline"];
  return plan;
}

Measurement build_pipeline(const Plan& plan) {
  Measurement m = build_stages(Domain::data(plan.schema), plan.metric, plan.pipeline);
  if (plan.budget.kind == MeasureKind::kApproxDP &&
      m.loss_at(1).kind == MeasureKind::kPureDP) {
    return embed_approx(m);
  }
  return m;
}

nlohmann::ordered_json value_to_json(const Value& v) {
  if (v.is_bool()) return ordered_json(v.as_bool());
  if (v.is_real()) return ordered_json(v.as_real());
  if (v.is_list()) {
    ordered_json arr = ordered_json::array();
    for (const Value& item : v.as_list()) arr.push_back(value_to_json(item));
    return arr;
  }
  // Dataset results only arise from custom pipelines, not plan documents.
  ordered_json rows = ordered_json::array();
  for (const Record& record : v.as_dataset().records()) {
    ordered_json row = ordered_json::array();
    for (const Cell& cell : record) row.push_back(format_cell(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json run_plan(const std::string& plan_text,
                                const std::string& csv_text, uint64_t seed) {
  Plan plan = parse_plan(plan_text);
  Measurement m = build_pipeline(plan);
  if (!m.input_domain().is_data()) {
    // e.g. a bare randomized_response plan: testable via `privcalc test`,
    // but it cannot consume the declared dataset.
    invalid("pipeline does not consume the declared dataset");
  }
  PrivacyLoss loss = m.loss_at(1.0);

  // Exact pre-check, before the CSV is even parsed: non-adaptive plans have
  // a statically known total loss.
  bool within = rational_from_double(loss.epsilon) <=
                    rational_from_double(plan.budget.epsilon) &&
                rational_from_double(loss.delta) <=
                    rational_from_double(plan.budget.delta);
  if (!within) {
    throw Error(ErrorKind::kBudgetViolation,
                "plan needs " + loss.to_string() + " but budget is " +
                    plan.budget.to_string());
  }

  Dataset data = parse_csv(csv_text, plan.schema);
  Rng rng(seed);
  Value result = m(Value(data), rng);

  ordered_json out;
  out["version"] = 1;
  out["seed"] = seed;
  out["metric"] = std::string(plan.metric.name());
  out["mechanism"] = m.name();
  ordered_json budget;
  budget["epsilon"] = plan.budget.epsilon;
  if (plan.budget.kind == MeasureKind::kApproxDP) budget["delta"] = plan.budget.delta;
  out["budget"] = std::move(budget);
  ordered_json loss_json;
  loss_json["measure"] = std::string(to_string(loss.kind));
  loss_json["epsilon"] = loss.epsilon;
  if (loss.kind == MeasureKind::kApproxDP) loss_json["delta"] = loss.delta;
  out["loss"] = std::move(loss_json);
  out["result"] = value_to_json(result);
  return out;
}

}  // namespace privcalc::tools
