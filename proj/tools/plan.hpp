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

#ifndef PRIVCALC_TOOLS_PLAN_HPP
#define PRIVCALC_TOOLS_PLAN_HPP

#include <cstdint>
#include <string>

#include "json.hpp"
#include "privcalc/measurement.hpp"

namespace privcalc::tools {

// A validated batch plan: schema + metric + budget + a pipeline of stage
// objects ending in a mechanism. See share/plan.schema.json for the wire
// format. Plans are non-adaptive, so the total loss is known before any
// data is read.
struct Plan {
  int version = 1;
  Schema schema;
  Metric metric;
  PrivacyLoss budget;
  nlohmann::ordered_json pipeline;  // validated stage array
};

// Parses and validates the plan document. Structural and semantic checks
// (fields, kinds, op names, parameter ranges) mirror share/plan.schema.json;
// everything wrong with the document itself is PlanInvalid.
Plan parse_plan(const std::string& text);

// Builds the measurement the pipeline describes. No data involved.
Measurement build_pipeline(const Plan& plan);

// Full batch run: validate plan, build, pre-check loss_at(1) against the
// declared budget (BudgetViolation before any data access), then parse the
// CSV, execute under the seed, and return the results document.
nlohmann::ordered_json run_plan(const std::string& plan_text,
                                const std::string& csv_text, uint64_t seed);

// Value -> results-JSON encoding (bools, numbers, nested lists).
nlohmann::ordered_json value_to_json(const Value& v);

}  // namespace privcalc::tools

#endif  // PRIVCALC_TOOLS_PLAN_HPP
