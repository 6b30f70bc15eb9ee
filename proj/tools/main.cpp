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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "plan.hpp"
#include "privcalc/accuracy.hpp"
#include "privcalc/csv.hpp"
#include "privcalc/error.hpp"
#include "privcalc/tester.hpp"
#include "repl.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFail = 1;  // tester ran fine, claim rejected
constexpr int kExitPlanInvalid = 2;
constexpr int kExitBudgetViolation = 3;
constexpr int kExitDataError = 4;

int exit_code_for(const privcalc::Error& e) {
  switch (e.kind()) {
    case privcalc::ErrorKind::kPlanInvalid:
      return kExitPlanInvalid;
    case privcalc::ErrorKind::kBudgetViolation:
    case privcalc::ErrorKind::kBudgetExceeded:
    case privcalc::ErrorKind::kNegativeBudget:
      return kExitBudgetViolation;
    default:
      return kExitDataError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw privcalc::Error(privcalc::ErrorKind::kDataError,
                          "cannot read '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privcalc - differentially private queries with verified budgets"};
  app.require_subcommand(1);
  // Let the global --seed appear after subcommand arguments too.
  app.fallthrough();

  uint64_t seed = 0;
  app.add_option("--seed", seed, "RNG seed (default from PRIVCALC_SEED)")
      ->envname("PRIVCALC_SEED");

  // ---- run: batch plan execution ----
  std::string plan_path, data_path, out_path;
  CLI::App* run = app.add_subcommand("run", "execute a JSON plan against a CSV");
  run->add_option("plan", plan_path, "plan JSON file")->required();
  run->add_option("data", data_path, "CSV data file (header row required)")->required();
  run->add_option("--out", out_path, "write results JSON here instead of stdout");

  // ---- repl: interactive session ----
  std::string repl_data, repl_schema, repl_mode = "filter";
  double repl_epsilon = 1.0, repl_delta = -1.0;
  CLI::App* repl = app.add_subcommand("repl", "interactive queryable session");
  repl->add_option("data", repl_data, "CSV data file")->required();
  repl->add_option("--schema", repl_schema, "schema JSON file (array of {name,kind})")
      ->required();
  repl->add_option("--budget", repl_epsilon, "epsilon budget")->required();
  repl->add_option("--delta", repl_delta, "delta budget (switches to approximate DP)");
  repl->add_option("--mode", repl_mode, "filter (hard budget) or odometer (meter)")
      ->check(CLI::IsMember({"filter", "odometer"}));

  // ---- accuracy / budget: the two directions of the Laplace calculator ----
  double acc_epsilon = 0.0, acc_beta = 0.05, acc_alpha = 0.0, acc_sensitivity = 1.0;
  CLI::App* accuracy = app.add_subcommand(
      "accuracy", "alpha guaranteed by an epsilon at sensitivity c");
  accuracy->add_option("--epsilon", acc_epsilon, "privacy budget")->required();
  accuracy->add_option("--sensitivity", acc_sensitivity, "query sensitivity c")
      ->required();
  accuracy->add_option("--beta", acc_beta, "failure probability in (0,1)")->required();
  CLI::App* budget_cmd = app.add_subcommand(
      "budget", "epsilon needed for an (alpha, beta) accuracy target");
  budget_cmd->add_option("--alpha", acc_alpha, "error bound")->required();
  budget_cmd->add_option("--beta", acc_beta, "failure probability in (0,1)")->required();
  budget_cmd->add_option("--sensitivity", acc_sensitivity, "query sensitivity c")
      ->required();

  // ---- test: stochastic check of a plan-defined mechanism ----
  CLI::App* test = app.add_subcommand(
      "test", "stochastic test of a privacy claim about a plan's mechanism");
  std::string mech_path, report_path;
  double st_claim = 1.0, st_significance = 0.01;
  size_t st_samples = 100000;
  test->add_option("--mechanism", mech_path, "plan JSON defining the mechanism")
      ->required();
  test->add_option("--epsilon", st_claim, "claimed epsilon")->required();
  test->add_option("--samples", st_samples, "samples per input (>= 10^4)");
  test->add_option("--significance", st_significance, "test level in (0, 0.1]");
  test->add_option("--report", report_path, "write the report JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      nlohmann::ordered_json results = privcalc::tools::run_plan(
          read_file(plan_path), read_file(data_path), seed);
      std::string text = results.dump(2) + "\n";
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
          throw privcalc::Error(privcalc::ErrorKind::kDataError,
                                "cannot write '" + out_path + "'");
        }
        out << text;
      }
      return kExitOk;
    }

    if (*repl) {
      // Accept either {"columns": [...]} or the plan-style bare column array.
      std::string schema_text = read_file(repl_schema);
      auto doc = nlohmann::json::parse(schema_text, nullptr, /*allow_exceptions=*/false);
      if (doc.is_array()) {
        schema_text = nlohmann::json{{"columns", doc}}.dump();
      }
      privcalc::Schema schema = privcalc::Schema::from_json(schema_text);
      privcalc::Dataset data = privcalc::parse_csv(read_file(repl_data), schema);
      privcalc::tools::ReplOptions options;
      options.budget = repl_delta >= 0.0
                           ? privcalc::PrivacyLoss::approx(repl_epsilon, repl_delta)
                           : privcalc::PrivacyLoss::pure(repl_epsilon);
      options.mode = repl_mode == "odometer" ? privcalc::Session::Mode::kOdometer
                                             : privcalc::Session::Mode::kFilter;
      options.seed = seed;
      return privcalc::tools::run_repl(std::move(data), privcalc::Metric::symmetric(),
                                       options, std::cin, std::cout);
    }

    if (*accuracy) {
      // alpha for the Laplace release at scale c/epsilon.
      std::cout << "alpha = "
                << privcalc::laplace_alpha(acc_sensitivity / acc_epsilon, acc_beta)
                << "\n";
      return kExitOk;
    }
    if (*budget_cmd) {
      std::cout << "epsilon = "
                << privcalc::epsilon_for_accuracy(acc_sensitivity, acc_alpha, acc_beta)
                << "\n";
      return kExitOk;
    }

    if (*test) {
      privcalc::tools::Plan plan = privcalc::tools::parse_plan(read_file(mech_path));
      privcalc::Measurement m = privcalc::tools::build_pipeline(plan);
      privcalc::StochasticReport report =
          privcalc::stochastic_test(m, st_claim, st_samples, st_significance, seed);
      std::string text = report.to_json() + "\n";
      if (report_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) {
          throw privcalc::Error(privcalc::ErrorKind::kDataError,
                                "cannot write '" + report_path + "'");
        }
        out << text;
        std::cout << (report.pass ? "PASS" : "FAIL") << " (report written to "
                  << report_path << ")\n";
      }
      return report.pass ? kExitOk : kExitVerdictFail;
    }
  } catch (const privcalc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitOk;
}
