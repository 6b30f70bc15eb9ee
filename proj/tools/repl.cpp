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

#include "repl.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "predicate.hpp"
#include "privcalc/error.hpp"
#include "privcalc/mechanisms.hpp"

namespace privcalc::tools {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::string token;
    if (line[i] == '"' || line[i] == '\'') {
      char quote = line[i++];
      while (i < line.size() && line[i] != quote) token += line[i++];
      if (i < line.size()) ++i;  // closing quote
    } else {
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
        token += line[i++];
      }
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

// --flag value pairs after the command word; later duplicates win.
std::map<std::string, std::string> parse_flags(const std::vector<std::string>& tokens,
                                               size_t start) {
  std::map<std::string, std::string> flags;
  for (size_t i = start; i < tokens.size(); ++i) {
    if (tokens[i].rfind("--", 0) != 0) {
      throw Error(ErrorKind::kInvalidArgument, "expected --flag, got '" + tokens[i] + "'");
    }
    if (i + 1 >= tokens.size()) {
      throw Error(ErrorKind::kInvalidArgument, "flag '" + tokens[i] + "' needs a value");
    }
    flags[tokens[i].substr(2)] = tokens[i + 1];
    ++i;
  }
  return flags;
}

double number_flag(const std::map<std::string, std::string>& flags,
                   const std::string& name) {
  auto it = flags.find(name);
  if (it == flags.end()) {
    throw Error(ErrorKind::kInvalidArgument, "missing --" + name);
  }
  const std::string& text = it->second;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kInvalidArgument, "--" + name + " expects a number");
  }
  return v;
}

std::string string_flag(const std::map<std::string, std::string>& flags,
                        const std::string& name) {
  auto it = flags.find(name);
  if (it == flags.end()) {
    throw Error(ErrorKind::kInvalidArgument, "missing --" + name);
  }
  return it->second;
}

struct ReplState {
  Session session;
  NodeId current = 0;
};

std::string brief(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", x);
  return buffer;
}

std::string loss_brief(const PrivacyLoss& loss) {
  std::string out = "eps=" + brief(loss.epsilon);
  if (loss.kind == MeasureKind::kApproxDP) out += " delta=" + brief(loss.delta);
  return out;
}

void print_answer(std::ostream& out, const ReplState& state, const Value& answer,
                  const PrivacyLoss& charged) {
  out << answer.to_debug_string() << "  [charged " << loss_brief(charged)
      << "; node " << state.current << " remaining "
      << state.session.remaining_string(state.current) << "; root remaining "
      << state.session.remaining_string(state.session.root()) << "]\n";
}

}  // namespace

int run_repl(Dataset data, Metric metric, const ReplOptions& options,
             std::istream& in, std::ostream& out) {
  ReplState state{Session(std::move(data), metric, options.budget, options.mode,
                          options.seed),
                  0};
  Session& session = state.session;
  out << "privcalc session: mode "
      << (options.mode == Session::Mode::kFilter ? "filter" : "odometer")
      << ", budget " << options.budget.to_string() << ", seed " << options.seed
      << "\n";

  std::string line;
  while (true) {
    if (options.echo_prompt) out << "[node " << state.current << "] > " << std::flush;
    if (!std::getline(in, line)) break;
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& cmd = tokens[0];
    try {
      if (cmd == "quit" || cmd == "exit") {
        break;
      } else if (cmd == "help") {
        out << "commands: budget | count --epsilon E | sum --col C --lower L"
               " --upper U --epsilon E | avg --col C --epsilon E |"
               " partition --by <predicate> | use <child-id> | up |"
               " spawn --budget B | transcript <file> | tree | quit\n";
      } else if (cmd == "budget") {
        out << "node " << state.current << ": spent "
            << session.spent_string(state.current) << ", remaining "
            << session.remaining_string(state.current) << "\n";
        if (state.current != session.root()) {
          out << "root: spent " << session.spent_string(session.root())
              << ", remaining " << session.remaining_string(session.root()) << "\n";
        }
      } else if (cmd == "tree") {
        for (NodeId id = 0; id < session.node_count(); ++id) {
          out << session.describe(id) << "\n";
        }
      } else if (cmd == "count") {
        auto flags = parse_flags(tokens, 1);
        Measurement m = noisy_count(session.domain_at(state.current), session.metric(),
                                    number_flag(flags, "epsilon"));
        PrivacyLoss charged = m.loss_at(1.0);
        Value answer = session.query(state.current, m);
        print_answer(out, state, answer, charged);
      } else if (cmd == "sum") {
        auto flags = parse_flags(tokens, 1);
        Measurement m = noisy_sum(session.domain_at(state.current), session.metric(),
                                  string_flag(flags, "col"),
                                  Bounds{number_flag(flags, "lower"),
                                         number_flag(flags, "upper")},
                                  number_flag(flags, "epsilon"));
        PrivacyLoss charged = m.loss_at(1.0);
        Value answer = session.query(state.current, m);
        print_answer(out, state, answer, charged);
      } else if (cmd == "avg") {
        auto flags = parse_flags(tokens, 1);
        Measurement m = noisy_average(session.domain_at(state.current), session.metric(),
                                      string_flag(flags, "col"),
                                      number_flag(flags, "epsilon"));
        PrivacyLoss charged = m.loss_at(1.0);
        Value answer = session.query(state.current, m);
        print_answer(out, state, answer, charged);
      } else if (cmd == "partition") {
        if (tokens.size() < 3 || tokens[1] != "--by") {
          throw Error(ErrorKind::kInvalidArgument, "usage: partition --by <predicate>");
        }
        // Everything after --by is the predicate expression; two pieces:
        // matching records and the rest.
        std::string expr = line.substr(line.find("--by") + 4);
        RecordPred pred =
            parse_predicate(expr, session.domain_at(state.current).schema());
        RecordPred negated = [pred](const Record& r) { return !pred(r); };
        std::vector<NodeId> children = session.partition(
            state.current, PartitionSpec::by_predicates({pred, negated}));
        out << "pieces: node " << children[0] << " (matching), node " << children[1]
            << " (rest)\n";
      } else if (cmd == "use") {
        if (tokens.size() != 2) {
          throw Error(ErrorKind::kInvalidArgument, "usage: use <child-id>");
        }
        NodeId target = std::stoull(tokens[1]);
        bool is_child = false;
        for (NodeId child : session.children_of(state.current)) {
          is_child |= child == target;
        }
        if (!is_child) {
          throw Error(ErrorKind::kInvalidArgument,
                      "node " + tokens[1] + " is not a child of node " +
                          std::to_string(state.current));
        }
        state.current = target;
        out << session.describe(state.current) << "\n";
      } else if (cmd == "up") {
        state.current = session.parent_of(state.current);
        out << session.describe(state.current) << "\n";
      } else if (cmd == "spawn") {
        auto flags = parse_flags(tokens, 1);
        PrivacyLoss sub = session.measure_kind() == MeasureKind::kApproxDP
                              ? PrivacyLoss::approx(number_flag(flags, "budget"),
                                                    flags.count("delta")
                                                        ? number_flag(flags, "delta")
                                                        : 0.0)
                              : PrivacyLoss::pure(number_flag(flags, "budget"));
        NodeId child = session.spawn_sequential(state.current, sub);
        out << "spawned node " << child << " with budget " << sub.to_string() << "\n";
      } else if (cmd == "transcript") {
        if (tokens.size() != 2) {
          throw Error(ErrorKind::kInvalidArgument, "usage: transcript <file>");
        }
        std::ofstream file(tokens[1]);
        if (!file) {
          throw Error(ErrorKind::kDataError, "cannot open '" + tokens[1] + "'");
        }
        file << session.transcript_jsonl();
        out << "wrote " << session.transcript().size() << " entries to " << tokens[1]
            << "\n";
      } else {
        out << "error: unknown command '" << cmd << "' (try help)\n";
      }
    } catch (const Error& e) {
      // Per-query failures (including BudgetExceeded) are printed and the
      // session continues with all ledgers untouched.
      out << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
      out << "error: " << e.what() << "\n";
    }
  }
  if (options.echo_prompt) out << "\n";
  return 0;
}

}  // namespace privcalc::tools
