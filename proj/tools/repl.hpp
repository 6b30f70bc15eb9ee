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

#ifndef PRIVCALC_TOOLS_REPL_HPP
#define PRIVCALC_TOOLS_REPL_HPP

#include <iosfwd>

#include "privcalc/interactive.hpp"

namespace privcalc::tools {

struct ReplOptions {
  PrivacyLoss budget;
  Session::Mode mode = Session::Mode::kFilter;
  uint64_t seed = 0;
  bool echo_prompt = true;  // off for scripted/piped input in tests
};

// Runs the interactive loop over the queryable tree rooted at `data`.
// Commands: budget, count --epsilon E, sum --col C --lower L --upper U
// --epsilon E, avg --col C --epsilon E, partition --by <predicate>, use
// <child-id>, up, spawn --budget B, transcript <file>, quit. Every answer
// echoes the charged loss and the remaining budget; a rejected query prints
// the refusal and the session continues. Returns the process exit code.
int run_repl(Dataset data, Metric metric, const ReplOptions& options,
             std::istream& in, std::ostream& out);

}  // namespace privcalc::tools

#endif  // PRIVCALC_TOOLS_REPL_HPP
