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

#ifndef PRIVCALC_TOOLS_PREDICATE_HPP
#define PRIVCALC_TOOLS_PREDICATE_HPP

#include <string>

#include "privcalc/transforms.hpp"

namespace privcalc::tools {

// Compiles a row predicate from the minimal comparison grammar:
//
//   expr       := term ( OR term )*
//   term       := atom ( AND atom )*
//   atom       := comparison | '(' expr ')'
//   comparison := column op literal
//   op         := == | != | < | <= | > | >=
//   literal    := number | true | false | 'string' | "string"
//
// Column names resolve against `schema`; comparisons are typed (numeric
// columns take numeric literals, int64 compares exactly against integer
// literals, strings compare lexicographically). Errors: InvalidArgument on
// syntax or type mismatch, InvalidSchema on unknown column.
RecordPred parse_predicate(const std::string& expr, const Schema& schema);

}  // namespace privcalc::tools

#endif  // PRIVCALC_TOOLS_PREDICATE_HPP
