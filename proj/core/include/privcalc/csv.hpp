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

#ifndef PRIVCALC_CSV_HPP
#define PRIVCALC_CSV_HPP

#include <string>
#include <vector>

#include "privcalc/data.hpp"

namespace privcalc {

// Splits RFC 4180 text into rows of raw fields. Quoted fields may contain
// commas, doubled quotes, and line breaks. Malformed quoting is a hard
// error (kDataError); there is no lenient mode.
std::vector<std::vector<std::string>> parse_csv_fields(const std::string& text);

// Parses CSV with a header row into a dataset conforming to `schema`.
// The header must list exactly the schema's column names in order, and every
// cell must parse as its column's kind; anything else is a kDataError.
Dataset parse_csv(const std::string& text, const Schema& schema);

// Serializes a dataset back to RFC 4180 with a header row. Doubles are
// written with shortest round-trip formatting.
std::string write_csv(const Dataset& dataset);

std::string format_cell(const Cell& cell);

}  // namespace privcalc

#endif  // PRIVCALC_CSV_HPP
