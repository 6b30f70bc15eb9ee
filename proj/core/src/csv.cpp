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

#include "privcalc/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "privcalc/error.hpp"

namespace privcalc {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorKind::kDataError, what);
}

Cell parse_cell(const std::string& field, CellKind kind, size_t row,
                const std::string& column) {
  auto where = [&] {
    return " in row " + std::to_string(row) + ", column '" + column + "'";
  };
  switch (kind) {
    case CellKind::kInt64: {
      int64_t v = 0;
      auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size() ||
          field.empty()) {
        fail("expected integer, got '" + field + "'" + where());
      }
      return Cell(v);
    }
    case CellKind::kFloat64: {
      if (field.empty()) fail("expected number, got empty field" + where());
      errno = 0;
      char* end = nullptr;
      double v = std::strtod(field.c_str(), &end);
      if (errno != 0 || end != field.c_str() + field.size()) {
        fail("expected number, got '" + field + "'" + where());
      }
      if (!std::isfinite(v)) {
        fail("non-finite number '" + field + "'" + where());
      }
      return Cell(v);
    }
    case CellKind::kBool: {
      if (field == "true" || field == "1") return Cell(true);
      if (field == "false" || field == "0") return Cell(false);
      fail("expected boolean, got '" + field + "'" + where());
    }
    case CellKind::kString:
      return Cell(field);
  }
  fail("unknown column kind" + where());
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv_fields(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool field_started = false;

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_was_quoted = false;
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(row);
    row.clear();
  };

  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) {
          fail("unexpected quote inside unquoted field");
        }
        in_quotes = true;
        field_was_quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') {
          end_row();
          ++i;
        } else {
          fail("bare carriage return outside quoted field");
        }
        break;
      case '\n':
        end_row();
        break;
      default:
        if (field_was_quoted) {
          fail("data after closing quote");
        }
        field_started = true;
        field += c;
        break;
    }
  }
  if (in_quotes) fail("unterminated quoted field");
  // Final record may lack a trailing newline.
  if (field_started || field_was_quoted || !row.empty()) end_row();
  return rows;
}

Dataset parse_csv(const std::string& text, const Schema& schema) {
  auto rows = parse_csv_fields(text);
  if (rows.empty()) fail("missing header row");
  const auto& header = rows.front();
  if (header.size() != schema.columns().size()) {
    fail("header has " + std::to_string(header.size()) + " columns, schema has " +
         std::to_string(schema.columns().size()));
  }
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] != schema.columns()[i].name) {
      fail("header column " + std::to_string(i) + " is '" + header[i] +
           "', expected '" + schema.columns()[i].name + "'");
    }
  }
  std::vector<Record> records;
  records.reserve(rows.size() - 1);
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& fields = rows[r];
    if (fields.size() != schema.columns().size()) {
      fail("row " + std::to_string(r) + " has " + std::to_string(fields.size()) +
           " fields, expected " + std::to_string(schema.columns().size()));
    }
    Record record;
    record.reserve(fields.size());
    for (size_t c = 0; c < fields.size(); ++c) {
      record.push_back(
          parse_cell(fields[c], schema.columns()[c].kind, r, schema.columns()[c].name));
    }
    records.push_back(std::move(record));
  }
  return Dataset(schema, std::move(records));
}

std::string format_cell(const Cell& cell) {
  switch (cell.index()) {
    case 0:
      return std::to_string(std::get<int64_t>(cell));
    case 1: {
      char buf[64];
      auto [ptr, ec] =
          std::to_chars(buf, buf + sizeof(buf), std::get<double>(cell));
      (void)ec;
      return std::string(buf, ptr);
    }
    case 2:
      return std::get<bool>(cell) ? "true" : "false";
    default:
      return std::get<std::string>(cell);
  }
}

namespace {

std::string escape_field(const std::string& raw) {
  bool needs_quotes = raw.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string write_csv(const Dataset& dataset) {
  std::string out;
  const auto& cols = dataset.schema().columns();
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += escape_field(cols[i].name);
  }
  out += '\n';
  for (const auto& record : dataset.records()) {
    for (size_t i = 0; i < record.size(); ++i) {
      if (i) out += ',';
      out += escape_field(format_cell(record[i]));
    }
    out += '\n';
  }
  return out;
}

}  // namespace privcalc
