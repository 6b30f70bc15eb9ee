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

#include "privcalc/value.hpp"

#include <cstring>
#include <sstream>

#include "privcalc/error.hpp"
#include "privcalc/rng.hpp"

namespace privcalc {

bool Value::as_bool() const {
  if (!is_bool()) throw Error(ErrorKind::kDomainMismatch, "value is not a bit");
  return std::get<bool>(v_);
}

double Value::as_real() const {
  if (!is_real()) throw Error(ErrorKind::kDomainMismatch, "value is not a real");
  return std::get<double>(v_);
}

const Dataset& Value::as_dataset() const {
  if (!is_dataset()) throw Error(ErrorKind::kDomainMismatch, "value is not a dataset");
  return std::get<Dataset>(v_);
}

const Value::List& Value::as_list() const {
  if (!is_list()) throw Error(ErrorKind::kDomainMismatch, "value is not a list");
  return std::get<List>(v_);
}

double Value::scalar() const {
  if (is_bool()) return as_bool() ? 1.0 : 0.0;
  return as_real();
}

int Value::compare(const Value& a, const Value& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index() ? -1 : 1;
  if (a.is_bool()) {
    const bool x = std::get<bool>(a.v_), y = std::get<bool>(b.v_);
    return x == y ? 0 : (x < y ? -1 : 1);
  }
  if (a.is_real()) {
    const double x = std::get<double>(a.v_), y = std::get<double>(b.v_);
    return x == y ? 0 : (x < y ? -1 : 1);
  }
  if (a.is_dataset()) {
    return compare_datasets(std::get<Dataset>(a.v_), std::get<Dataset>(b.v_));
  }
  const List& x = std::get<List>(a.v_);
  const List& y = std::get<List>(b.v_);
  const size_t n = std::min(x.size(), y.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(x[i], y[i]);
    if (c != 0) return c;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

namespace {

void hash_bytes(uint64_t& h, const void* data, size_t n) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;  // FNV-1a
  }
}

void hash_cell(uint64_t& h, const Cell& cell) {
  const auto tag = static_cast<uint8_t>(cell.index());
  hash_bytes(h, &tag, 1);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          hash_bytes(h, x.data(), x.size());
        } else {
          hash_bytes(h, &x, sizeof(x));
        }
      },
      cell);
}

void hash_value(uint64_t& h, const Value& v) {
  if (v.is_bool()) {
    const uint8_t tag = 0, b = v.as_bool() ? 1 : 0;
    hash_bytes(h, &tag, 1);
    hash_bytes(h, &b, 1);
  } else if (v.is_real()) {
    const uint8_t tag = 1;
    const double x = v.as_real();
    hash_bytes(h, &tag, 1);
    hash_bytes(h, &x, sizeof(x));
  } else if (v.is_dataset()) {
    const uint8_t tag = 2;
    hash_bytes(h, &tag, 1);
    for (const auto& record : v.as_dataset().records()) {
      for (const auto& cell : record) hash_cell(h, cell);
    }
  } else {
    const uint8_t tag = 3;
    hash_bytes(h, &tag, 1);
    for (const auto& item : v.as_list()) hash_value(h, item);
  }
}

}  // namespace

std::string Value::digest() const {
  uint64_t h = 0xCBF29CE484222325ULL;
  hash_value(h, *this);
  h = Rng::mix(h);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace {

void debug_print(std::ostringstream& out, const Value& v) {
  if (v.is_bool()) {
    out << (v.as_bool() ? "true" : "false");
  } else if (v.is_real()) {
    out << v.as_real();
  } else if (v.is_dataset()) {
    out << "dataset(" << v.as_dataset().size() << " records)";
  } else {
    out << "[";
    const auto& items = v.as_list();
    for (size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out << ", ";
      debug_print(out, items[i]);
    }
    out << "]";
  }
}

}  // namespace

std::string Value::to_debug_string() const {
  std::ostringstream out;
  debug_print(out, *this);
  return out.str();
}

}  // namespace privcalc
