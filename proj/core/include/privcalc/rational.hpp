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

#ifndef PRIVCALC_RATIONAL_HPP
#define PRIVCALC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

#include "privcalc/error.hpp"

namespace privcalc {

// Budget accounting runs on exact rationals: float in, rational inside,
// float out. Sums of granted losses then compare against the budget without
// rounding drift.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact binary value of the double (every finite double is a rational).
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::kInvalidArgument,
                "cannot account a non-finite loss exactly");
  }
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  auto scaled = static_cast<int64_t>(std::ldexp(mant, 53));
  Rational r(scaled);
  int shift = exp - 53;
  if (shift >= 0) {
    r *= Rational(BigInt(1) << shift);
  } else {
    r /= Rational(BigInt(1) << -shift);
  }
  return r;
}

inline double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

// Fixed-point rendering, round-half-away-from-zero.
inline std::string format_rational_fixed(const Rational& r, int decimals) {
  BigInt scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  Rational abs_r = r < 0 ? Rational(-r) : r;
  BigInt num = boost::multiprecision::numerator(abs_r) * scale;
  BigInt den = boost::multiprecision::denominator(abs_r);
  BigInt q = BigInt((2 * num + den) / (2 * den));
  std::string integral = BigInt(q / scale).str();
  std::string frac = BigInt(q % scale).str();
  if (decimals == 0) return (r < 0 ? "-" : "") + integral;
  frac.insert(frac.begin(), static_cast<size_t>(decimals) - frac.size(), '0');
  return (r < 0 ? "-" : "") + integral + "." + frac;
}

// Exact "numerator/denominator" form for transcripts and oracles.
inline std::string rational_exact_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace privcalc

#endif  // PRIVCALC_RATIONAL_HPP
