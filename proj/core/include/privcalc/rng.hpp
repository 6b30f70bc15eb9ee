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

#ifndef PRIVCALC_RNG_HPP
#define PRIVCALC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace privcalc {

// Deterministic random source. One instance per measurement invocation;
// instances are never shared between invocations or threads.
//
// Uniform doubles are built directly from the raw engine output so that a
// fixed seed replays bit-identically on any conforming implementation
// (std::uniform_real_distribution makes no such guarantee).
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  uint64_t seed() const { return seed_; }

  uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1): (k + 0.5) * 2^-53 for k in [0, 2^53).
  double next_uniform() {
    const uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
  }

  bool next_bernoulli(double p) { return next_uniform() < p; }

  // Laplace(0, scale) via inverse CDF on a uniform double. The chapter-level
  // caveat applies: this is the textbook sampler, not a floating-point
  // hardened one.
  double next_laplace(double scale) {
    const double u = next_uniform() - 0.5;
    const double sign = u < 0.0 ? -1.0 : 1.0;
    return -scale * sign * std::log(1.0 - 2.0 * (u < 0.0 ? -u : u));
  }

  // Independent child stream identified by `salt`. Derivation depends only on
  // (seed, salt), never on how many draws the parent has made, so rejected
  // operations cannot perturb later streams.
  Rng derive(uint64_t salt) const {
    uint64_t s = seed_ ^ mix(salt + 0x9E3779B97F4A7C15ULL);
    return Rng(mix(s));
  }

  static uint64_t mix(uint64_t x) {
    // splitmix64 finalizer.
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace privcalc

#endif  // PRIVCALC_RNG_HPP
