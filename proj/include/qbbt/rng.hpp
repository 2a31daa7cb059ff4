// Copyright 2026 The qbbt Authors
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

#pragma once

#include <cstdint>
#include <string_view>

#include "qbbt/errors.hpp"

namespace qbbt {

/// Counter-based 64-bit generator.
///
/// The i-th output of a stream with key `k` is `mix(k + i * kGamma)`, where
/// `mix` is the SplitMix64 finalizer. Output depends only on (key, counter),
/// so sequences are identical on every platform and compiler.
///
/// `split(i)` derives an independent child stream from the key alone; it does
/// not consume or depend on the parent's counter. Parallel work keyed by
/// (seed, point, shot) therefore reproduces sequential execution bit for bit.
class Rng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kSplitSalt = 0xD1B54A32D192ED03ULL;

  constexpr explicit Rng(std::uint64_t seed) : key_(mix(seed ^ kSplitSalt)) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), unbiased (Lemire's multiply-and-reject).
  std::uint64_t uniform_int(std::uint64_t bound) {
    if (bound == 0) throw DomainError("Rng::uniform_int: zero bound");
    std::uint64_t x = next_u64();
    auto m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  constexpr Rng split(std::uint64_t index) const {
    Rng child(0);
    child.key_ = mix(key_ ^ mix(index + kSplitSalt));
    child.counter_ = 0;
    return child;
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// FNV-1a, used to key streams by string identifiers.
constexpr std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace qbbt
