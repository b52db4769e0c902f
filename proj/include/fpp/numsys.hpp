// Copyright 2026 The fpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Factorial number system and the logarithmic bit basis that drives the
// bit-controlled circuits.

#include <cstdint>
#include <string>
#include <vector>

#include "fpp/errors.hpp"

namespace fpp {

// 20! is the largest factorial representable in 64 bits.
inline constexpr int kMaxFactorialN = 20;

inline std::uint64_t factorial(int n) {
  if (n < 0 || n > kMaxFactorialN) {
    throw RangeError("factorial(" + std::to_string(n) +
                     ") is outside the exact 64-bit range");
  }
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

// Smallest b with 2^b >= n.
inline int ceil_log2(std::uint64_t n) {
  if (n == 0) throw DomainError("ceil_log2(0)");
  int b = 0;
  while ((std::uint64_t{1} << b) < n) ++b;
  return b;
}

// ceil(k / 2^i), the weight of bit c_{k,i} in units of k!.
inline std::uint64_t bit_digit_weight(int k, int i) {
  const std::uint64_t d = std::uint64_t{1} << i;
  return (static_cast<std::uint64_t>(k) + d - 1) / d;
}

struct FactoradicDigits {
  int n = 0;
  std::vector<int> digits;  // digits[k-1] holds a_k for k = 1..n-1

  int digit(int k) const { return digits.at(static_cast<std::size_t>(k - 1)); }
  bool operator==(const FactoradicDigits &) const = default;
};

inline void check_n(int n) {
  if (n < 1) throw DomainError("n must be positive, got " + std::to_string(n));
  if (n > kMaxFactorialN) {
    throw RangeError("n=" + std::to_string(n) + " overflows 64-bit n!");
  }
}

inline FactoradicDigits to_factoradic(std::uint64_t x, int n) {
  check_n(n);
  if (x >= factorial(n)) {
    throw RangeError("x=" + std::to_string(x) + " is not below " +
                     std::to_string(n) + "!");
  }
  FactoradicDigits d{n, std::vector<int>(static_cast<std::size_t>(n - 1), 0)};
  for (int k = n - 1; k >= 1; --k) {
    const std::uint64_t f = factorial(k);
    d.digits[static_cast<std::size_t>(k - 1)] = static_cast<int>(x / f);
    x %= f;
  }
  return d;
}

inline std::uint64_t from_factoradic(const FactoradicDigits &d) {
  check_n(d.n);
  if (d.digits.size() != static_cast<std::size_t>(d.n - 1)) {
    throw DomainError("expected " + std::to_string(d.n - 1) + " digits");
  }
  std::uint64_t x = 0;
  for (int k = 1; k < d.n; ++k) {
    const int a = d.digit(k);
    if (a < 0 || a > k) {
      throw DomainError("digit a_" + std::to_string(k) + "=" +
                        std::to_string(a) + " violates 0 <= a_k <= k");
    }
    x += static_cast<std::uint64_t>(a) * factorial(k);
  }
  return x;
}

// Greedy decomposition of a_k, largest weight first: c_{k,i} = 1 iff the
// remainder still covers ceil(k/2^i). Returns ceil(log2 n) bits, i = 1 first.
inline std::vector<std::uint8_t> digit_to_bits(int a_k, int k, int n) {
  if (n < 2) throw DomainError("bit basis needs n >= 2");
  if (k < 1 || k > n - 1) {
    throw RangeError("k=" + std::to_string(k) + " outside 1..n-1");
  }
  if (a_k < 0 || a_k > k) {
    throw RangeError("a_k=" + std::to_string(a_k) + " outside 0..k");
  }
  const int bits = ceil_log2(static_cast<std::uint64_t>(n));
  std::vector<std::uint8_t> c(static_cast<std::size_t>(bits), 0);
  std::uint64_t rest = static_cast<std::uint64_t>(a_k);
  for (int i = 1; i <= bits; ++i) {
    const std::uint64_t w = bit_digit_weight(k, i);
    if (rest >= w) {
      c[static_cast<std::size_t>(i - 1)] = 1;
      rest -= w;
    }
  }
  if (rest != 0) {
    throw std::logic_error("greedy bit decomposition left a remainder");
  }
  return c;
}

struct BitBasisRep {
  int n = 0;
  int bits_per_digit = 0;          // ceil(log2 n)
  std::vector<std::uint8_t> bits;  // index (k-1)*bits_per_digit + (i-1)

  std::size_t slot(int k, int i) const {
    return static_cast<std::size_t>((k - 1) * bits_per_digit + (i - 1));
  }
  bool bit(int k, int i) const { return bits.at(slot(k, i)) != 0; }
  std::size_t slot_count() const { return bits.size(); }

  std::uint64_t evaluate() const {
    std::uint64_t x = 0;
    for (int k = 1; k < n; ++k)
      for (int i = 1; i <= bits_per_digit; ++i)
        if (bit(k, i)) x += bit_digit_weight(k, i) * factorial(k);
    return x;
  }
};

inline BitBasisRep to_bit_basis(std::uint64_t x, int n) {
  if (n < 2) throw DomainError("bit basis needs n >= 2");
  const FactoradicDigits d = to_factoradic(x, n);
  BitBasisRep rep;
  rep.n = n;
  rep.bits_per_digit = ceil_log2(static_cast<std::uint64_t>(n));
  rep.bits.reserve(static_cast<std::size_t>((n - 1) * rep.bits_per_digit));
  for (int k = 1; k < n; ++k) {
    const auto c = digit_to_bits(d.digit(k), k, n);
    rep.bits.insert(rep.bits.end(), c.begin(), c.end());
  }
  return rep;
}

}  // namespace fpp
