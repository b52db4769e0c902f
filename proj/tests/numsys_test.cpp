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

#include "fpp/numsys.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace fpp {
namespace {

std::uint64_t digit_sum(const FactoradicDigits &d) {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < d.digits.size(); ++i)
    x += static_cast<std::uint64_t>(d.digits[i]) * oracle::fact(static_cast<int>(i) + 1);
  return x;
}

TEST(numsys, factorial_limits) {
  ASSERT_EQ(factorial(0), 1u);
  ASSERT_EQ(factorial(20), 2432902008176640000ull);
  ASSERT_THROW(factorial(21), RangeError);
  ASSERT_THROW(to_factoradic(0, 21), RangeError);
}

TEST(numsys, to_factoradic_examples) {
  ASSERT_EQ(to_factoradic(0, 3).digits, (std::vector<int>{0, 0}));
  const FactoradicDigits d = to_factoradic(16, 4);
  ASSERT_EQ(d.digits, (std::vector<int>{0, 2, 2}));
  ASSERT_EQ(digit_sum(d), 16u);
  for (int n = 2; n <= 12; ++n) {
    const FactoradicDigits top = to_factoradic(factorial(n) - 1, n);
    for (int k = 1; k < n; ++k) ASSERT_EQ(top.digit(k), k);
  }
}

TEST(numsys, to_factoradic_rejects_out_of_range) {
  ASSERT_THROW(to_factoradic(6, 3), RangeError);
  ASSERT_THROW(to_factoradic(0, 0), DomainError);
}

TEST(numsys, from_factoradic_examples) {
  ASSERT_EQ(from_factoradic({3, {0, 0}}), 0u);
  ASSERT_EQ(from_factoradic({4, {0, 2, 2}}), 16u);
  ASSERT_THROW(from_factoradic({4, {2, 0, 0}}), DomainError);
  ASSERT_THROW(from_factoradic({4, {0, 0}}), DomainError);
}

TEST(numsys, factoradic_roundtrip_exhaustive) {
  for (int n = 1; n <= 7; ++n) {
    for (std::uint64_t x = 0; x < oracle::fact(n); ++x) {
      const FactoradicDigits d = to_factoradic(x, n);
      ASSERT_EQ(digit_sum(d), x);
      ASSERT_EQ(from_factoradic(d), x);
      for (int k = 1; k < n; ++k) ASSERT_LE(d.digit(k), k);
    }
  }
}

TEST(numsys, digit_to_bits_examples) {
  for (int k = 1; k < 9; ++k)
    for (auto b : digit_to_bits(0, k, 9)) ASSERT_EQ(b, 0);
  ASSERT_EQ(digit_to_bits(2, 2, 4), (std::vector<std::uint8_t>{1, 1}));
  ASSERT_EQ(digit_to_bits(2, 3, 4), (std::vector<std::uint8_t>{1, 0}));
  ASSERT_THROW(digit_to_bits(4, 3, 4), RangeError);
  ASSERT_THROW(digit_to_bits(1, 4, 4), RangeError);
}

// Greedy bits reproduce every digit for every n up to 64.
TEST(numsys, digit_to_bits_exhaustive) {
  for (int n = 2; n <= 64; ++n) {
    int bits = 0;
    while ((1 << bits) < n) ++bits;
    for (int k = 1; k < n; ++k) {
      for (int a = 0; a <= k; ++a) {
        const auto c = digit_to_bits(a, k, n);
        ASSERT_EQ(static_cast<int>(c.size()), bits);
        long sum = 0;
        for (int i = 1; i <= bits; ++i)
          if (c[static_cast<std::size_t>(i - 1)]) sum += (k + (1 << i) - 1) >> i;
        ASSERT_EQ(sum, a) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(numsys, bit_basis_example_sixteen) {
  const BitBasisRep r = to_bit_basis(16, 4);
  ASSERT_EQ(r.slot_count(), 6u);
  for (int k = 1; k < 4; ++k) {
    for (int i = 1; i <= 2; ++i) {
      const bool expected = (k == 3 && i == 1) || (k == 2 && i == 1) || (k == 2 && i == 2);
      ASSERT_EQ(r.bit(k, i), expected) << k << "," << i;
    }
  }
  for (auto b : to_bit_basis(0, 6).bits) ASSERT_EQ(b, 0);
}

TEST(numsys, bit_basis_evaluates_exhaustive) {
  for (int n = 2; n <= 6; ++n) {
    int bits = 0;
    while ((1 << bits) < n) ++bits;
    for (std::uint64_t x = 0; x < oracle::fact(n); ++x) {
      const BitBasisRep r = to_bit_basis(x, n);
      ASSERT_EQ(r.slot_count(), static_cast<std::size_t>((n - 1) * bits));
      std::uint64_t v = 0;
      for (int k = 1; k < n; ++k)
        for (int i = 1; i <= bits; ++i)
          if (r.bit(k, i))
            v += static_cast<std::uint64_t>((k + (1 << i) - 1) >> i) * oracle::fact(k);
      ASSERT_EQ(v, x);
      ASSERT_EQ(r.evaluate(), x);
    }
  }
}

TEST(numsys, ceil_log2_values) {
  ASSERT_EQ(ceil_log2(1), 0);
  ASSERT_EQ(ceil_log2(2), 1);
  ASSERT_EQ(ceil_log2(3), 2);
  ASSERT_EQ(ceil_log2(4), 2);
  ASSERT_EQ(ceil_log2(5), 3);
  ASSERT_EQ(ceil_log2(64), 6);
}

}  // namespace
}  // namespace fpp
