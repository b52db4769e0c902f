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

#include "fpp/commutation.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fpp/perms.hpp"
#include "oracles.hpp"

namespace fpp {
namespace {

TEST(phase_exp, modular_arithmetic) {
  const PhaseExp a(5, 6), b(4, 6);
  ASSERT_EQ((a + b).value(), 3u);
  ASSERT_EQ((b - a).value(), 5u);
  ASSERT_EQ((-a).value(), 1u);
  ASSERT_EQ(a.times(5), 1u);
  ASSERT_THROW(a + PhaseExp(1, 24), DomainError);
}

TEST(factoradic_table, small_values) {
  const CommutationTable t3 = factoradic_table(3);
  ASSERT_EQ(t3.at(0, 1), 1u);
  ASSERT_EQ(t3.at(0, 2), 2u);
  ASSERT_EQ(t3.at(1, 2), 2u);
  const CommutationTable t4 = factoradic_table(4);
  ASSERT_EQ(t4.at(0, 3), 6u);
  ASSERT_EQ(t4.at(1, 3), 6u);
  ASSERT_EQ(t4.at(2, 3), 6u);
  ASSERT_EQ(t4.at(0, 2), 2u);
  ASSERT_EQ(t4.at(1, 2), 2u);
  ASSERT_EQ(t4.at(0, 1), 1u);
  ASSERT_EQ(t4.at(3, 0), 18u);
}

TEST(factoradic_table, antisymmetric) {
  for (int n = 2; n <= 8; ++n) ASSERT_TRUE(factoradic_table(n).antisymmetric());
}

TEST(normal_order, descending_input_is_fixed_point) {
  const CommutationTable t = factoradic_table(5);
  const std::vector<int> w{4, 3, 2, 1, 0};
  const NormalOrderResult r = normal_order(w, t, Order::Descending);
  ASSERT_EQ(r.phase.value(), 0u);
  ASSERT_EQ(r.word, w);
}

TEST(normal_order, four_gate_example) {
  std::mt19937_64 rng(3);
  const CommutationTable t = oracle::random_table(4, rng);
  const std::vector<int> w{1, 2, 0, 3};
  const NormalOrderResult r = normal_order(w, t, Order::Descending);
  const std::uint64_t m = t.modulus();
  const std::uint64_t want = (t.at(0, 3) + t.at(2, 3) + t.at(1, 3) + t.at(1, 2)) % m;
  ASSERT_EQ(r.phase.value(), want);
  ASSERT_EQ(r.word, (std::vector<int>{3, 2, 1, 0}));

  const CommutationTable f = factoradic_table(4);
  ASSERT_EQ(normal_order(w, f, Order::Descending).phase.value(), 20u);
  ASSERT_EQ(brute_force_phase(w, f).value(), 20u);
}

TEST(normal_order, rejects_duplicates) {
  const CommutationTable t = factoradic_table(3);
  const std::vector<int> w{1, 1, 0};
  ASSERT_THROW(normal_order(w, t, Order::Descending), DomainError);
  const std::vector<int> bad{5};
  ASSERT_THROW(normal_order(bad, t, Order::Descending), DomainError);
}

TEST(normal_order, ascending_sorts_up) {
  const CommutationTable t = factoradic_table(4);
  const std::vector<int> w{3, 1, 2, 0};
  ASSERT_EQ(normal_order(w, t, Order::Ascending).word, (std::vector<int>{0, 1, 2, 3}));
  ASSERT_EQ(normal_order(w, t, Order::Ascending).phase.value(),
            oracle::selection_phase(w, t, false));
}

TEST(perm_phase_exponent, examples) {
  const CommutationTable t = factoradic_table(3);
  ASSERT_EQ(perm_phase_exponent(PermWord::descending(3), t).value(), 0u);
  ASSERT_EQ(perm_phase_exponent(PermWord({0, 1, 2}), t).value(), 5u);
  ASSERT_EQ(brute_force_phase(PermWord::descending(3), t).value(), 0u);
  ASSERT_EQ(brute_force_phase(PermWord({0, 1, 2}), t).value(), 5u);
}

// The factoradic word for x carries exactly phase x.
TEST(perm_phase_exponent, factoradic_words_carry_their_label) {
  for (int n = 2; n <= 6; ++n) {
    const CommutationTable t = factoradic_table(n);
    for (std::uint64_t x = 0; x < oracle::fact(n); ++x) {
      const PermWord w = factoradic_word(x, n);
      ASSERT_EQ(perm_phase_exponent(w, t).value(), x);
      ASSERT_EQ(brute_force_phase(w, t).value(), x);
    }
  }
}

TEST(commutation_properties, engine_matches_oracles_on_random_words) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(2, 10);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = size(rng);
    const CommutationTable t = oracle::random_table(n, rng);
    const std::vector<int> w = oracle::random_perm(n, rng);
    const std::uint64_t want = oracle::selection_phase(w, t);
    ASSERT_EQ(normal_order(w, t, Order::Descending).phase.value(), want);
    ASSERT_EQ(brute_force_phase(w, t).value(), want);
    ASSERT_EQ(perm_phase_exponent(PermWord(w), t).value(), want);
  }
}

TEST(commutation_properties, reversal_inverts_phase) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + trial % 9;
    const CommutationTable t = oracle::random_table(n, rng);
    std::vector<int> w = oracle::random_perm(n, rng);
    const PhaseExp forward = normal_order(w, t, Order::Descending).phase;
    std::reverse(w.begin(), w.end());
    const PhaseExp back = normal_order(w, t, Order::Ascending).phase;
    ASSERT_EQ((forward + back).value(), 0u);
  }
}

// Sorting a prefix first and then the whole word costs the same in total.
TEST(commutation_properties, staged_ordering_is_consistent) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + trial % 9;
    const CommutationTable t = oracle::random_table(n, rng);
    const std::vector<int> w = oracle::random_perm(n, rng);
    const auto cut = static_cast<std::size_t>(trial) % w.size();
    const NormalOrderResult head =
        normal_order(std::span<const int>(w.data(), cut), t, Order::Descending);
    std::vector<int> staged = head.word;
    staged.insert(staged.end(), w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
    const PhaseExp two = head.phase + normal_order(staged, t, Order::Descending).phase;
    ASSERT_EQ(two, normal_order(w, t, Order::Descending).phase);
  }
}

TEST(word_phase, repeated_gates_commute_trivially) {
  const CommutationTable t = factoradic_table(4);
  const std::vector<int> w{1, 3, 1, 3};
  // Pairs (left 1, right 3) occur three times.
  ASSERT_EQ(word_phase(w, t).value(), 18u % 24u);
  const std::vector<int> same{2, 2, 2};
  ASSERT_EQ(word_phase(same, t).value(), 0u);
}

}  // namespace
}  // namespace fpp
