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

#include "fpp/perms.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace fpp {
namespace {

Labeling from_rows(const std::vector<std::vector<int>> &rows) {
  std::vector<PermWord> words;
  for (const auto &r : rows) words.emplace_back(r);
  return Labeling::from_words(words);
}

// Labels x = 0..5 of the words 210, 102, 201, 012, 120, 021.
Labeling second_n3_labeling() {
  return from_rows({{2, 1, 0}, {1, 0, 2}, {2, 0, 1}, {0, 1, 2}, {1, 2, 0}, {0, 2, 1}});
}

// Labels x = 0..5 of the words 210, 201, 102, 120, 012, 021.
Labeling contradictory_n3_labeling() {
  return from_rows({{2, 1, 0}, {2, 0, 1}, {1, 0, 2}, {1, 2, 0}, {0, 1, 2}, {0, 2, 1}});
}

TEST(perm_word, rejects_non_permutations) {
  ASSERT_THROW(PermWord({0, 0, 1}), DomainError);
  ASSERT_THROW(PermWord({0, 3, 1}), DomainError);
  ASSERT_THROW(PermWord(std::vector<int>{}), DomainError);
}

TEST(perm_word, application_order_is_reversed_product) {
  const PermWord w({2, 0, 1});
  ASSERT_EQ(w.application_order(), (std::vector<int>{1, 0, 2}));
  ASSERT_EQ(PermWord::from_application_order({1, 0, 2}), w);
  ASSERT_EQ(w.to_string(), "U2U0U1");
}

TEST(perm_word, lex_rank_roundtrip) {
  for (int n = 1; n <= 6; ++n) {
    const auto perms = oracle::all_perms(n);
    for (std::size_t r = 0; r < perms.size(); ++r) {
      ASSERT_EQ(lex_rank(PermWord(perms[r])), r);
      ASSERT_EQ(lex_unrank(r, n).order(), perms[r]);
    }
  }
}

TEST(factoradic_labeling, n3_words) {
  const Labeling l = factoradic_labeling(3);
  const std::vector<std::vector<int>> want{{2, 1, 0}, {2, 0, 1}, {1, 2, 0},
                                           {0, 2, 1}, {1, 0, 2}, {0, 1, 2}};
  for (std::uint64_t x = 0; x < 6; ++x) ASSERT_EQ(l.word(x).order(), want[x]) << x;
}

TEST(factoradic_labeling, zero_is_descending) {
  for (int n = 2; n <= 8; ++n) ASSERT_EQ(factoradic_word(0, n), PermWord::descending(n));
}

TEST(factoradic_labeling, rejects_small_n) { ASSERT_THROW(factoradic_labeling(1), DomainError); }

TEST(factoradic_labeling, bijective_and_label_of_roundtrip) {
  for (int n = 2; n <= 6; ++n) {
    const Labeling l = factoradic_labeling(n);
    std::vector<bool> seen(l.size(), false);
    for (std::uint64_t x = 0; x < l.size(); ++x) {
      const PermWord w = l.word(x);
      const auto r = static_cast<std::size_t>(lex_rank(w));
      ASSERT_FALSE(seen[r]);
      seen[r] = true;
      ASSERT_EQ(label_of(l, w), x);
    }
  }
}

TEST(factoradic_labeling, label_of_examples) {
  const Labeling l = factoradic_labeling(3);
  ASSERT_EQ(label_of(l, PermWord({2, 1, 0})), 0u);
  ASSERT_EQ(label_of(l, PermWord({0, 2, 1})), 3u);
  ASSERT_THROW(label_of(l, PermWord({0, 1})), DomainError);
}

TEST(labeling, rejects_non_bijective) {
  ASSERT_THROW(from_rows({{1, 0}, {1, 0}}), DomainError);
  ASSERT_THROW(from_rows({{1, 0}}), DomainError);
}

TEST(validate_labeling, factoradic_n3_table) {
  const ConsistencyResult r = validate_labeling(factoradic_labeling(3));
  ASSERT_TRUE(r.consistent);
  ASSERT_EQ(r.derived_table->at(0, 1), 1u);
  ASSERT_EQ(r.derived_table->at(1, 2), 2u);
  ASSERT_EQ(r.derived_table->at(0, 2), 2u);
}

TEST(validate_labeling, second_n3_labeling_table) {
  const ConsistencyResult r = validate_labeling(second_n3_labeling());
  ASSERT_TRUE(r.consistent);
  ASSERT_EQ(r.derived_table->at(0, 1), 2u);
  ASSERT_EQ(r.derived_table->at(0, 2), 3u);
  ASSERT_EQ(r.derived_table->at(1, 2), 4u);
}

TEST(validate_labeling, contradiction_witness) {
  const ConsistencyResult r = validate_labeling(contradictory_n3_labeling());
  ASSERT_FALSE(r.consistent);
  ASSERT_FALSE(r.derived_table.has_value());
  ASSERT_TRUE(r.witness.has_value());
  ASSERT_EQ(r.witness->j, 0);
  ASSERT_EQ(r.witness->k, 1);
  ASSERT_EQ(r.witness->table_exponent, 1u);
  ASSERT_EQ(r.witness->implied_exponent, 2u);
  ASSERT_NE(r.witness->table_exponent, r.witness->implied_exponent);
}

// Cross-module: the derived table of the factoradic labeling is e[j][k] = k!.
TEST(validate_labeling, factoradic_table_is_factorials) {
  for (int n = 2; n <= 6; ++n) {
    const ConsistencyResult r = validate_labeling(factoradic_labeling(n));
    ASSERT_TRUE(r.consistent);
    for (int k = 1; k < n; ++k)
      for (int j = 0; j < k; ++j) ASSERT_EQ(r.derived_table->at(j, k), oracle::fact(k) % oracle::fact(n));
    ASSERT_EQ(*r.derived_table, factoradic_table(n));
  }
}

TEST(enumerate_valid_labelings, n3_count_and_contents) {
  const auto all = enumerate_valid_labelings(3);
  ASSERT_EQ(all.size(), 24u);
  const Labeling f = factoradic_labeling(3);
  const Labeling second = second_n3_labeling();
  bool has_f = false, has_second = false;
  for (const auto &l : all) {
    ASSERT_TRUE(validate_labeling(l).consistent);
    ASSERT_EQ(l.word(0), PermWord::descending(3));
    has_f = has_f || l == f;
    has_second = has_second || l == second;
  }
  ASSERT_TRUE(has_f);
  ASSERT_TRUE(has_second);
  ASSERT_FALSE(std::any_of(all.begin(), all.end(),
                           [&](const Labeling &l) { return l == contradictory_n3_labeling(); }));
}

TEST(enumerate_valid_labelings, other_n_unsupported) {
  ASSERT_THROW(enumerate_valid_labelings(4), UnsupportedError);
}

TEST(random_valid_labeling, consistent_and_varied) {
  std::mt19937_64 rng(11);
  int differs = 0;
  for (int n = 3; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const Labeling l = random_valid_labeling(n, rng);
      ASSERT_TRUE(validate_labeling(l).consistent);
      differs += l == factoradic_labeling(n) ? 0 : 1;
    }
  }
  ASSERT_GT(differs, 15);
}

TEST(labeling_text, roundtrip) {
  const Labeling l = factoradic_labeling(4);
  const Labeling back = labeling_from_text("# header\n" + to_text(l) + "\n\n");
  ASSERT_EQ(back, l);
  ASSERT_EQ(to_text(factoradic_labeling(2)), "0 1 0\n1 0 1\n");
}

TEST(labeling_text, rejects_bad_input) {
  ASSERT_THROW(labeling_from_text("0 1 0\n0 0 1\n"), DomainError);
  ASSERT_THROW(labeling_from_text("0 1 0\n2 0 1\n"), DomainError);
  ASSERT_THROW(labeling_from_text("0 1 0\n1 0 x\n"), DomainError);
  ASSERT_THROW(labeling_from_text("zero 1 0\n"), DomainError);
}

}  // namespace
}  // namespace fpp
