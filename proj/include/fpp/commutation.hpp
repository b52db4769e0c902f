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

// Pairwise commutation phases U_j U_k = w^{e[j][k] y} U_k U_j, kept as integer
// exponents modulo n! with y symbolic.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpp/errors.hpp"
#include "fpp/numsys.hpp"
#include "fpp/perm_word.hpp"

namespace fpp {

inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  // a, b < m <= 20! < 2^62, so a + b cannot wrap.
  const std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}

inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

class PhaseExp {
 public:
  PhaseExp() = default;
  PhaseExp(std::uint64_t value, std::uint64_t modulus)
      : value_(modulus == 0 ? 0 : value % modulus), modulus_(modulus) {
    if (modulus == 0) throw DomainError("phase modulus must be positive");
  }

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }

  PhaseExp operator+(const PhaseExp &o) const {
    check(o);
    return {mod_add(value_, o.value_, modulus_), modulus_};
  }
  PhaseExp operator-(const PhaseExp &o) const {
    check(o);
    return {mod_sub(value_, o.value_, modulus_), modulus_};
  }
  PhaseExp operator-() const { return {mod_sub(0, value_, modulus_), modulus_}; }
  PhaseExp &operator+=(const PhaseExp &o) { return *this = *this + o; }

  // Exponent of w once the symbolic y is fixed.
  std::uint64_t times(std::uint64_t y) const {
    return mod_mul(value_, y % modulus_, modulus_);
  }

  bool operator==(const PhaseExp &) const = default;

 private:
  void check(const PhaseExp &o) const {
    if (o.modulus_ != modulus_) throw DomainError("phase modulus mismatch");
  }
  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 1;
};

class CommutationTable {
 public:
  CommutationTable() = default;

  // All-zero (fully commuting) table on n gates with modulus n!.
  explicit CommutationTable(int n)
      : n_(n),
        modulus_(factorial(n)),
        e_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
    if (n < 1) throw DomainError("table needs n >= 1");
  }

  int n() const { return n_; }
  std::uint64_t modulus() const { return modulus_; }

  std::uint64_t at(int j, int k) const { return e_[index(j, k)]; }
  PhaseExp phase(int j, int k) const { return {at(j, k), modulus_}; }

  // Sets e[j][k] and its antisymmetric partner e[k][j].
  void set(int j, int k, std::uint64_t v) {
    if (j == k) throw DomainError("a gate always commutes with itself");
    v %= modulus_;
    e_[index(j, k)] = v;
    e_[index(k, j)] = mod_sub(0, v, modulus_);
  }

  bool antisymmetric() const {
    for (int j = 0; j < n_; ++j) {
      if (at(j, j) != 0) return false;
      for (int k = 0; k < n_; ++k)
        if (mod_add(at(j, k), at(k, j), modulus_) != 0) return false;
    }
    return true;
  }

  bool operator==(const CommutationTable &) const = default;

 private:
  std::size_t index(int j, int k) const {
    if (j < 0 || k < 0 || j >= n_ || k >= n_) {
      throw DomainError("gate index outside table");
    }
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(k);
  }

  int n_ = 0;
  std::uint64_t modulus_ = 1;
  std::vector<std::uint64_t> e_;
};

// e[j][k] = k! for j < k.
inline CommutationTable factoradic_table(int n) {
  if (n < 2) throw DomainError("factoradic table needs n >= 2");
  CommutationTable t(n);
  for (int k = 1; k < n; ++k)
    for (int j = 0; j < k; ++j) t.set(j, k, factorial(k));
  return t;
}

enum class Order { Descending, Ascending };

struct NormalOrderResult {
  PhaseExp phase;
  std::vector<int> word;
};

// Insertion sort of a product word; every adjacent swap "a b" -> "b a"
// contributes e[a][b].
inline NormalOrderResult normal_order(std::span<const int> word,
                                      const CommutationTable &table,
                                      Order direction) {
  std::vector<bool> seen(static_cast<std::size_t>(table.n()), false);
  for (int g : word) {
    if (g < 0 || g >= table.n()) throw DomainError("gate index outside table");
    if (seen[static_cast<std::size_t>(g)]) {
      throw DomainError("duplicate gate U" + std::to_string(g) + " in word");
    }
    seen[static_cast<std::size_t>(g)] = true;
  }
  const std::uint64_t m = table.modulus();
  std::vector<int> w(word.begin(), word.end());
  std::uint64_t phase = 0;
  auto out_of_order = [direction](int left, int right) {
    return direction == Order::Descending ? left < right : left > right;
  };
  for (std::size_t i = 1; i < w.size(); ++i) {
    for (std::size_t p = i; p > 0 && out_of_order(w[p - 1], w[p]); --p) {
      phase = mod_add(phase, table.at(w[p - 1], w[p]), m);
      std::swap(w[p - 1], w[p]);
    }
  }
  return {PhaseExp(phase, m), std::move(w)};
}

// Phase of a product word relative to its sorted form. Repeated indices are
// allowed: equal gates commute trivially, so only distinct pairs contribute.
inline PhaseExp word_phase(std::span<const int> word,
                           const CommutationTable &table,
                           Order direction = Order::Descending) {
  const std::uint64_t m = table.modulus();
  std::uint64_t phase = 0;
  for (std::size_t a = 0; a < word.size(); ++a) {
    for (std::size_t b = a + 1; b < word.size(); ++b) {
      const int l = word[a];
      const int r = word[b];
      const bool inverted = direction == Order::Descending ? l < r : l > r;
      if (inverted) phase = mod_add(phase, table.at(l, r), m);
    }
  }
  return {phase, m};
}

// Sum over inverted pairs of e[left][right], the closed form of the
// descending normal-order phase.
inline PhaseExp perm_phase_exponent(const PermWord &word,
                                    const CommutationTable &table) {
  if (word.size() != table.n()) throw DomainError("word size != table n");
  return word_phase(word.order(), table, Order::Descending);
}

// Independent oracle: literal bubble sort toward descending order, one phase
// per adjacent swap.
inline PhaseExp brute_force_phase(std::span<const int> word,
                                  const CommutationTable &table) {
  std::vector<int> w(word.begin(), word.end());
  PhaseExp total(0, table.modulus());
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] < w[i + 1]) {
        total += table.phase(w[i], w[i + 1]);
        std::swap(w[i], w[i + 1]);
        swapped = true;
      }
    }
  }
  return total;
}

inline PhaseExp brute_force_phase(const PermWord &word,
                                  const CommutationTable &table) {
  return brute_force_phase(word.order(), table);
}

}  // namespace fpp
