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

// Test-side oracles. These recompute quantities from first principles and do
// not call the library routine they are used to check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "fpp/commutation.hpp"

namespace fpp::oracle {

inline std::uint64_t fact(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

// Moves the largest (or smallest) remaining gate to the front one adjacent
// swap at a time; each swap "a b" -> "b a" costs e[a][b].
inline std::uint64_t selection_phase(std::vector<int> w, const CommutationTable &t,
                                     bool descending = true) {
  const std::uint64_t m = t.modulus();
  std::uint64_t total = 0;
  for (std::size_t front = 0; front < w.size(); ++front) {
    std::size_t best = front;
    for (std::size_t i = front; i < w.size(); ++i)
      if (descending ? w[i] > w[best] : w[i] < w[best]) best = i;
    for (std::size_t i = best; i > front; --i) {
      total = (total + t.at(w[i - 1], w[i])) % m;
      std::swap(w[i - 1], w[i]);
    }
  }
  return total;
}

template <class Rng>
CommutationTable random_table(int n, Rng &rng) {
  CommutationTable t(n);
  std::uniform_int_distribution<std::uint64_t> pick(0, t.modulus() - 1);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) t.set(j, k, pick(rng));
  return t;
}

template <class Rng>
std::vector<int> random_perm(int n, Rng &rng) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 0);
  std::shuffle(w.begin(), w.end(), rng);
  return w;
}

// Every permutation of 0..n-1 in lexicographic order.
inline std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

}  // namespace fpp::oracle
