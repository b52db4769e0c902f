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

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpp/errors.hpp"
#include "fpp/numsys.hpp"

namespace fpp {

// A product of the n black boxes written left to right; the rightmost entry
// acts first. order() is therefore sigma(n-1), ..., sigma(0).
class PermWord {
 public:
  PermWord() = default;

  explicit PermWord(std::vector<int> order) : order_(std::move(order)) {
    const int n = size();
    if (n < 1) throw DomainError("permutation word must be nonempty");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int g : order_) {
      if (g < 0 || g >= n || seen[static_cast<std::size_t>(g)]) {
        throw DomainError("not a permutation of 0.." + std::to_string(n - 1) +
                          ": " + to_string());
      }
      seen[static_cast<std::size_t>(g)] = true;
    }
  }

  static PermWord descending(int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = n - 1 - i;
    return PermWord(std::move(w));
  }

  static PermWord ascending(int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = i;
    return PermWord(std::move(w));
  }

  static PermWord from_application_order(std::vector<int> applied) {
    std::reverse(applied.begin(), applied.end());
    return PermWord(std::move(applied));
  }

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<int> &order() const { return order_; }
  int operator[](std::size_t i) const { return order_[i]; }

  // sigma(0), sigma(1), ...: the order in which the gates act.
  std::vector<int> application_order() const {
    return {order_.rbegin(), order_.rend()};
  }

  std::string to_string() const {
    std::string s;
    for (int g : order_) s += "U" + std::to_string(g);
    return s;
  }

  auto operator<=>(const PermWord &) const = default;

 private:
  std::vector<int> order_;
};

// Lexicographic rank of a permutation of 0..n-1 (Lehmer code).
inline std::uint64_t lex_rank(std::span<const int> w) {
  const int n = static_cast<int>(w.size());
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (w[static_cast<std::size_t>(j)] < w[static_cast<std::size_t>(i)])
        ++smaller;
    r += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
  }
  return r;
}

inline std::uint64_t lex_rank(const PermWord &w) { return lex_rank(w.order()); }

inline PermWord lex_unrank(std::uint64_t r, int n) {
  if (r >= factorial(n)) throw RangeError("rank out of range");
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::vector<int> w;
  w.reserve(pool.size());
  for (int i = n - 1; i >= 0; --i) {
    const std::uint64_t f = factorial(i);
    const auto idx = static_cast<std::size_t>(r / f);
    r %= f;
    w.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return PermWord(std::move(w));
}

}  // namespace fpp
