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

// Labelings x -> permutation word, their consistency with pairwise
// commutation relations, and the factoradic construction.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fpp/commutation.hpp"
#include "fpp/errors.hpp"
#include "fpp/numsys.hpp"
#include "fpp/perm_word.hpp"

namespace fpp {

// A labeling stores n * n! gate indices, so keep it bounded.
inline constexpr int kMaxLabelingN = 10;

// Word for x in the factoradic labeling: start from the descending product and
// move U_1 right by a_1 places, then U_2 by a_2 places, and so on.
inline PermWord factoradic_word(std::uint64_t x, int n) {
  if (n < 2) throw DomainError("factoradic labeling needs n >= 2");
  const FactoradicDigits d = to_factoradic(x, n);
  std::vector<int> w = PermWord::descending(n).order();
  for (int k = 1; k < n; ++k) {
    const auto pos = static_cast<std::size_t>(
        std::find(w.begin(), w.end(), k) - w.begin());
    const auto steps = static_cast<std::size_t>(d.digit(k));
    std::rotate(w.begin() + static_cast<std::ptrdiff_t>(pos),
                w.begin() + static_cast<std::ptrdiff_t>(pos + 1),
                w.begin() + static_cast<std::ptrdiff_t>(pos + steps + 1));
  }
  return PermWord(std::move(w));
}

class Labeling {
 public:
  Labeling() = default;

  // words[x] is the permutation labelled x; must be a bijection onto S_n.
  static Labeling from_words(const std::vector<PermWord> &words,
                             std::string id = "custom") {
    if (words.empty()) throw DomainError("empty labeling");
    const int n = words.front().size();
    if (n < 1 || n > kMaxLabelingN) {
      throw UnsupportedError("labelings are stored only for n <= " +
                             std::to_string(kMaxLabelingN));
    }
    const std::uint64_t count = factorial(n);
    if (words.size() != count) {
      throw DomainError("labeling for n=" + std::to_string(n) + " needs " +
                        std::to_string(count) + " words, got " +
                        std::to_string(words.size()));
    }
    Labeling l;
    l.n_ = n;
    l.id_ = std::move(id);
    l.cells_.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(n));
    l.label_by_rank_.assign(static_cast<std::size_t>(count), kUnset);
    for (std::uint64_t x = 0; x < count; ++x) {
      const PermWord &w = words[static_cast<std::size_t>(x)];
      if (w.size() != n) throw DomainError("mixed word sizes in labeling");
      auto &slot = l.label_by_rank_[static_cast<std::size_t>(lex_rank(w))];
      if (slot != kUnset) {
        throw DomainError("labeling is not bijective: " + w.to_string() +
                          " appears twice");
      }
      slot = static_cast<std::uint32_t>(x);
      for (int g : w.order()) l.cells_.push_back(static_cast<std::uint8_t>(g));
    }
    return l;
  }

  int n() const { return n_; }
  std::uint64_t size() const { return label_by_rank_.size(); }
  const std::string &id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  PermWord word(std::uint64_t x) const {
    if (x >= size()) throw RangeError("label " + std::to_string(x) + " out of range");
    const auto base = static_cast<std::size_t>(x) * static_cast<std::size_t>(n_);
    return PermWord(std::vector<int>(cells_.begin() + static_cast<std::ptrdiff_t>(base),
                                     cells_.begin() + static_cast<std::ptrdiff_t>(base) + n_));
  }

  std::uint64_t label_of(const PermWord &w) const {
    if (w.size() != n_) {
      throw DomainError("word " + w.to_string() + " does not have n=" +
                        std::to_string(n_));
    }
    return label_by_rank_[static_cast<std::size_t>(lex_rank(w))];
  }

  bool operator==(const Labeling &o) const {
    return n_ == o.n_ && cells_ == o.cells_;
  }

 private:
  static constexpr std::uint32_t kUnset = 0xffffffffu;
  int n_ = 0;
  std::string id_;
  std::vector<std::uint8_t> cells_;
  std::vector<std::uint32_t> label_by_rank_;
};

inline Labeling factoradic_labeling(int n) {
  if (n < 2) throw DomainError("factoradic labeling needs n >= 2");
  if (n > kMaxLabelingN) {
    throw UnsupportedError("factoradic labeling is materialized only for n <= " +
                           std::to_string(kMaxLabelingN));
  }
  std::vector<PermWord> words;
  words.reserve(static_cast<std::size_t>(factorial(n)));
  for (std::uint64_t x = 0; x < factorial(n); ++x)
    words.push_back(factoradic_word(x, n));
  return Labeling::from_words(words, "factoradic");
}

inline std::uint64_t label_of(const Labeling &l, const PermWord &w) {
  return l.label_of(w);
}

// Two words differing by one adjacent transposition of (j, k) imply an
// exponent for that pair that disagrees with the table.
struct Contradiction {
  int j = 0;
  int k = 0;
  std::uint64_t table_exponent = 0;
  std::uint64_t implied_exponent = 0;
  std::uint64_t label_jk = 0;  // label of the word containing "... U_j U_k ..."
  std::uint64_t label_kj = 0;  // same word with the pair swapped
};

struct ConsistencyResult {
  bool consistent = false;
  std::optional<CommutationTable> derived_table;
  std::optional<Contradiction> witness;
};

// Pairwise exponents read off the words "U_{n-1} ... U_0 U_j U_k" (the rest in
// descending order, then the pair).
inline CommutationTable pairwise_table_from(const Labeling &l) {
  const int n = l.n();
  CommutationTable t(n);
  const std::uint64_t m = t.modulus();
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      std::vector<int> rest;
      for (int g = n - 1; g >= 0; --g)
        if (g != j && g != k) rest.push_back(g);
      std::vector<int> jk = rest, kj = rest;
      jk.insert(jk.end(), {j, k});
      kj.insert(kj.end(), {k, j});
      t.set(j, k, mod_sub(l.label_of(PermWord(jk)), l.label_of(PermWord(kj)), m));
    }
  }
  return t;
}

inline std::optional<Contradiction> find_contradiction(const Labeling &l,
                                                       const CommutationTable &t) {
  const int n = l.n();
  const std::uint64_t m = t.modulus();
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      for (std::uint64_t x = 0; x < l.size(); ++x) {
        std::vector<int> w = l.word(x).order();
        for (std::size_t p = 0; p + 1 < w.size(); ++p) {
          if (w[p] != j || w[p + 1] != k) continue;
          std::swap(w[p], w[p + 1]);
          const std::uint64_t other = l.label_of(PermWord(w));
          const std::uint64_t implied = mod_sub(x, other, m);
          if (implied != t.at(j, k)) {
            return Contradiction{j, k, t.at(j, k), implied, x, other};
          }
          break;
        }
      }
    }
  }
  return std::nullopt;
}

// Consistent iff every word's phase relative to map(0), computed with the
// independent bubble-sort oracle under the derived pairwise table, equals
// its label.
inline ConsistencyResult validate_labeling(const Labeling &l) {
  CommutationTable t = pairwise_table_from(l);
  const std::uint64_t m = t.modulus();
  const PhaseExp base = brute_force_phase(l.word(0), t);
  bool ok = true;
  for (std::uint64_t x = 1; x < l.size() && ok; ++x) {
    ok = (brute_force_phase(l.word(x), t) - base).value() == x % m;
  }
  ConsistencyResult r;
  if (ok) {
    r.consistent = true;
    r.derived_table = std::move(t);
    return r;
  }
  r.witness = find_contradiction(l, t);
  if (!r.witness) {
    throw std::logic_error("inconsistent labeling without a transposition witness");
  }
  return r;
}

// All consistent n=3 labelings with the descending word fixed at label 0, in
// the order produced by permuting labels 1..5 over the remaining words.
inline std::vector<Labeling> enumerate_valid_labelings(int n) {
  if (n != 3) {
    throw UnsupportedError("labeling enumeration is implemented only for n=3");
  }
  const PermWord zero = PermWord::descending(n);
  std::vector<PermWord> others;
  for (std::uint64_t r = 0; r < factorial(n); ++r) {
    PermWord w = lex_unrank(r, n);
    if (w != zero) others.push_back(std::move(w));
  }
  std::vector<int> labels(others.size());
  std::iota(labels.begin(), labels.end(), 1);
  std::vector<Labeling> valid;
  do {
    std::vector<PermWord> words(factorial(n));
    words[0] = zero;
    for (std::size_t i = 0; i < others.size(); ++i)
      words[static_cast<std::size_t>(labels[i])] = others[i];
    Labeling l = Labeling::from_words(words, "enumerated");
    if (validate_labeling(l).consistent) valid.push_back(std::move(l));
  } while (std::next_permutation(labels.begin(), labels.end()));
  for (std::size_t i = 0; i < valid.size(); ++i)
    valid[i].set_id("enumerate-index:" + std::to_string(i));
  return valid;
}

// Labels every word by its phase under `table` relative to `base`. Throws if
// the phases are not a bijection onto 0..n!-1.
inline Labeling labeling_from_table(const CommutationTable &table,
                                    const PermWord &base, std::string id) {
  const int n = table.n();
  if (base.size() != n) throw DomainError("base word size != table n");
  std::vector<PermWord> words(static_cast<std::size_t>(factorial(n)));
  std::vector<bool> filled(words.size(), false);
  const PhaseExp p0 = perm_phase_exponent(base, table);
  for (std::uint64_t r = 0; r < words.size(); ++r) {
    PermWord w = lex_unrank(r, n);
    const auto x = static_cast<std::size_t>((perm_phase_exponent(w, table) - p0).value());
    if (filled[x]) {
      throw DomainError("table does not separate all permutations");
    }
    filled[x] = true;
    words[x] = std::move(w);
  }
  return Labeling::from_words(words, std::move(id));
}

// A consistent labeling other than the factoradic one: relabel the gates by a
// random permutation, scale all exponents by a random unit mod n!, and pick a
// random word as label 0.
template <class Rng>
Labeling random_valid_labeling(int n, Rng &rng) {
  const CommutationTable f = factoradic_table(n);
  const std::uint64_t m = f.modulus();
  std::vector<int> relabel(static_cast<std::size_t>(n));
  std::iota(relabel.begin(), relabel.end(), 0);
  std::shuffle(relabel.begin(), relabel.end(), rng);
  std::uniform_int_distribution<std::uint64_t> pick(1, m - 1 == 0 ? 1 : m - 1);
  std::uint64_t unit = 1;
  if (m > 2) {
    do unit = pick(rng);
    while (std::gcd(unit, m) != 1);
  }
  CommutationTable t(n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      t.set(relabel[static_cast<std::size_t>(j)], relabel[static_cast<std::size_t>(k)],
            mod_mul(f.at(j, k), unit, m));
  std::uniform_int_distribution<std::uint64_t> base_rank(0, m - 1);
  return labeling_from_table(t, lex_unrank(base_rank(rng), n), "random");
}

// One line per label: "x g g g ..." with gates in product order.
inline std::string to_text(const Labeling &l) {
  std::ostringstream out;
  for (std::uint64_t x = 0; x < l.size(); ++x) {
    out << x;
    const PermWord w = l.word(x);
    for (int g : w.order()) out << ' ' << g;
    out << '\n';
  }
  return out.str();
}

inline Labeling labeling_from_text(std::string_view text, std::string id = "file") {
  std::vector<std::pair<std::uint64_t, std::vector<int>>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long label = 0;
    if (!(fields >> label)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw DomainError("labeling line " + std::to_string(lineno) + ": bad label");
    }
    if (label < 0) throw DomainError("labeling line " + std::to_string(lineno) + ": negative label");
    std::vector<int> w;
    int g = 0;
    while (fields >> g) w.push_back(g);
    if (!fields.eof()) {
      throw DomainError("labeling line " + std::to_string(lineno) + ": bad gate index");
    }
    rows.emplace_back(static_cast<std::uint64_t>(label), std::move(w));
  }
  std::sort(rows.begin(), rows.end());
  std::vector<PermWord> words;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i) {
      throw DomainError("labels must be exactly 0..n!-1, missing " + std::to_string(i));
    }
    words.emplace_back(rows[i].second);
  }
  return Labeling::from_words(words, std::move(id));
}

}  // namespace fpp
