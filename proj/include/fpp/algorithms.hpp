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

// Circuit constructors for every algorithm family, the block decomposition
// used by the square-root construction, and the symbolic verifier.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpp/circuit.hpp"
#include "fpp/commutation.hpp"
#include "fpp/errors.hpp"
#include "fpp/numsys.hpp"
#include "fpp/parallel.hpp"
#include "fpp/perm_word.hpp"
#include "fpp/perms.hpp"

namespace fpp {

// ---------------------------------------------------------------------------
// Query-count formulas.

inline std::uint64_t sim_switch_queries(int n) {
  return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
}

inline std::uint64_t superperm_queries(int n) {
  return static_cast<std::uint64_t>(n * n - 2 * n + 4);
}

inline std::uint64_t nlogn_queries(int n) {
  const int b = ceil_log2(static_cast<std::uint64_t>(n));
  return 2 * static_cast<std::uint64_t>(n - 1) * static_cast<std::uint64_t>(b) +
         (std::uint64_t{1} << (b + 1)) - 2;
}

// Upper bound 2(n-1)(log2 n + 1) + 4n - 2.
inline long double nlogn_bound(int n) {
  const long double ln = static_cast<long double>(n);
  return 2.0L * (ln - 1.0L) * (std::log2(ln) + 1.0L) + 4.0L * ln - 2.0L;
}

struct BlockSizes {
  int n_hat;  // ceil(sqrt n), block length
  int k_hat;  // ceil(n / n_hat), number of blocks
};

inline BlockSizes block_sizes(int n) {
  if (n < 1) throw DomainError("block sizes need n >= 1");
  int r = 0;
  while (static_cast<long long>(r) * r < n) ++r;
  return {r, (n + r - 1) / r};
}

inline std::uint64_t sqrt_queries(int n) {
  const BlockSizes b = block_sizes(n);
  return static_cast<std::uint64_t>(b.n_hat + 4 * b.k_hat - 4) *
         static_cast<std::uint64_t>(n);
}

// Q < (5 sqrt(n) + 1) n, decided exactly as (Q - n)^2 < 25 n^3.
inline bool sqrt_bound_holds(std::uint64_t q, int n) {
  if (q <= static_cast<std::uint64_t>(n)) return true;
  const auto d = static_cast<unsigned __int128>(q - static_cast<std::uint64_t>(n));
  const auto nn = static_cast<unsigned __int128>(n);
  return d * d < 25 * nn * nn * nn;
}

// ---------------------------------------------------------------------------
// Reference switch.

struct ReferenceSwitch {
  std::shared_ptr<const Labeling> labeling;

  PermWord operator()(std::uint64_t x) const { return labeling->word(x); }
  std::uint64_t query_count() const { return static_cast<std::uint64_t>(labeling->n()); }
};

inline ReferenceSwitch reference_switch(int n, std::shared_ptr<const Labeling> l) {
  if (!l || l->n() != n) throw DomainError("labeling does not match n");
  return {std::move(l)};
}

namespace detail {

inline Circuit qudit_circuit(std::string name, std::string family, int n) {
  Circuit c;
  c.name = std::move(name);
  c.family = std::move(family);
  c.n = n;
  const int x = c.add_wire(WireKind::ControlQudit, "x", factorial(n));
  c.control = QuditControl{x, nullptr};
  return c;
}

}  // namespace detail

// The ideal switch as a one-gate circuit, for uniform verification.
inline Circuit switch_circuit(int n) {
  if (n < 2) throw DomainError("switch needs n >= 2");
  Circuit c = detail::qudit_circuit("switch", "switch", n);
  const int t = c.add_wire(WireKind::Target, "Psi_t");
  c.gates.emplace_back(QuantumSwitch{0, t});
  c.switch_wire = t;
  return c;
}

// n rounds; in round i the target is swapped with a_{sigma(i)}, every U_j is
// applied to a_j, and the swap is undone.
inline Circuit sim_switch_circuit(int n) {
  if (n < 2) throw DomainError("switch simulation needs n >= 2");
  Circuit c = detail::qudit_circuit("sim-switch", "sim-switch", n);
  const int t = c.add_wire(WireKind::Target, "Psi_t");
  std::vector<int> aux;
  for (int j = 0; j < n; ++j)
    aux.push_back(c.add_wire(WireKind::Auxiliary, "a_" + std::to_string(j)));
  for (int i = 0; i < n; ++i) {
    c.gates.emplace_back(SwitchSwap{0, i, t, aux});
    for (int j = 0; j < n; ++j) c.gates.emplace_back(Apply{j, aux[static_cast<std::size_t>(j)]});
    c.gates.emplace_back(SwitchSwap{0, i, t, aux});
  }
  c.switch_wire = t;
  return c;
}

namespace detail {

// A fixed gate sequence, all applied on rail `home`, preceded by rewirings that
// point `home` at dest(state, step) and followed by one that restores it.
// dest returns a data wire id.
template <class Dest>
void add_routed_sequence(Circuit &c, const std::vector<int> &sequence,
                         const std::vector<int> &rails, int home, Dest dest) {
  const std::uint64_t states = factorial(c.n);
  const auto home_pos = static_cast<std::size_t>(
      std::find(rails.begin(), rails.end(), home) - rails.begin());
  // assignment[s][r]: wire currently designated by rails[r] in state s.
  std::vector<std::vector<int>> assignment(static_cast<std::size_t>(states), rails);
  auto rewire_to = [&](auto target_of) {
    Rewire rw{0, rails, {}};
    rw.by_rank.resize(static_cast<std::size_t>(states));
    for (std::uint64_t s = 0; s < states; ++s) {
      const std::vector<int> want = target_of(s);
      auto &cur = assignment[static_cast<std::size_t>(s)];
      std::vector<int> p(rails.size());
      for (std::size_t r = 0; r < rails.size(); ++r)
        p[r] = static_cast<int>(std::find(cur.begin(), cur.end(), want[r]) - cur.begin());
      rw.by_rank[static_cast<std::size_t>(s)] = std::move(p);
      cur = want;
    }
    c.gates.emplace_back(std::move(rw));
  };
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    rewire_to([&](std::uint64_t s) {
      std::vector<int> want = rails;
      const int d = dest(lex_unrank(s, c.n), t);
      const auto dpos = static_cast<std::size_t>(
          std::find(rails.begin(), rails.end(), d) - rails.begin());
      if (dpos == rails.size()) throw std::logic_error("routing to an unknown wire");
      std::swap(want[home_pos], want[dpos]);
      return want;
    });
    c.gates.emplace_back(Apply{sequence[t], home});
  }
  rewire_to([&](std::uint64_t) { return rails; });
}

// Positions of `applied` as a subsequence of s with the smallest span;
// earliest start wins ties. Empty if absent.
inline std::vector<std::size_t> min_span_subsequence(const std::vector<int> &s,
                                                     const std::vector<int> &applied) {
  std::vector<std::size_t> best;
  for (std::size_t start = 0; start < s.size(); ++start) {
    if (s[start] != applied[0]) continue;
    std::vector<std::size_t> pos{start};
    std::size_t q = start + 1;
    for (std::size_t i = 1; i < applied.size(); ++i) {
      while (q < s.size() && s[q] != applied[i]) ++q;
      if (q == s.size()) break;
      pos.push_back(q++);
    }
    if (pos.size() != applied.size()) continue;
    if (best.empty() || pos.back() - pos.front() < best.back() - best.front()) best = pos;
  }
  return best;
}

}  // namespace detail

// Gate string of length n^2 - 2n + 4 containing every permutation as a
// subsequence, in time order (0-based gate indices).
inline std::vector<int> superperm_string(int n) {
  if (n == 3) return {1, 0, 1, 2, 1, 0, 1};
  if (n == 4) return {0, 1, 2, 3, 0, 1, 2, 0, 3, 1, 0, 2};
  throw UnsupportedError("superpermutation simulation is defined for n in {3,4}");
}

// Routing of a permutation onto the string: step t goes to the target iff
// it is one of the returned positions.
inline std::vector<std::size_t> superperm_routing(int n, const PermWord &w) {
  const auto s = superperm_string(n);
  auto pos = detail::min_span_subsequence(s, w.application_order());
  if (pos.empty()) {
    throw std::logic_error("permutation " + w.to_string() + " not in the string");
  }
  return pos;
}

inline Circuit superperm_sim_switch(int n) {
  const std::vector<int> s = superperm_string(n);
  Circuit c = detail::qudit_circuit("superperm", "superperm", n);
  const int t = c.add_wire(WireKind::Target, "Psi_t");
  std::vector<int> rails{t};
  std::vector<int> aux(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g) {
    if (std::count(s.begin(), s.end(), g) > 1) {
      aux[static_cast<std::size_t>(g)] =
          c.add_wire(WireKind::Auxiliary, "a_" + std::to_string(g));
      rails.push_back(aux[static_cast<std::size_t>(g)]);
    }
  }
  detail::add_routed_sequence(c, s, rails, t, [&](const PermWord &w, std::size_t step) {
    const auto pos = superperm_routing(n, w);
    if (std::find(pos.begin(), pos.end(), step) != pos.end()) return t;
    const int a = aux[static_cast<std::size_t>(s[step])];
    if (a < 0) throw std::logic_error("single-use gate routed away from the target");
    return a;
  });
  c.switch_wire = t;
  return c;
}

// Routing table for the six-query n=3 circuit: per permutation (product
// order) one destination per step of the string U0 U1 U2 U1 U0 U1. 'U' is
// Psi_1, 'O' is Psi_2 and 'A' is a_1.
inline const std::array<std::pair<std::array<int, 3>, const char *>, 6> &
six_query_routes() {
  static const std::array<std::pair<std::array<int, 3>, const char *>, 6> routes{{
      {{2, 1, 0}, "UUUAOO"},
      {{2, 0, 1}, "UUUOOA"},
      {{1, 2, 0}, "UAUUOO"},
      {{0, 2, 1}, "OUUAUO"},
      {{1, 0, 2}, "OOUAUU"},
      {{0, 1, 2}, "OOUUUA"},
  }};
  return routes;
}

inline Circuit six_query_n3() {
  const std::vector<int> s{0, 1, 2, 1, 0, 1};
  Circuit c = detail::qudit_circuit("six-query", "six-query", 3);
  const int psi1 = c.add_wire(WireKind::Target, "Psi_1");
  const int psi2 = c.add_wire(WireKind::Target, "Psi_2");
  const int a1 = c.add_wire(WireKind::Auxiliary, "a_1");
  detail::add_routed_sequence(
      c, s, {psi1, psi2, a1}, psi1, [&](const PermWord &w, std::size_t step) {
        for (const auto &[word, route] : six_query_routes()) {
          if (std::vector<int>(word.begin(), word.end()) != w.order()) continue;
          switch (route[step]) {
            case 'U': return psi1;
            case 'O': return psi2;
            default: return a1;
          }
        }
        throw std::logic_error("six-query routing table is incomplete");
      });
  return c;
}

// ---------------------------------------------------------------------------
// O(n log n) construction over the bit basis.

struct NlognLayout {
  int bits;                                  // ceil(log2 n)
  std::vector<std::pair<int, int>> dropped_bits;   // (k, i)
  std::vector<std::pair<int, int>> dropped_wires;  // (2^i, j)
};

inline NlognLayout nlogn_layout(int n, bool reduced) {
  NlognLayout l{ceil_log2(static_cast<std::uint64_t>(n)), {}, {}};
  if (!reduced) return l;
  if (n == 4) {
    l.dropped_bits = {{1, 2}};
    l.dropped_wires = {{4, 1}, {4, 4}};
  } else if (n == 8) {
    l.dropped_bits = {{1, 3}, {2, 3}, {3, 3}};
    l.dropped_wires = {{8, 1}, {8, 2}, {8, 3}, {8, 8}};
  } else {
    throw UnsupportedError("reduced O(n log n) circuit is defined only for n in {4,8}");
  }
  return l;
}

inline std::uint64_t nlogn_reduced_queries(int n) {
  if (n == 4) return 14;
  if (n == 8) return 46;
  throw UnsupportedError("reduced O(n log n) circuit is defined only for n in {4,8}");
}

// Wire of U_k at level i: Psi_{2^i, ((k-1) mod 2^i) + 1}.
inline int nlogn_wire_column(int k, int i) { return ((k - 1) % (1 << i)) + 1; }

inline Circuit nlogn_circuit(int n, bool reduced = false) {
  if (n < 2) throw DomainError("O(n log n) circuit needs n >= 2");
  const NlognLayout layout = nlogn_layout(n, reduced);
  Circuit c;
  c.name = reduced ? "nlogn-reduced" : "nlogn";
  c.family = "nlogn";
  c.n = n;
  auto kept = [](const auto &dropped, std::pair<int, int> p) {
    return std::find(dropped.begin(), dropped.end(), p) == dropped.end();
  };
  const int b = layout.bits;
  // bit[k][i], psi[i][j]; -1 where dropped
  std::vector<std::vector<int>> bit(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(b + 1), -1));
  BitControl control;
  for (int k = 1; k < n; ++k) {
    for (int i = 1; i <= b; ++i) {
      if (!kept(layout.dropped_bits, {k, i})) continue;
      const int id = c.add_wire(WireKind::ControlBit,
                                "c_{" + std::to_string(k) + "," + std::to_string(i) + "}");
      bit[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = id;
      control.slots.push_back({k, i, id});
    }
  }
  c.control = std::move(control);
  std::vector<std::vector<int>> psi(static_cast<std::size_t>(b + 1));
  std::vector<int> targets;
  for (int i = 1; i <= b; ++i) {
    const int width = 1 << i;
    psi[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(width + 1), -1);
    for (int j = 1; j <= width; ++j) {
      if (!kept(layout.dropped_wires, {width, j})) continue;
      const int id = c.add_wire(WireKind::Target, "Psi_{" + std::to_string(width) + "," +
                                                      std::to_string(j) + "}");
      psi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = id;
      targets.push_back(id);
    }
  }
  auto place = [&](int k, int i, Polarity pol) {
    const int cb = bit[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    const int w = psi[static_cast<std::size_t>(i)]
                     [static_cast<std::size_t>(nlogn_wire_column(k, i))];
    if ((cb < 0) != (w < 0)) throw std::logic_error("reduction drops a bit but not its wire");
    if (cb >= 0) c.gates.emplace_back(ControlledApply{k, w, cb, pol});
  };
  for (int k = n - 1; k >= 1; --k)
    for (int i = 1; i <= b; ++i) place(k, i, Polarity::OnOne);
  for (int w : targets) c.gates.emplace_back(Apply{0, w});
  for (int k = 1; k < n; ++k)
    for (int i = b; i >= 1; --i) place(k, i, Polarity::OnZero);
  return c;
}

// ---------------------------------------------------------------------------
// Block decomposition and the O(n sqrt n) construction.

struct BlockDecomposition {
  int n = 0;
  int n_hat = 0;
  int k_hat = 0;
  std::vector<PermWord> pi_xk;    // k = 0 .. k_hat-1
  std::vector<PermWord> pi_r_xk;  // k = 1 .. k_hat-1 stored at k-1
};

// Step range [lo, hi) of block k.
inline std::pair<int, int> block_range(int n, int n_hat, int k) {
  return {k * n_hat, std::min((k + 1) * n_hat, n)};
}

inline BlockDecomposition decompose_blocks(const PermWord &w, int n) {
  if (w.size() != n) throw DomainError("word size != n");
  const BlockSizes bs = block_sizes(n);
  const std::vector<int> sigma = w.application_order();
  auto steps = [&](int lo, int hi) {
    return std::vector<int>(sigma.begin() + lo, sigma.begin() + hi);
  };
  auto sorted = [](std::vector<int> v, bool descending) {
    if (descending)
      std::sort(v.rbegin(), v.rend());
    else
      std::sort(v.begin(), v.end());
    return v;
  };
  BlockDecomposition d{n, bs.n_hat, bs.k_hat, {}, {}};
  for (int k = 0; k < bs.k_hat; ++k) {
    const auto [lo, hi] = block_range(n, bs.n_hat, k);
    std::vector<int> word = sorted(steps(hi, n), true);
    const std::vector<int> block = steps(lo, hi);
    word.insert(word.end(), block.rbegin(), block.rend());
    const std::vector<int> low = sorted(steps(0, lo), true);
    word.insert(word.end(), low.begin(), low.end());
    d.pi_xk.emplace_back(std::move(word));
  }
  for (int k = 1; k < bs.k_hat; ++k) {
    const int lo = k * bs.n_hat;
    std::vector<int> word = sorted(steps(0, lo), false);
    const std::vector<int> high = sorted(steps(lo, n), false);
    word.insert(word.end(), high.begin(), high.end());
    d.pi_r_xk.emplace_back(std::move(word));
  }
  return d;
}

// Left-hand side of the block identity: descending phases of the Pi_xk plus
// ascending phases of the reversed-order words.
inline PhaseExp block_phase_sum(const BlockDecomposition &d, const CommutationTable &t) {
  PhaseExp sum(0, t.modulus());
  for (const PermWord &w : d.pi_xk) sum += word_phase(w.order(), t, Order::Descending);
  for (const PermWord &w : d.pi_r_xk) sum += word_phase(w.order(), t, Order::Ascending);
  return sum;
}

inline Circuit sqrt_circuit(int n) {
  if (n < 2) throw DomainError("O(n sqrt n) circuit needs n >= 2");
  const BlockSizes bs = block_sizes(n);
  const int nh = bs.n_hat;
  const int kh = bs.k_hat;
  Circuit c = detail::qudit_circuit("sqrt", "sqrt", n);
  std::vector<int> psi, phi(static_cast<std::size_t>(kh), -1), aux;
  for (int k = 0; k < kh; ++k)
    psi.push_back(c.add_wire(WireKind::Target, "Psi_" + std::to_string(k)));
  for (int k = 1; k < kh; ++k)
    phi[static_cast<std::size_t>(k)] =
        c.add_wire(WireKind::Target, "Phi_" + std::to_string(k));
  for (int i = 0; i < n; ++i)
    aux.push_back(c.add_wire(WireKind::Auxiliary, "a_" + std::to_string(i)));

  // U_i lands on `target` iff it acts at a step in [lo, hi), otherwise on a_i.
  auto sweep = [&](int target, int lo, int hi, bool ascending) {
    for (int s = 0; s < n; ++s) {
      const int i = ascending ? s : n - 1 - s;
      const int a = aux[static_cast<std::size_t>(i)];
      c.gates.emplace_back(MemberSwap{0, target, a, i, lo, hi});
      c.gates.emplace_back(Apply{i, a});
      c.gates.emplace_back(MemberSwap{0, target, a, i, lo, hi});
    }
  };
  // Part 1: the gates of earlier blocks in ascending index order.
  for (int k = 1; k < kh; ++k) sweep(psi[static_cast<std::size_t>(k)], 0, k * nh, true);
  for (int k = 1; k < kh; ++k) sweep(phi[static_cast<std::size_t>(k)], k * nh, n, false);
  // Part 2: block k in its original order on Psi_k, all blocks side by side.
  for (int i = 0; i < nh; ++i) {
    std::vector<Gate> swaps;
    for (int k = 0; k < kh; ++k)
      if (k * nh + i < n)
        swaps.emplace_back(SwitchSwap{0, k * nh + i, psi[static_cast<std::size_t>(k)], aux});
    c.gates.insert(c.gates.end(), swaps.begin(), swaps.end());
    for (int j = 0; j < n; ++j) c.gates.emplace_back(Apply{j, aux[static_cast<std::size_t>(j)]});
    c.gates.insert(c.gates.end(), swaps.rbegin(), swaps.rend());
  }
  // Part 3: the gates of later blocks, then the rest of each Phi_k.
  for (int k = 0; k + 1 < kh; ++k) sweep(psi[static_cast<std::size_t>(k)], (k + 1) * nh, n, true);
  for (int k = 1; k < kh; ++k) sweep(phi[static_cast<std::size_t>(k)], 0, k * nh, false);
  return c;
}

// ---------------------------------------------------------------------------
// Verification.

struct BoundCheck {
  std::string name;
  std::uint64_t value = 0;
  std::string limit;
  bool ok = false;

  bool operator==(const BoundCheck &) const = default;
};

inline std::vector<BoundCheck> bound_checks(const Circuit &c) {
  const std::uint64_t q = query_count(c);
  const int n = c.n;
  std::vector<BoundCheck> out;
  auto exact = [&](std::uint64_t want) {
    out.push_back({"queries == formula", q, std::to_string(want), q == want});
  };
  const bool eliminated = c.name.find("+eliminated") != std::string::npos;
  const std::string base = eliminated ? c.name.substr(0, c.name.find('+')) : c.name;
  if (c.family == "switch") {
    exact(static_cast<std::uint64_t>(n));
  } else if (c.family == "sim-switch") {
    exact(sim_switch_queries(n));
  } else if (c.family == "superperm") {
    exact(superperm_queries(n));
  } else if (c.family == "six-query") {
    exact(6);
    out.push_back({"queries < superpermutation simulation", q,
                   std::to_string(superperm_queries(3)), q < superperm_queries(3)});
  } else if (c.family == "nlogn") {
    exact(base == "nlogn-reduced" ? nlogn_reduced_queries(n) : nlogn_queries(n));
    const long double bound = nlogn_bound(n);
    out.push_back({"queries < 2(n-1)(log2 n+1)+4n-2", q, std::to_string(bound),
                   static_cast<long double>(q) < bound});
  } else if (c.family == "sqrt") {
    exact(sqrt_queries(n));
    out.push_back({"queries < (5 sqrt(n)+1)n", q,
                   std::to_string((5.0L * std::sqrt(static_cast<long double>(n)) + 1.0L) * n),
                   sqrt_bound_holds(q, n)});
  }
  return out;
}

// Per-x symbolic result of one sweep. exponents[x] is p(x): the total phase
// is w^{p(x) y} once every data wire is normal-ordered into its x=0 word.
struct Sweep {
  std::string circuit;
  std::string family;
  int n = 0;
  std::string labeling;
  std::uint64_t modulus = 0;
  std::uint64_t query_count = 0;
  std::vector<std::string> wire_labels;             // data wires
  std::vector<std::vector<int>> residual_words;     // x=0 product words
  std::vector<std::uint64_t> exponents;
  std::vector<std::uint8_t> residual_ok;
  std::vector<std::uint8_t> switch_ok;              // empty unless declared
  std::vector<BoundCheck> bounds;
};

struct SweepOptions {
  int threads = 0;  // 0 selects default_thread_count()
};

inline Sweep sweep(const Circuit &c, const Labeling &l, SweepOptions opt = {}) {
  if (l.n() != c.n) throw DomainError("labeling n does not match circuit n");
  const ConsistencyResult consistency = validate_labeling(l);
  if (!consistency.consistent) {
    throw PreconditionError("labeling " + l.id() + " is not consistent with any " +
                            "pairwise commutation table");
  }
  validate(c);
  const CommutationTable &t = *consistency.derived_table;
  const std::uint64_t m = t.modulus();
  const std::vector<int> data = c.data_wires();
  const bool qudit = std::holds_alternative<QuditControl>(c.control);

  auto state_for = [&](std::uint64_t x) {
    if (!qudit) return resolve_control(c, x);
    ControlState s;
    s.perm = l.word(x);
    return s;
  };

  Sweep r;
  r.circuit = c.name;
  r.family = c.family;
  r.n = c.n;
  r.labeling = l.id();
  r.modulus = m;
  r.query_count = query_count(c);
  r.bounds = bound_checks(c);
  const WireOutcome ref = execute_unchecked(c, state_for(0));
  std::vector<std::vector<int>> ref_sorted;
  std::vector<PhaseExp> ref_phase;
  for (int w : data) {
    r.wire_labels.push_back(c.wires[static_cast<std::size_t>(w)].label);
    std::vector<int> pw = ref.product_word(w);
    ref_phase.push_back(word_phase(pw, t));
    std::vector<int> s = pw;
    std::sort(s.begin(), s.end());
    ref_sorted.push_back(std::move(s));
    r.residual_words.push_back(std::move(pw));
  }
  const std::uint64_t states = c.state_count();
  r.exponents.assign(static_cast<std::size_t>(states), 0);
  r.residual_ok.assign(static_cast<std::size_t>(states), 0);
  if (c.switch_wire) r.switch_ok.assign(static_cast<std::size_t>(states), 0);

  const int threads = opt.threads > 0 ? opt.threads : default_thread_count();
  parallel_for(states, threads, [&](std::uint64_t x) {
    const ControlState s = state_for(x);
    const WireOutcome out = execute_unchecked(c, s);
    PhaseExp p(0, m);
    bool same = true;
    for (std::size_t i = 0; i < data.size(); ++i) {
      std::vector<int> pw = out.product_word(data[i]);
      p += word_phase(pw, t) - ref_phase[i];
      std::sort(pw.begin(), pw.end());
      same = same && pw == ref_sorted[i];
    }
    const auto xi = static_cast<std::size_t>(x);
    r.exponents[xi] = p.value();
    r.residual_ok[xi] = same ? 1 : 0;
    if (c.switch_wire) {
      r.switch_ok[xi] = out.product_word(*c.switch_wire) == l.word(x).order() ? 1 : 0;
    }
  });
  return r;
}

struct VerificationReport {
  std::string circuit;
  std::string family;
  int n = 0;
  std::string labeling;
  std::uint64_t y = 0;
  std::uint64_t modulus = 0;
  std::uint64_t query_count = 0;
  std::vector<std::string> wire_labels;
  std::vector<std::vector<int>> residual_words;  // x=0 reference, product order
  std::vector<std::uint64_t> exponents;          // p(x), coefficient of y
  std::uint64_t residual_failures = 0;
  std::optional<std::uint64_t> first_residual_failure;
  std::optional<std::uint64_t> first_label_mismatch;  // first x with p(x) != x
  std::optional<bool> switch_wire_ok;
  bool residuals_x_independent = false;
  bool exponents_match_labels = false;
  bool phase_linear = false;
  std::optional<std::uint64_t> solved_y;
  std::vector<BoundCheck> bound_checks;

  bool bounds_ok() const {
    return std::all_of(bound_checks.begin(), bound_checks.end(),
                       [](const BoundCheck &b) { return b.ok; });
  }

  bool passed() const {
    return solved_y && *solved_y == y && exponents_match_labels &&
           switch_wire_ok.value_or(true) && bounds_ok();
  }

  bool operator==(const VerificationReport &) const = default;
};

// Reads y off a finished sweep: the phase w^{p(x) y} must equal w^{x s} for a
// single slope s, which is the solution.
inline VerificationReport solve(const Sweep &s, std::uint64_t y) {
  if (y >= s.modulus) {
    throw RangeError("y=" + std::to_string(y) + " not below " + std::to_string(s.modulus));
  }
  VerificationReport r;
  r.circuit = s.circuit;
  r.family = s.family;
  r.n = s.n;
  r.labeling = s.labeling;
  r.y = y;
  r.modulus = s.modulus;
  r.query_count = s.query_count;
  r.wire_labels = s.wire_labels;
  r.residual_words = s.residual_words;
  r.exponents = s.exponents;
  r.bound_checks = s.bounds;
  const std::uint64_t m = s.modulus;
  for (std::size_t x = 0; x < s.residual_ok.size(); ++x) {
    if (!s.residual_ok[x]) {
      ++r.residual_failures;
      if (!r.first_residual_failure) r.first_residual_failure = x;
    }
  }
  r.residuals_x_independent = r.residual_failures == 0;
  if (!s.switch_ok.empty()) {
    r.switch_wire_ok = std::all_of(s.switch_ok.begin(), s.switch_ok.end(),
                                   [](std::uint8_t v) { return v != 0; });
  }
  for (std::size_t x = 0; x < s.exponents.size(); ++x) {
    if (s.exponents[x] != x % m) {
      r.first_label_mismatch = x;
      break;
    }
  }
  r.exponents_match_labels = !r.first_label_mismatch.has_value();
  const std::uint64_t slope = s.exponents.size() > 1 ? mod_mul(s.exponents[1], y, m) : 0;
  r.phase_linear = true;
  for (std::size_t x = 0; x < s.exponents.size() && r.phase_linear; ++x)
    r.phase_linear = mod_mul(s.exponents[x], y, m) == mod_mul(x % m, slope, m);
  if (r.phase_linear && r.residuals_x_independent) r.solved_y = slope;
  return r;
}

inline VerificationReport verify_and_solve(const Circuit &c, const Labeling &l,
                                           std::uint64_t y, SweepOptions opt = {}) {
  return solve(sweep(c, l, opt), y);
}

}  // namespace fpp
