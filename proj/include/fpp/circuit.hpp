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

// Circuit IR over typed wires. Execution is symbolic: for one control basis
// state it records which black boxes land on which physical wire.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "fpp/errors.hpp"
#include "fpp/numsys.hpp"
#include "fpp/perm_word.hpp"
#include "fpp/perms.hpp"

namespace fpp {

enum class WireKind { ControlBit, ControlQudit, Target, Auxiliary };

inline const char *to_string(WireKind k) {
  switch (k) {
    case WireKind::ControlBit: return "control-bit";
    case WireKind::ControlQudit: return "control-qudit";
    case WireKind::Target: return "target";
    case WireKind::Auxiliary: return "auxiliary";
  }
  return "?";
}

struct Wire {
  int id = 0;
  WireKind kind = WireKind::Target;
  std::uint64_t dimension = 0;  // only meaningful for the control qudit
  std::string label;

  bool is_data() const {
    return kind == WireKind::Target || kind == WireKind::Auxiliary;
  }
};

enum class Polarity { OnOne, OnZero };

// Gates address data wires through logical rails; a rail starts out as the
// wire with the same id and is re-pointed by the swap and rewire gates.
struct Apply {
  int gate;
  int rail;
};

struct ControlledApply {
  int gate;
  int rail;
  int control;
  Polarity polarity;
};

struct ControlledSwap {
  int rail_a;
  int rail_b;
  int control;
  Polarity polarity;
};

// For control permutation s (indexed by lex_rank), rail rails[r] afterwards
// designates the wire previously held by rails[by_rank[s][r]].
struct Rewire {
  int control;
  std::vector<int> rails;
  std::vector<std::vector<int>> by_rank;
};

// Swaps target with aux[g], where g is the gate acting at step `position` of
// the controlled permutation.
struct SwitchSwap {
  int control;
  int position;
  int target;
  std::vector<int> aux;
};

// Swaps target with aux iff gate U_gate acts at a step in [lo, hi) of the
// controlled permutation.
struct MemberSwap {
  int control;
  int target;
  int aux;
  int gate;
  int lo;
  int hi;
};

// The ideal quantum switch: applies the controlled permutation to one rail.
struct QuantumSwitch {
  int control;
  int rail;
};

using Gate = std::variant<Apply, ControlledApply, ControlledSwap, Rewire,
                          SwitchSwap, MemberSwap, QuantumSwitch>;

// Qudit control: state x selects labeling->word(x), or the factoradic word
// when no labeling is attached.
struct QuditControl {
  int wire = 0;
  std::shared_ptr<const Labeling> labeling;
};

struct BitSlot {
  int k;
  int i;
  int wire;
};

// Bit control: x is written in the greedy bit basis; every bit that is set
// must have a slot.
struct BitControl {
  std::vector<BitSlot> slots;
};

using ControlSpec = std::variant<std::monostate, QuditControl, BitControl>;

struct Circuit {
  std::string name;
  std::string family;
  int n = 0;
  std::vector<Wire> wires;
  std::vector<Gate> gates;
  ControlSpec control;
  std::optional<int> switch_wire;  // wire expected to carry the permutation itself

  int add_wire(WireKind kind, std::string label, std::uint64_t dimension = 0) {
    const int id = static_cast<int>(wires.size());
    wires.push_back({id, kind, dimension, std::move(label)});
    return id;
  }

  std::vector<int> data_wires() const {
    std::vector<int> ids;
    for (const Wire &w : wires)
      if (w.is_data()) ids.push_back(w.id);
    return ids;
  }

  std::uint64_t state_count() const { return factorial(n); }
};

// Classical control value for one basis state.
struct ControlState {
  std::optional<PermWord> perm;    // qudit control
  std::vector<std::int8_t> bits;  // by wire id; -1 where not a control bit
};

struct WireOutcome {
  std::vector<std::vector<int>> words;  // by wire id, application order

  // The same word written as an operator product (rightmost acts first).
  std::vector<int> product_word(int wire) const {
    const auto &w = words.at(static_cast<std::size_t>(wire));
    return {w.rbegin(), w.rend()};
  }
};

namespace detail {

inline const Wire &wire_at(const Circuit &c, int id) {
  if (id < 0 || id >= static_cast<int>(c.wires.size())) {
    throw StructuralError("wire " + std::to_string(id) + " does not exist");
  }
  return c.wires[static_cast<std::size_t>(id)];
}

inline void check_rail(const Circuit &c, int id) {
  if (!wire_at(c, id).is_data()) {
    throw StructuralError("wire " + std::to_string(id) + " is not a data wire");
  }
}

inline void check_bit(const Circuit &c, int id) {
  if (wire_at(c, id).kind != WireKind::ControlBit) {
    throw StructuralError("wire " + std::to_string(id) + " is not a control bit");
  }
}

inline void check_qudit(const Circuit &c, int id) {
  const auto *q = std::get_if<QuditControl>(&c.control);
  if (!q || q->wire != id || wire_at(c, id).kind != WireKind::ControlQudit) {
    throw StructuralError("wire " + std::to_string(id) +
                          " is not the circuit's control qudit");
  }
}

inline void check_gate_index(const Circuit &c, int g) {
  if (g < 0 || g >= c.n) {
    throw StructuralError("black box U" + std::to_string(g) + " outside 0..n-1");
  }
}

inline bool is_bijection(const std::vector<int> &p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)])
      return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

template <class>
inline constexpr bool kAlwaysFalse = false;

}  // namespace detail

// Throws StructuralError on the first inconsistency.
inline void validate(const Circuit &c) {
  using namespace detail;
  if (c.n < 1) throw StructuralError("circuit has no black boxes");
  for (std::size_t i = 0; i < c.wires.size(); ++i)
    if (c.wires[i].id != static_cast<int>(i))
      throw StructuralError("wire ids must be 0..W-1 in order");
  if (const auto *q = std::get_if<QuditControl>(&c.control)) {
    if (wire_at(c, q->wire).kind != WireKind::ControlQudit)
      throw StructuralError("qudit control points at a non-qudit wire");
    if (q->labeling && q->labeling->n() != c.n)
      throw StructuralError("control labeling has the wrong n");
  } else if (const auto *b = std::get_if<BitControl>(&c.control)) {
    const int bits = c.n >= 2 ? ceil_log2(static_cast<std::uint64_t>(c.n)) : 0;
    for (const BitSlot &s : b->slots) {
      check_bit(c, s.wire);
      if (s.k < 1 || s.k >= c.n || s.i < 1 || s.i > bits)
        throw StructuralError("bit slot outside the basis");
    }
  }
  if (c.switch_wire) check_rail(c, *c.switch_wire);
  for (const Gate &gate : c.gates) {
    std::visit(
        [&](const auto &g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, Apply>) {
            check_gate_index(c, g.gate);
            check_rail(c, g.rail);
          } else if constexpr (std::is_same_v<T, ControlledApply>) {
            check_gate_index(c, g.gate);
            check_rail(c, g.rail);
            check_bit(c, g.control);
          } else if constexpr (std::is_same_v<T, ControlledSwap>) {
            check_rail(c, g.rail_a);
            check_rail(c, g.rail_b);
            check_bit(c, g.control);
          } else if constexpr (std::is_same_v<T, Rewire>) {
            check_qudit(c, g.control);
            for (int r : g.rails) check_rail(c, r);
            if (g.by_rank.size() != factorial(c.n))
              throw StructuralError("rewire needs one entry per control state");
            for (const auto &p : g.by_rank)
              if (p.size() != g.rails.size() || !is_bijection(p))
                throw StructuralError("rewire entry is not a rail bijection");
          } else if constexpr (std::is_same_v<T, SwitchSwap>) {
            check_qudit(c, g.control);
            check_rail(c, g.target);
            if (g.position < 0 || g.position >= c.n ||
                g.aux.size() != static_cast<std::size_t>(c.n))
              throw StructuralError("switch swap needs a step and n aux rails");
            for (int r : g.aux) check_rail(c, r);
          } else if constexpr (std::is_same_v<T, MemberSwap>) {
            check_qudit(c, g.control);
            check_rail(c, g.target);
            check_rail(c, g.aux);
            check_gate_index(c, g.gate);
            if (g.lo < 0 || g.hi > c.n || g.lo > g.hi)
              throw StructuralError("member swap step range outside 0..n");
          } else if constexpr (std::is_same_v<T, QuantumSwitch>) {
            check_qudit(c, g.control);
            check_rail(c, g.rail);
          } else {
            static_assert(detail::kAlwaysFalse<T>);
          }
        },
        gate);
  }
}

inline ControlState resolve_control(const Circuit &c, std::uint64_t x) {
  if (x >= c.state_count()) {
    throw RangeError("control state " + std::to_string(x) + " not below " +
                     std::to_string(c.n) + "!");
  }
  ControlState s;
  if (const auto *q = std::get_if<QuditControl>(&c.control)) {
    s.perm = q->labeling ? q->labeling->word(x) : factoradic_word(x, c.n);
  } else if (const auto *b = std::get_if<BitControl>(&c.control)) {
    const BitBasisRep rep = to_bit_basis(x, c.n);
    s.bits.assign(c.wires.size(), -1);
    std::vector<bool> covered(rep.slot_count(), false);
    for (const BitSlot &slot : b->slots) {
      s.bits[static_cast<std::size_t>(slot.wire)] = rep.bit(slot.k, slot.i) ? 1 : 0;
      covered[rep.slot(slot.k, slot.i)] = true;
    }
    for (int k = 1; k < c.n; ++k)
      for (int i = 1; i <= rep.bits_per_digit; ++i)
        if (rep.bit(k, i) && !covered[rep.slot(k, i)])
          throw StructuralError("x=" + std::to_string(x) + " needs bit c_{" +
                                std::to_string(k) + "," + std::to_string(i) +
                                "} which the circuit does not have");
  }
  return s;
}

// Executes a validated circuit for one control state.
inline WireOutcome execute_unchecked(const Circuit &c, const ControlState &s) {
  WireOutcome out;
  out.words.resize(c.wires.size());
  std::vector<int> rail(c.wires.size());
  for (std::size_t i = 0; i < rail.size(); ++i) rail[i] = static_cast<int>(i);
  auto at = [&](int r) -> std::vector<int> & {
    return out.words[static_cast<std::size_t>(rail[static_cast<std::size_t>(r)])];
  };
  auto swap_rails = [&](int a, int b) {
    std::swap(rail[static_cast<std::size_t>(a)], rail[static_cast<std::size_t>(b)]);
  };
  auto fires = [&](int control, Polarity p) {
    const std::int8_t v = s.bits.at(static_cast<std::size_t>(control));
    if (v < 0) throw StructuralError("control bit has no value");
    return (v == 1) == (p == Polarity::OnOne);
  };
  auto perm = [&]() -> const PermWord & {
    if (!s.perm) throw StructuralError("gate needs a qudit control state");
    return *s.perm;
  };
  // Gate acting at step p is perm()[n-1-p].
  auto step_gate = [&](int p) { return perm()[static_cast<std::size_t>(c.n - 1 - p)]; };

  for (const Gate &gate : c.gates) {
    std::visit(
        [&](const auto &g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, Apply>) {
            at(g.rail).push_back(g.gate);
          } else if constexpr (std::is_same_v<T, ControlledApply>) {
            if (fires(g.control, g.polarity)) at(g.rail).push_back(g.gate);
          } else if constexpr (std::is_same_v<T, ControlledSwap>) {
            if (fires(g.control, g.polarity)) swap_rails(g.rail_a, g.rail_b);
          } else if constexpr (std::is_same_v<T, Rewire>) {
            const auto &p = g.by_rank[static_cast<std::size_t>(lex_rank(perm()))];
            std::vector<int> before;
            for (int r : g.rails) before.push_back(rail[static_cast<std::size_t>(r)]);
            for (std::size_t r = 0; r < g.rails.size(); ++r)
              rail[static_cast<std::size_t>(g.rails[r])] =
                  before[static_cast<std::size_t>(p[r])];
          } else if constexpr (std::is_same_v<T, SwitchSwap>) {
            swap_rails(g.target, g.aux[static_cast<std::size_t>(step_gate(g.position))]);
          } else if constexpr (std::is_same_v<T, MemberSwap>) {
            for (int p = g.lo; p < g.hi; ++p) {
              if (step_gate(p) == g.gate) {
                swap_rails(g.target, g.aux);
                break;
              }
            }
          } else if constexpr (std::is_same_v<T, QuantumSwitch>) {
            for (int p = 0; p < c.n; ++p) at(g.rail).push_back(step_gate(p));
          }
        },
        gate);
  }
  return out;
}

inline WireOutcome execute(const Circuit &c, const ControlState &s) {
  validate(c);
  return execute_unchecked(c, s);
}

inline WireOutcome execute(const Circuit &c, std::uint64_t x) {
  validate(c);
  return execute_unchecked(c, resolve_control(c, x));
}

// Black-box instances in the gate list; swaps and rewirings are free and the
// ideal switch counts one query per gate.
inline std::uint64_t query_count(const Circuit &c) {
  std::uint64_t q = 0;
  for (const Gate &g : c.gates) {
    if (std::holds_alternative<Apply>(g) || std::holds_alternative<ControlledApply>(g))
      q += 1;
    else if (std::holds_alternative<QuantumSwitch>(g))
      q += static_cast<std::uint64_t>(c.n);
  }
  return q;
}

// Replaces every controlled black box by an uncontrolled one on a fresh
// auxiliary wire a_k, swapped in and out under the same control.
inline Circuit eliminate_controlled_unknowns(const Circuit &c) {
  Circuit out = c;
  out.gates.clear();
  std::map<int, int> aux;
  auto aux_for = [&](int k) {
    auto it = aux.find(k);
    if (it != aux.end()) return it->second;
    const int id = out.add_wire(WireKind::Auxiliary, "a_" + std::to_string(k));
    aux.emplace(k, id);
    return id;
  };
  for (const Gate &g : c.gates) {
    if (const auto *ca = std::get_if<ControlledApply>(&g)) {
      const int a = aux_for(ca->gate);
      out.gates.emplace_back(ControlledSwap{ca->rail, a, ca->control, ca->polarity});
      out.gates.emplace_back(Apply{ca->gate, a});
      out.gates.emplace_back(ControlledSwap{ca->rail, a, ca->control, ca->polarity});
    } else {
      out.gates.push_back(g);
    }
  }
  if (!aux.empty()) out.name += "+eliminated";
  return out;
}

namespace detail {

inline std::string join(const std::vector<int> &v, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

inline const char *on(Polarity p) { return p == Polarity::OnOne ? "on=1" : "on=0"; }

}  // namespace detail

// Line-oriented dump: header, control, wires, then one line per gate.
inline std::string export_text(const Circuit &c) {
  using detail::join;
  using detail::on;
  std::ostringstream out;
  out << "circuit " << c.name << " family=" << c.family << " n=" << c.n
      << " queries=" << query_count(c) << '\n';
  if (const auto *q = std::get_if<QuditControl>(&c.control)) {
    out << "control qudit wire=" << q->wire << " labeling="
        << (q->labeling ? q->labeling->id() : std::string("factoradic")) << '\n';
  } else if (const auto *b = std::get_if<BitControl>(&c.control)) {
    out << "control bits";
    for (const BitSlot &s : b->slots)
      out << " c_{" << s.k << ',' << s.i << "}=" << s.wire;
    out << '\n';
  } else {
    out << "control none\n";
  }
  if (c.switch_wire) out << "switch-wire " << *c.switch_wire << '\n';
  for (const Wire &w : c.wires) {
    out << "wire " << w.id << ' ' << to_string(w.kind);
    if (w.kind == WireKind::ControlQudit) out << " dim=" << w.dimension;
    out << ' ' << w.label << '\n';
  }
  for (const Gate &gate : c.gates) {
    std::visit(
        [&](const auto &g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, Apply>) {
            out << "apply U" << g.gate << " rail=" << g.rail;
          } else if constexpr (std::is_same_v<T, ControlledApply>) {
            out << "controlled-apply U" << g.gate << " rail=" << g.rail
                << " control=" << g.control << ' ' << on(g.polarity);
          } else if constexpr (std::is_same_v<T, ControlledSwap>) {
            out << "controlled-swap rails=" << g.rail_a << ',' << g.rail_b
                << " control=" << g.control << ' ' << on(g.polarity);
          } else if constexpr (std::is_same_v<T, Rewire>) {
            out << "rewire control=" << g.control << " rails=" << join(g.rails)
                << " table=";
            for (std::size_t s = 0; s < g.by_rank.size(); ++s)
              out << (s ? ";" : "") << join(g.by_rank[s]);
          } else if constexpr (std::is_same_v<T, SwitchSwap>) {
            out << "switch-swap control=" << g.control << " step=" << g.position
                << " target=" << g.target << " aux=" << join(g.aux);
          } else if constexpr (std::is_same_v<T, MemberSwap>) {
            out << "member-swap control=" << g.control << " target=" << g.target
                << " aux=" << g.aux << " gate=U" << g.gate << " steps=[" << g.lo
                << ',' << g.hi << ')';
          } else if constexpr (std::is_same_v<T, QuantumSwitch>) {
            out << "quantum-switch control=" << g.control << " rail=" << g.rail;
          }
          out << '\n';
        },
        gate);
  }
  return out.str();
}

}  // namespace fpp
