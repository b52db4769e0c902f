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

// Dense numerical backend for n <= 3: concrete unitaries satisfying the
// promise and a statevector run of the Fourier sandwich.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "fpp/circuit.hpp"
#include "fpp/commutation.hpp"
#include "fpp/errors.hpp"
#include "fpp/perms.hpp"

namespace fpp {

using cplx = std::complex<double>;

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kProbabilityTol = 1e-9;

class DenseUnitary {
 public:
  explicit DenseUnitary(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
      throw DomainError("unitary must be a nonempty square matrix");
    }
    const double err =
        (m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols())).norm();
    if (err >= kUnitarityTol) {
      throw DomainError("matrix is not unitary, |U^dag U - I|_F = " + std::to_string(err));
    }
  }

  Eigen::Index dimension() const { return m_.rows(); }
  const Eigen::MatrixXcd &matrix() const { return m_; }

 private:
  Eigen::MatrixXcd m_;
};

inline cplx root_of_unity(std::uint64_t m, std::uint64_t power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % m) /
                       static_cast<double>(m);
  return std::polar(1.0, angle);
}

// F[x][y] = w^{xy} / sqrt(m) with w = exp(2 pi i / m).
inline DenseUnitary fourier(std::uint64_t m) {
  if (m == 0) throw DomainError("Fourier transform needs m >= 1");
  const auto d = static_cast<Eigen::Index>(m);
  Eigen::MatrixXcd f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y)
      f(x, y) = scale * root_of_unity(m, static_cast<std::uint64_t>(x) *
                                             static_cast<std::uint64_t>(y) % m);
  return DenseUnitary(std::move(f));
}

// Largest deviation max |(U_j U_k - w^{e y} U_k U_j)_{ab}| over all pairs.
inline double promise_deviation(const std::vector<DenseUnitary> &u, std::uint64_t y,
                                const CommutationTable &t) {
  double worst = 0.0;
  for (int j = 0; j < t.n(); ++j) {
    for (int k = 0; k < t.n(); ++k) {
      if (j == k) continue;
      const auto &a = u[static_cast<std::size_t>(j)].matrix();
      const auto &b = u[static_cast<std::size_t>(k)].matrix();
      const cplx phase = root_of_unity(t.modulus(), mod_mul(t.at(j, k), y, t.modulus()));
      worst = std::max(worst, (a * b - phase * (b * a)).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

namespace detail {

inline Eigen::MatrixXcd shift(Eigen::Index d) {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index t = 0; t < d; ++t) x((t + 1) % d, t) = 1.0;
  return x;
}

inline Eigen::MatrixXcd clock_power(std::uint64_t d, std::uint64_t m) {
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d),
                                               static_cast<Eigen::Index>(d));
  for (std::uint64_t t = 0; t < d; ++t)
    z(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)) =
        root_of_unity(d, mod_mul(t, m, d));
  return z;
}

}  // namespace detail

// n=2: Pauli pair. n=3: one clock/shift register of dimension n! per pair
// j<k, with U_j the shift and U_k a clock power on that register.
inline std::vector<DenseUnitary> build_promise_unitaries(int n, std::uint64_t y,
                                                        const CommutationTable &t) {
  if (t.n() != n) throw DomainError("table n does not match");
  const std::uint64_t mod = t.modulus();
  if (n == 2) {
    Eigen::MatrixXcd sx(2, 2), sy(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, cplx(0, -1), cplx(0, 1), 0;
    const bool anticommute = mod_mul(t.at(0, 1), y, mod) % 2 == 1;
    return {DenseUnitary(sx), DenseUnitary(anticommute ? sy : sx)};
  }
  if (n != 3) {
    throw UnsupportedError("dense promise unitaries are built only for n <= 3");
  }
  const auto d = static_cast<Eigen::Index>(mod);
  const std::vector<std::pair<int, int>> pairs{{0, 1}, {0, 2}, {1, 2}};
  auto build = [&](bool negate) {
    std::vector<DenseUnitary> units;
    for (int g = 0; g < n; ++g) {
      Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
      for (auto [j, k] : pairs) {
        Eigen::MatrixXcd factor = Eigen::MatrixXcd::Identity(d, d);
        if (g == j) factor = detail::shift(d);
        if (g == k) {
          const std::uint64_t e = mod_mul(t.at(j, k), y, mod);
          factor = detail::clock_power(mod, negate ? mod_sub(0, e, mod) : e);
        }
        op = Eigen::kroneckerProduct(op, factor).eval();
      }
      units.emplace_back(std::move(op));
    }
    return units;
  };
  // With Z|t> = w^t |t> and X|t> = |t+1>, X Z^m = w^{-m} Z^m X; the check
  // settles the sign rather than trusting the convention.
  for (bool negate : {true, false}) {
    auto units = build(negate);
    if (promise_deviation(units, y, t) < kProbabilityTol) return units;
  }
  throw std::logic_error("clock/shift construction does not satisfy the promise");
}

struct DenseOptions {
  const Labeling *labeling = nullptr;       // qudit control states; factoradic if null
  std::optional<std::uint64_t> random_seed;  // random product initial state
};

struct DenseResult {
  std::uint64_t measured_y = 0;
  double peak_probability = 0.0;
  std::vector<double> probabilities;
  double total_probability = 0.0;
  bool correct = false;  // measured_y == y_truth
};

namespace detail {

inline ControlState dense_control(const Circuit &c, std::uint64_t x, const DenseOptions &o) {
  if (std::holds_alternative<QuditControl>(c.control) && o.labeling) {
    ControlState s;
    s.perm = o.labeling->word(x);
    return s;
  }
  return resolve_control(c, x);
}

inline std::vector<Eigen::VectorXcd> initial_states(const Circuit &c, Eigen::Index d,
                                                    const DenseOptions &o) {
  std::vector<Eigen::VectorXcd> v(c.wires.size());
  std::mt19937_64 rng(o.random_seed.value_or(0));
  std::normal_distribution<double> gauss;
  for (const Wire &w : c.wires) {
    if (!w.is_data()) continue;
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(d);
    if (o.random_seed) {
      for (Eigen::Index i = 0; i < d; ++i) s(i) = cplx(gauss(rng), gauss(rng));
      s.normalize();
    } else {
      s(0) = 1.0;
    }
    v[static_cast<std::size_t>(w.id)] = std::move(s);
  }
  return v;
}

// Gate action as a physical movement of wire contents. `apply(g, wire)` and
// `permute(wires, source)` are supplied by the backend.
template <class ApplyFn, class PermuteFn>
void interpret(const Circuit &c, const ControlState &s, ApplyFn apply, PermuteFn permute) {
  auto fires = [&](int control, Polarity p) {
    return (s.bits.at(static_cast<std::size_t>(control)) == 1) == (p == Polarity::OnOne);
  };
  auto step_gate = [&](int p) { return (*s.perm)[static_cast<std::size_t>(c.n - 1 - p)]; };
  auto swap2 = [&](int a, int b) { permute(std::vector<int>{a, b}, std::vector<int>{1, 0}); };
  for (const Gate &gate : c.gates) {
    std::visit(
        [&](const auto &g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, Apply>) {
            apply(g.gate, g.rail);
          } else if constexpr (std::is_same_v<T, ControlledApply>) {
            if (fires(g.control, g.polarity)) apply(g.gate, g.rail);
          } else if constexpr (std::is_same_v<T, ControlledSwap>) {
            if (fires(g.control, g.polarity)) swap2(g.rail_a, g.rail_b);
          } else if constexpr (std::is_same_v<T, Rewire>) {
            permute(g.rails, g.by_rank[static_cast<std::size_t>(lex_rank(*s.perm))]);
          } else if constexpr (std::is_same_v<T, SwitchSwap>) {
            swap2(g.target, g.aux[static_cast<std::size_t>(step_gate(g.position))]);
          } else if constexpr (std::is_same_v<T, MemberSwap>) {
            for (int p = g.lo; p < g.hi; ++p)
              if (step_gate(p) == g.gate) swap2(g.target, g.aux);
          } else if constexpr (std::is_same_v<T, QuantumSwitch>) {
            for (int p = 0; p < c.n; ++p) apply(step_gate(p), g.rail);
          }
        },
        gate);
  }
}

inline DenseResult read_out(const Eigen::VectorXd &probs, std::uint64_t y_truth) {
  DenseResult r;
  r.probabilities.assign(probs.data(), probs.data() + probs.size());
  Eigen::Index arg = 0;
  r.peak_probability = probs.maxCoeff(&arg);
  r.measured_y = static_cast<std::uint64_t>(arg);
  r.total_probability = probs.sum();
  r.correct = r.measured_y == y_truth;
  if (std::abs(r.total_probability - 1.0) > kProbabilityTol) {
    throw std::logic_error("dense run lost normalization: " +
                           std::to_string(r.total_probability));
  }
  return r;
}

inline Eigen::Index unit_dimension(const Circuit &c, const std::vector<DenseUnitary> &units) {
  if (units.size() != static_cast<std::size_t>(c.n)) {
    throw DomainError("need one dense unitary per black box");
  }
  const Eigen::Index d = units.front().dimension();
  for (const auto &u : units)
    if (u.dimension() != d) throw DomainError("dense unitaries differ in dimension");
  return d;
}

}  // namespace detail

// Control branches are classical on the basis, so branch x ends in a product
// state over the data wires. Probabilities after F^-1 follow from the Gram
// matrix of those branch states.
inline DenseResult run_dense(const Circuit &c, const std::vector<DenseUnitary> &units,
                             std::uint64_t y_truth, const DenseOptions &opt = {}) {
  validate(c);
  const Eigen::Index d = detail::unit_dimension(c, units);
  const std::uint64_t states = c.state_count();
  const std::vector<int> data = c.data_wires();
  const double work = static_cast<double>(states) * static_cast<double>(data.size()) *
                      static_cast<double>(d);
  if (work > 1e7 || states > 1000) {
    throw UnsupportedError("circuit too large for the dense backend");
  }
  std::vector<std::vector<Eigen::VectorXcd>> branch(static_cast<std::size_t>(states));
  const auto init = detail::initial_states(c, d, opt);
  for (std::uint64_t x = 0; x < states; ++x) {
    auto pos = init;
    detail::interpret(
        c, detail::dense_control(c, x, opt),
        [&](int g, int w) {
          auto &v = pos[static_cast<std::size_t>(w)];
          v = units[static_cast<std::size_t>(g)].matrix() * v;
        },
        [&](const std::vector<int> &wires, const std::vector<int> &src) {
          std::vector<Eigen::VectorXcd> before;
          for (int w : wires) before.push_back(pos[static_cast<std::size_t>(w)]);
          for (std::size_t r = 0; r < wires.size(); ++r)
            pos[static_cast<std::size_t>(wires[r])] = before[static_cast<std::size_t>(src[r])];
        });
    branch[static_cast<std::size_t>(x)] = std::move(pos);
  }
  const auto nstates = static_cast<Eigen::Index>(states);
  Eigen::MatrixXcd gram(nstates, nstates);
  for (Eigen::Index a = 0; a < nstates; ++a) {
    for (Eigen::Index b = 0; b < nstates; ++b) {
      cplx g = 1.0;
      for (int w : data)
        g *= branch[static_cast<std::size_t>(a)][static_cast<std::size_t>(w)].dot(
            branch[static_cast<std::size_t>(b)][static_cast<std::size_t>(w)]);
      gram(a, b) = g;
    }
  }
  const DenseUnitary f = fourier(states);
  // amp(y', x): amplitude of |y'> contributed by branch x; control starts in F|0>.
  const Eigen::MatrixXcd amp =
      f.matrix().adjoint() * f.matrix().col(0).asDiagonal();
  const Eigen::VectorXd probs =
      (amp.conjugate() * gram).cwiseProduct(amp).rowwise().sum().real();
  return detail::read_out(probs, y_truth);
}

// Full tensor statevector over control and data wires. Exponential in the
// number of wires; used as an independent check on tiny circuits.
inline DenseResult run_dense_full(const Circuit &c, const std::vector<DenseUnitary> &units,
                                  std::uint64_t y_truth, const DenseOptions &opt = {}) {
  validate(c);
  const Eigen::Index d = detail::unit_dimension(c, units);
  const std::uint64_t states = c.state_count();
  const std::vector<int> data = c.data_wires();
  double total = static_cast<double>(states);
  for (std::size_t i = 0; i < data.size(); ++i) total *= static_cast<double>(d);
  if (total > static_cast<double>(1 << 22)) {
    throw UnsupportedError("state too large for the full tensor backend");
  }
  const auto block = static_cast<Eigen::Index>(total) / static_cast<Eigen::Index>(states);
  std::vector<int> slot(c.wires.size(), -1);
  for (std::size_t i = 0; i < data.size(); ++i) slot[static_cast<std::size_t>(data[i])] = static_cast<int>(i);
  std::vector<Eigen::Index> stride(data.size(), 1);
  for (std::size_t i = data.size(); i-- > 1;) stride[i - 1] = stride[i] * d;

  // Initial product state on the data wires.
  const auto init = detail::initial_states(c, d, opt);
  Eigen::VectorXcd data0(block);
  for (Eigen::Index idx = 0; idx < block; ++idx) {
    cplx a = 1.0;
    for (std::size_t i = 0; i < data.size(); ++i)
      a *= init[static_cast<std::size_t>(data[i])]((idx / stride[i]) % d);
    data0(idx) = a;
  }
  const DenseUnitary f = fourier(states);
  // psi(x, idx) with the control prepared in F|0>.
  Eigen::MatrixXcd psi(static_cast<Eigen::Index>(states), block);
  for (Eigen::Index x = 0; x < psi.rows(); ++x)
    psi.row(x) = f.matrix()(x, 0) * data0.transpose();

  for (std::uint64_t x = 0; x < states; ++x) {
    Eigen::VectorXcd v = psi.row(static_cast<Eigen::Index>(x)).transpose();
    detail::interpret(
        c, detail::dense_control(c, x, opt),
        [&](int g, int w) {
          const Eigen::Index s = stride[static_cast<std::size_t>(slot[static_cast<std::size_t>(w)])];
          const auto &u = units[static_cast<std::size_t>(g)].matrix();
          Eigen::VectorXcd out = Eigen::VectorXcd::Zero(block);
          for (Eigen::Index idx = 0; idx < block; ++idx) {
            const Eigen::Index digit = (idx / s) % d;
            const Eigen::Index base = idx - digit * s;
            for (Eigen::Index r = 0; r < d; ++r) out(base + r * s) += u(r, digit) * v(idx);
          }
          v = std::move(out);
        },
        [&](const std::vector<int> &wires, const std::vector<int> &src) {
          // Content of wires[src[r]] moves to wires[r].
          Eigen::VectorXcd out(block);
          std::vector<Eigen::Index> digit(data.size()), from(data.size());
          auto slot_of = [&](int w) { return static_cast<std::size_t>(slot[static_cast<std::size_t>(w)]); };
          for (Eigen::Index idx = 0; idx < block; ++idx) {
            for (std::size_t i = 0; i < data.size(); ++i) digit[i] = (idx / stride[i]) % d;
            from = digit;
            for (std::size_t r = 0; r < wires.size(); ++r)
              from[slot_of(wires[static_cast<std::size_t>(src[r])])] = digit[slot_of(wires[r])];
            Eigen::Index source = 0;
            for (std::size_t i = 0; i < data.size(); ++i) source += from[i] * stride[i];
            out(idx) = v(source);
          }
          v = std::move(out);
        });
    psi.row(static_cast<Eigen::Index>(x)) = v.transpose();
  }
  const Eigen::MatrixXcd after = f.matrix().adjoint() * psi;
  const Eigen::VectorXd probs = after.cwiseAbs2().rowwise().sum();
  return detail::read_out(probs, y_truth);
}

}  // namespace fpp
