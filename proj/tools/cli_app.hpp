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

// Command implementations behind the fpp executable. Every command writes to
// the given streams and returns the process exit code.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fpp/densesim.hpp"
#include "fpp/fpp.hpp"

namespace fpp::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string &what) : std::invalid_argument(what) {}
};

enum class Format { Text, Json };

struct RunConfig {
  std::string algorithm = "sim-switch";
  int n = 3;
  std::string labeling = "factoradic";
  std::string y = "all";
  std::uint64_t seed = 1;
  int threads = 0;
  bool eliminate = false;
  Format format = Format::Text;
};

inline const std::vector<std::string> &algorithms() {
  static const std::vector<std::string> names{"switch", "sim-switch", "superperm", "six-query",
                                              "nlogn",  "nlogn-reduced", "sqrt"};
  return names;
}

inline Circuit make_circuit(const std::string &alg, int n) {
  if (n < 2 || n > kMaxLabelingN) {
    throw UsageError("--n must be in 2.." + std::to_string(kMaxLabelingN));
  }
  if (alg == "switch") return switch_circuit(n);
  if (alg == "sim-switch") return sim_switch_circuit(n);
  if (alg == "superperm") {
    if (n != 3 && n != 4) throw UsageError("superperm requires --n 3 or 4");
    return superperm_sim_switch(n);
  }
  if (alg == "six-query") {
    if (n != 3) throw UsageError("six-query requires --n 3");
    return six_query_n3();
  }
  if (alg == "nlogn") return nlogn_circuit(n, false);
  if (alg == "nlogn-reduced") {
    if (n != 4 && n != 8) throw UsageError("nlogn-reduced requires --n 4 or 8");
    return nlogn_circuit(n, true);
  }
  if (alg == "sqrt") return sqrt_circuit(n);
  throw UsageError("unknown algorithm '" + alg + "'");
}

// factoradic | file:<path> | enumerate-index:<k>
inline Labeling load_labeling(const std::string &spec, int n) {
  if (spec == "factoradic") return factoradic_labeling(n);
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read labeling file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Labeling l = labeling_from_text(buf.str(), spec);
    if (l.n() != n) throw UsageError("labeling file has n=" + std::to_string(l.n()));
    return l;
  }
  if (spec.rfind("enumerate-index:", 0) == 0) {
    if (n != 3) throw UsageError("enumerate-index labelings exist only for n=3");
    std::size_t k = 0;
    try {
      k = std::stoul(spec.substr(16));
    } catch (const std::exception &) {
      throw UsageError("bad enumerate index in '" + spec + "'");
    }
    auto all = enumerate_valid_labelings(3);
    if (k >= all.size()) {
      throw UsageError("enumerate index must be below " + std::to_string(all.size()));
    }
    return all[k];
  }
  throw UsageError("unknown labeling '" + spec + "'");
}

// all | <int> | sample:<count>
inline std::vector<std::uint64_t> parse_y(const std::string &spec, std::uint64_t modulus,
                                          std::uint64_t seed) {
  std::vector<std::uint64_t> ys;
  if (spec == "all") {
    for (std::uint64_t y = 0; y < modulus; ++y) ys.push_back(y);
    return ys;
  }
  auto number = [&](const std::string &s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad --y value '" + spec + "'");
    return std::stoull(s);
  };
  if (spec.rfind("sample:", 0) == 0) {
    const std::uint64_t count = std::min<std::uint64_t>(number(spec.substr(7)), modulus);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, modulus - 1);
    std::set<std::uint64_t> chosen;
    while (chosen.size() < count) chosen.insert(pick(rng));
    return {chosen.begin(), chosen.end()};
  }
  const std::uint64_t y = number(spec);
  if (y >= modulus) throw UsageError("--y must be below n! = " + std::to_string(modulus));
  return {y};
}

inline int cmd_run(const RunConfig &cfg, std::ostream &out) {
  Circuit c = make_circuit(cfg.algorithm, cfg.n);
  if (cfg.eliminate) c = eliminate_controlled_unknowns(c);
  const Labeling l = load_labeling(cfg.labeling, cfg.n);
  const std::vector<std::uint64_t> ys = parse_y(cfg.y, factorial(cfg.n), cfg.seed);
  const Sweep s = sweep(c, l, {cfg.threads});
  std::vector<VerificationReport> reports;
  std::size_t passed = 0;
  for (std::uint64_t y : ys) {
    reports.push_back(solve(s, y));
    passed += reports.back().passed() ? 1 : 0;
  }
  if (cfg.format == Format::Json) {
    nlohmann::json j = {{"schema", "fpp.run/1"},
                        {"circuit", c.name},
                        {"n", c.n},
                        {"labeling", l.id()},
                        {"query_count", query_count(c)},
                        {"passed", passed},
                        {"total", reports.size()},
                        {"reports", reports}};
    out << j.dump(2) << '\n';
  } else {
    if (!reports.empty()) out << sweep_header_text(reports.front());
    for (const auto &r : reports) out << report_line_text(r) << '\n';
    out << "summary: " << passed << '/' << reports.size() << " pass, queries=" << query_count(c)
        << '\n';
  }
  return passed == reports.size() ? kExitPass : kExitFail;
}

struct QueryRow {
  int n;
  std::uint64_t sim_switch, nlogn, sqrt;
  std::optional<std::uint64_t> special;  // six-query at n=3
  long double nlogn_bound, sqrt_bound;
  bool ok;
};

inline QueryRow query_row(int n) {
  QueryRow r{n, sim_switch_queries(n), nlogn_queries(n), sqrt_queries(n), std::nullopt,
             nlogn_bound(n), (5.0L * std::sqrt(static_cast<long double>(n)) + 1.0L) * n, false};
  if (n == 3) r.special = 6;
  r.ok = static_cast<long double>(r.nlogn) < r.nlogn_bound && sqrt_bound_holds(r.sqrt, n);
  return r;
}

inline int cmd_queries(int n_max, bool quiet, Format format, std::ostream &out) {
  if (n_max < 2 || n_max > 1000000) throw UsageError("--n-max must be in 2..1000000");
  bool all_ok = true;
  nlohmann::json rows = nlohmann::json::array();
  if (format == Format::Text && !quiet)
    out << "n switch simulation nlogn sqrt special nlogn_bound sqrt_bound ok\n";
  for (int n = 2; n <= n_max; ++n) {
    const QueryRow r = query_row(n);
    all_ok = all_ok && r.ok;
    if (quiet) continue;
    if (format == Format::Json) {
      rows.push_back({{"n", n}, {"switch", n}, {"simulation", r.sim_switch},
                      {"nlogn", r.nlogn}, {"sqrt", r.sqrt}, {"special", detail::opt(r.special)},
                      {"nlogn_bound", static_cast<double>(r.nlogn_bound)},
                      {"sqrt_bound", static_cast<double>(r.sqrt_bound)}, {"ok", r.ok}});
    } else {
      out << n << ' ' << n << ' ' << r.sim_switch << ' ' << r.nlogn << ' ' << r.sqrt << ' '
          << (r.special ? std::to_string(*r.special) : std::string("-")) << ' '
          << static_cast<double>(r.nlogn_bound) << ' ' << static_cast<double>(r.sqrt_bound)
          << ' ' << (r.ok ? "ok" : "VIOLATED") << '\n';
    }
  }
  if (format == Format::Json) {
    out << nlohmann::json{{"schema", "fpp.queries/1"}, {"n_max", n_max}, {"all_ok", all_ok},
                          {"rows", rows}}
               .dump(2)
        << '\n';
  } else {
    out << "bounds " << (all_ok ? "hold" : "FAIL") << " for all 2 <= n <= " << n_max << '\n';
  }
  return all_ok ? kExitPass : kExitFail;
}

inline std::string table_text(const CommutationTable &t) {
  std::ostringstream out;
  for (int j = 0; j < t.n(); ++j)
    for (int k = j + 1; k < t.n(); ++k)
      out << "e_{" << j << k << "}=" << t.at(j, k) << (j + 2 == t.n() && k + 1 == t.n() ? "" : " ");
  return out.str();
}

inline int cmd_enumerate(int n, bool list, Format format, std::ostream &out) {
  std::vector<Labeling> all;
  try {
    all = enumerate_valid_labelings(n);
  } catch (const UnsupportedError &e) {
    throw UsageError(e.what());
  }
  if (format == Format::Json) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto &l : all) {
      std::vector<std::vector<int>> words;
      for (std::uint64_t x = 0; x < l.size(); ++x) words.push_back(l.word(x).order());
      items.push_back({{"id", l.id()}, {"words", words}});
    }
    out << nlohmann::json{{"schema", "fpp.labelings/1"}, {"n", n}, {"count", all.size()},
                          {"labelings", list ? items : nlohmann::json::array()}}
               .dump(2)
        << '\n';
    return kExitPass;
  }
  out << all.size() << " valid labelings\n";
  if (list) {
    for (const auto &l : all) {
      out << l.id() << ":";
      for (std::uint64_t x = 0; x < l.size(); ++x) out << ' ' << l.word(x).to_string();
      out << "  [" << table_text(*validate_labeling(l).derived_table) << "]\n";
    }
  }
  return kExitPass;
}

inline int cmd_labeling(int n, const std::string &spec, std::ostream &out) {
  if (n < 2 || n > kMaxLabelingN) throw UsageError("--n must be in 2.." + std::to_string(kMaxLabelingN));
  const Labeling l = load_labeling(spec, n);
  out << to_text(l);
  const ConsistencyResult r = validate_labeling(l);
  if (r.consistent) {
    out << "# consistent: " << table_text(*r.derived_table) << '\n';
    return kExitPass;
  }
  const Contradiction &w = *r.witness;
  out << "# contradiction: pair (" << w.j << ',' << w.k << ") has exponent " << w.table_exponent
      << " but labels " << w.label_jk << " and " << w.label_kj << " imply "
      << w.implied_exponent << '\n';
  return kExitFail;
}

inline int cmd_export(const std::string &alg, int n, bool eliminate, std::ostream &out) {
  Circuit c = make_circuit(alg, n);
  if (eliminate) c = eliminate_controlled_unknowns(c);
  out << export_text(c);
  return kExitPass;
}

struct DenseConfig {
  std::string algorithm = "six-query";
  int n = 3;
  std::string labeling = "factoradic";
  std::uint64_t y = 0;
  std::optional<std::uint64_t> random_seed;
  bool full = false;
  Format format = Format::Text;
};

inline int cmd_dense(const DenseConfig &cfg, std::ostream &out) {
  if (cfg.n < 2 || cfg.n > 3) throw UsageError("dense runs need --n 2 or 3");
  const Circuit c = make_circuit(cfg.algorithm, cfg.n);
  const Labeling l = load_labeling(cfg.labeling, cfg.n);
  if (cfg.y >= l.size()) throw UsageError("--y must be below n!");
  const ConsistencyResult cr = validate_labeling(l);
  if (!cr.consistent) throw PreconditionError("labeling is not consistent");
  const auto units = build_promise_unitaries(cfg.n, cfg.y, *cr.derived_table);
  DenseOptions opt;
  opt.labeling = &l;
  opt.random_seed = cfg.random_seed;
  const DenseResult r = cfg.full ? run_dense_full(c, units, cfg.y, opt) : run_dense(c, units, cfg.y, opt);
  const bool ok = r.correct && r.peak_probability >= 1.0 - kProbabilityTol;
  if (cfg.format == Format::Json) {
    out << nlohmann::json{{"schema", "fpp.dense/1"}, {"circuit", c.name}, {"n", c.n},
                          {"labeling", l.id()}, {"y", cfg.y}, {"measured_y", r.measured_y},
                          {"peak_probability", r.peak_probability},
                          {"probabilities", r.probabilities}, {"passed", ok}}
               .dump(2)
        << '\n';
  } else {
    out << "dense " << c.name << " n=" << c.n << " labeling=" << l.id() << " y=" << cfg.y
        << "  measured=" << r.measured_y << "  probability=" << r.peak_probability << "  "
        << (ok ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kExitPass : kExitFail;
}

inline Format parse_format(const std::string &s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  throw UsageError("--format must be text or json");
}

// Parses argv and dispatches. argv[0] is the program name.
inline int main_with_args(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Causal-order query algorithms for the Fourier promise problem"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format: text or json")->capture_default_str();

  RunConfig run;
  auto *run_cmd = app.add_subcommand("run", "Build a circuit and verify it for the requested y");
  run_cmd->add_option("--alg", run.algorithm, "switch, sim-switch, superperm, six-query, nlogn, nlogn-reduced, sqrt")->required();
  run_cmd->add_option("--n", run.n, "Number of black-box gates")->required();
  run_cmd->add_option("--labeling", run.labeling, "factoradic | file:<path> | enumerate-index:<k>")->capture_default_str();
  run_cmd->add_option("--y", run.y, "all | <int> | sample:<count>")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Seed for sampled y values")->capture_default_str();
  run_cmd->add_option("--threads", run.threads, "Worker threads (default: FPP_THREADS or all cores)");
  run_cmd->add_flag("--eliminate", run.eliminate, "Replace controlled black boxes by controlled swaps");

  int n_max = 16;
  bool quiet = false;
  auto *queries_cmd = app.add_subcommand("queries", "Query counts against the upper bounds");
  queries_cmd->add_option("--n-max", n_max, "Largest n")->capture_default_str();
  queries_cmd->add_flag("--quiet", quiet, "Only check, print the summary line");

  int enum_n = 3;
  bool list = false;
  auto *enum_cmd = app.add_subcommand("enumerate", "Enumerate consistent labelings");
  enum_cmd->add_option("--n", enum_n, "Number of gates (only 3 is supported)")->capture_default_str();
  enum_cmd->add_flag("--list", list, "Print every labeling");

  int lab_n = 3;
  std::string lab_spec = "factoradic";
  auto *lab_cmd = app.add_subcommand("labeling", "Print a labeling and check its consistency");
  lab_cmd->add_option("--n", lab_n, "Number of gates")->capture_default_str();
  lab_cmd->add_option("--labeling", lab_spec, "factoradic | file:<path> | enumerate-index:<k>")->capture_default_str();

  std::string export_alg;
  int export_n = 3;
  bool export_elim = false;
  auto *export_cmd = app.add_subcommand("export", "Print a circuit in the line-oriented format");
  export_cmd->add_option("--alg", export_alg, "Algorithm")->required();
  export_cmd->add_option("--n", export_n, "Number of gates")->capture_default_str();
  export_cmd->add_flag("--eliminate", export_elim, "Apply controlled-unknown elimination first");

  DenseConfig dense;
  std::uint64_t dense_seed = 0;
  auto *dense_cmd = app.add_subcommand("dense", "Run the Fourier sandwich with dense unitaries (n <= 3)");
  dense_cmd->add_option("--alg", dense.algorithm, "Algorithm")->capture_default_str();
  dense_cmd->add_option("--n", dense.n, "Number of gates")->capture_default_str();
  dense_cmd->add_option("--labeling", dense.labeling, "Labeling")->capture_default_str();
  dense_cmd->add_option("--y", dense.y, "The promised y")->capture_default_str();
  auto *seed_opt = dense_cmd->add_option("--random-state", dense_seed, "Seed for random initial wire states");
  dense_cmd->add_flag("--full", dense.full, "Use the full tensor statevector");

  std::vector<char *> argv;
  for (auto &a : args) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    const Format f = parse_format(format);
    if (*run_cmd) {
      run.format = f;
      return cmd_run(run, out);
    }
    if (*queries_cmd) return cmd_queries(n_max, quiet, f, out);
    if (*enum_cmd) return cmd_enumerate(enum_n, list, f, out);
    if (*lab_cmd) return cmd_labeling(lab_n, lab_spec, out);
    if (*export_cmd) return cmd_export(export_alg, export_n, export_elim, out);
    if (*dense_cmd) {
      dense.format = f;
      if (*seed_opt) dense.random_seed = dense_seed;
      return cmd_dense(dense, out);
    }
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError &e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range &e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedError &e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fpp::cli
