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

// Text and JSON forms of a verification report. The JSON form round-trips.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "fpp/algorithms.hpp"

namespace fpp {

inline constexpr const char *kReportSchema = "fpp.verification/1";

namespace detail {

template <class T>
nlohmann::json opt(const std::optional<T> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> opt_from(const nlohmann::json &j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace detail

inline void to_json(nlohmann::json &j, const BoundCheck &b) {
  j = {{"name", b.name}, {"value", b.value}, {"limit", b.limit}, {"ok", b.ok}};
}

inline void from_json(const nlohmann::json &j, BoundCheck &b) {
  b.name = j.at("name").get<std::string>();
  b.value = j.at("value").get<std::uint64_t>();
  b.limit = j.at("limit").get<std::string>();
  b.ok = j.at("ok").get<bool>();
}

inline void to_json(nlohmann::json &j, const VerificationReport &r) {
  nlohmann::json wires = nlohmann::json::array();
  for (std::size_t i = 0; i < r.wire_labels.size(); ++i)
    wires.push_back({{"label", r.wire_labels[i]}, {"residual", r.residual_words[i]}});
  j = {{"schema", kReportSchema},
       {"circuit", r.circuit},
       {"family", r.family},
       {"n", r.n},
       {"labeling", r.labeling},
       {"y", r.y},
       {"modulus", r.modulus},
       {"query_count", r.query_count},
       {"wires", wires},
       {"exponents", r.exponents},
       {"residual_failures", r.residual_failures},
       {"first_residual_failure", detail::opt(r.first_residual_failure)},
       {"first_label_mismatch", detail::opt(r.first_label_mismatch)},
       {"switch_wire_ok", detail::opt(r.switch_wire_ok)},
       {"residuals_x_independent", r.residuals_x_independent},
       {"exponents_match_labels", r.exponents_match_labels},
       {"phase_linear", r.phase_linear},
       {"solved_y", detail::opt(r.solved_y)},
       {"bound_checks", r.bound_checks},
       {"passed", r.passed()}};
}

inline void from_json(const nlohmann::json &j, VerificationReport &r) {
  if (j.value("schema", std::string()) != kReportSchema) {
    throw DomainError("not a verification report");
  }
  r.circuit = j.at("circuit").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.n = j.at("n").get<int>();
  r.labeling = j.at("labeling").get<std::string>();
  r.y = j.at("y").get<std::uint64_t>();
  r.modulus = j.at("modulus").get<std::uint64_t>();
  r.query_count = j.at("query_count").get<std::uint64_t>();
  r.wire_labels.clear();
  r.residual_words.clear();
  for (const auto &w : j.at("wires")) {
    r.wire_labels.push_back(w.at("label").get<std::string>());
    r.residual_words.push_back(w.at("residual").get<std::vector<int>>());
  }
  r.exponents = j.at("exponents").get<std::vector<std::uint64_t>>();
  r.residual_failures = j.at("residual_failures").get<std::uint64_t>();
  r.first_residual_failure = detail::opt_from<std::uint64_t>(j.at("first_residual_failure"));
  r.first_label_mismatch = detail::opt_from<std::uint64_t>(j.at("first_label_mismatch"));
  r.switch_wire_ok = detail::opt_from<bool>(j.at("switch_wire_ok"));
  r.residuals_x_independent = j.at("residuals_x_independent").get<bool>();
  r.exponents_match_labels = j.at("exponents_match_labels").get<bool>();
  r.phase_linear = j.at("phase_linear").get<bool>();
  r.solved_y = detail::opt_from<std::uint64_t>(j.at("solved_y"));
  r.bound_checks = j.at("bound_checks").get<std::vector<BoundCheck>>();
}

inline std::string word_text(const std::vector<int> &w) {
  if (w.empty()) return "1";
  std::string s;
  for (int g : w) s += "U" + std::to_string(g);
  return s;
}

// Header block shared by all reports of one sweep.
inline std::string sweep_header_text(const VerificationReport &r) {
  std::ostringstream out;
  out << "circuit " << r.circuit << "  n=" << r.n << "  labeling=" << r.labeling
      << "  queries=" << r.query_count << "  states=" << r.exponents.size() << '\n';
  for (std::size_t i = 0; i < r.wire_labels.size(); ++i)
    out << "  residual " << r.wire_labels[i] << ": " << word_text(r.residual_words[i]) << '\n';
  for (const BoundCheck &b : r.bound_checks)
    out << "  bound " << b.name << ": " << b.value << " vs " << b.limit << ' '
        << (b.ok ? "ok" : "VIOLATED") << '\n';
  return out.str();
}

inline std::string report_line_text(const VerificationReport &r) {
  std::ostringstream out;
  out << "y=" << r.y << "  solved="
      << (r.solved_y ? std::to_string(*r.solved_y) : std::string("none"))
      << "  residuals=" << (r.residuals_x_independent ? "ok" : "x-dependent")
      << "  linear=" << (r.phase_linear ? "yes" : "no")
      << "  labels=" << (r.exponents_match_labels ? "ok" : "mismatch");
  if (r.switch_wire_ok) out << "  switch-wire=" << (*r.switch_wire_ok ? "ok" : "wrong");
  if (r.first_residual_failure) out << "  first-residual-failure=" << *r.first_residual_failure;
  if (r.first_label_mismatch) out << "  first-label-mismatch=" << *r.first_label_mismatch;
  out << "  " << (r.passed() ? "PASS" : "FAIL");
  return out.str();
}

}  // namespace fpp
