// Copyright 2026 fockchain developers
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

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

#include "fockchain/circuit.hpp"

namespace fockchain {

using Json = nlohmann::json;

/// Raised for malformed user input (target files, presets, sweep ranges).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedTarget {
  TargetSpec spec;
  double input_norm = 1.0;
  // Input coefficients deviated from unit norm by more than 1e-6; they were
  // normalized on load.
  bool norm_warning = false;
};

/// Parses a target document: { "n_total": N, "coefficients": [[re, im], ...] }
/// with exactly N+1 coefficient pairs.
inline LoadedTarget parse_target_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("n_total") ||
      !doc.contains("coefficients"))
    throw ConfigError("target: expected fields n_total and coefficients");
  if (!doc["n_total"].is_number_integer())
    throw ConfigError("target: n_total must be an integer");
  const int n_total = doc["n_total"].get<int>();
  if (!doc["coefficients"].is_array())
    throw ConfigError("target: coefficients must be an array of [re, im]");
  std::vector<Complex> coefficients;
  for (const Json& entry : doc["coefficients"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number())
      throw ConfigError("target: each coefficient must be a [re, im] pair");
    coefficients.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  if (coefficients.size() != static_cast<std::size_t>(n_total) + 1)
    throw ConfigError("target: expected exactly n_total + 1 coefficients");
  try {
    TargetSpec spec(n_total, std::move(coefficients));
    LoadedTarget loaded{spec, spec.input_norm(),
                        std::abs(spec.input_norm() - 1.0) > 1e-6};
    return loaded;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("target: ") + e.what());
  }
}

inline LoadedTarget load_target_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("target: cannot open file " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("target: invalid JSON: ") + e.what());
  }
  return parse_target_json(doc);
}

inline Json target_to_json(const TargetSpec& target) {
  Json coefficients = Json::array();
  for (const Complex& c : target.coefficients())
    coefficients.push_back({c.real(), c.imag()});
  return Json{{"n_total", target.n_total()}, {"coefficients", coefficients}};
}

inline Json bs_params_to_json(const BSParams& p) {
  return Json{{"theta", p.theta}, {"phi", p.phi}};
}

inline Json decomposition_to_json(const Decomposition& d) {
  Json roots = Json::array();
  for (const Complex& root : d.roots)
    roots.push_back({root.real(), root.imag()});
  Json ideal = Json::array();
  for (const BSParams& p : d.ideal_params) ideal.push_back(bs_params_to_json(p));
  return Json{{"roots", roots},
              {"infinite_roots", d.infinite_roots},
              {"ideal_params", ideal},
              {"scale", d.scale}};
}

inline Json scheme_to_json(const SchemeParams& scheme) {
  Json stages = Json::array();
  for (const BSParams& p : scheme.stages)
    stages.push_back({{"theta_prime", p.theta}, {"phi_prime", p.phi}});
  return Json{{"transmittance", scheme.transmittance}, {"stages", stages}};
}

/// Inverse of scheme_to_json; doubles round-trip bit-for-bit.
inline SchemeParams scheme_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("transmittance") ||
      !doc.contains("stages"))
    throw ConfigError("scheme: expected fields transmittance and stages");
  SchemeParams scheme;
  scheme.transmittance = doc["transmittance"].get<double>();
  for (const Json& stage : doc["stages"])
    scheme.stages.push_back(BSParams{stage["theta_prime"].get<double>(),
                                     stage["phi_prime"].get<double>()});
  return scheme;
}

inline Json outcome_to_json(const CircuitOutcome& outcome) {
  Json state = Json::array();
  for (const auto& [ket, amp] : outcome.final_state.terms())
    state.push_back(
        {{"ket", ket}, {"amplitude", {amp.real(), amp.imag()}}});
  Json doc{{"stage_probabilities", outcome.stage_probabilities},
           {"success_probability", outcome.success_probability},
           {"raw_norm_sq", outcome.raw_norm_sq},
           {"final_state", state}};
  if (outcome.fidelity_vs_target)
    doc["fidelity_vs_target"] = *outcome.fidelity_vs_target;
  return doc;
}

/// Fixed-width value formatting for sweep tables: 15 significant digits,
/// '.' decimal separator.
inline std::string format_sig15(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.15g", value);
  return buffer;
}

inline std::string format_full(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

inline std::string format_complex(const Complex& c) {
  std::string out = format_full(c.real());
  out += c.imag() < 0.0 ? " - " : " + ";
  out += format_full(std::abs(c.imag()));
  out += "i";
  return out;
}

}  // namespace fockchain
