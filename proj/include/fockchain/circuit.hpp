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

#include <array>
#include <numeric>
#include <optional>

#include "fockchain/compiler.hpp"

namespace fockchain {

class ZeroProbabilityError : public std::runtime_error {
 public:
  ZeroProbabilityError(int stage, const std::string& what)
      : std::runtime_error(what), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

/// Result of a heralded run: the normalized output state, the squared norm
/// of the unnormalized conditioned state, the per-detector conditional
/// probabilities of the zero-count outcomes, their product, and (when a
/// target was supplied) the fidelity against it.
struct CircuitOutcome {
  FockState final_state;
  double raw_norm_sq = 0.0;
  double success_probability = 0.0;
  std::vector<double> stage_probabilities;
  std::optional<double> fidelity_vs_target;
};

/// Chain rule over the recorded conditional probabilities. For a completed
/// run this telescopes to the squared norm of the final unnormalized state.
inline double success_probability(const std::vector<double>& stage_probs) {
  return std::accumulate(stage_probs.begin(), stage_probs.end(), 1.0,
                         std::multiplies<double>());
}

namespace detail {

// Conditional element Y = R a† T^{n_a} on one mode: attenuate, add a photon,
// scale by the reflectance. Returns the unnormalized conditioned state.
inline FockState apply_conditional_element(const FockState& state, int mode,
                                           double transmittance) {
  FockState out = apply_attenuation(state, mode, transmittance);
  out = add_photon(out, mode);
  out.scale(reflectance(transmittance));
  return out;
}

inline void check_telescoping(double product, double raw_norm_sq) {
  if (std::abs(product - raw_norm_sq) > 1e-12)
    throw std::logic_error(
        "circuit: stage probability product deviates from final squared norm");
}

}  // namespace detail

/// Simulates the heralded chain: a single photon, then for each stage a beam
/// splitter, with the conditional element Y = R a† T^{n_a} between stages
/// (N-1 detectors for N stages). Records each detector's conditional
/// zero-count probability as the ratio of squared norms across its Y.
inline CircuitOutcome run_chain(const SchemeParams& scheme,
                                const TargetSpec* target = nullptr) {
  validate_scheme(scheme);
  const int n = static_cast<int>(scheme.stages.size());
  if (target && target->n_total() != n)
    throw std::invalid_argument(
        "run_chain: target photon number does not match stage count");

  FockState state = add_photon(make_vacuum(2, n), 0);
  std::vector<double> stage_probs;
  stage_probs.reserve(n - 1);
  for (int k = 0; k < n; ++k) {
    state = apply_beamsplitter(state, 0, 1, scheme.stages[k]);
    if (k + 1 < n) {
      const double before = state.norm_sq();
      state = detail::apply_conditional_element(state, 0,
                                                scheme.transmittance);
      const double after = state.norm_sq();
      if (!(after > before * 1e-30))
        throw ZeroProbabilityError(
            k + 1, "run_chain: conditional element annihilated the state at "
                   "stage " +
                       std::to_string(k + 1));
      stage_probs.push_back(after / before);
    }
  }

  CircuitOutcome outcome{state.normalized()};
  outcome.raw_norm_sq = state.norm_sq();
  outcome.stage_probabilities = std::move(stage_probs);
  outcome.success_probability =
      success_probability(outcome.stage_probabilities);
  detail::check_telescoping(outcome.success_probability, outcome.raw_norm_sq);
  if (target)
    outcome.fidelity_vs_target =
        fidelity(outcome.final_state, target->to_state());
  return outcome;
}

/// Four-photon generator: four single photons, a Hong-Ou-Mandel stage on the
/// signal pair, two conditioning beam splitters against the ancilla photons,
/// zero-photon heralding on both ancilla modes, and a final recombining beam
/// splitter. Default angles use symmetric splitters with the phases that
/// produce the quoted intermediate states under this library's convention.
struct Fig2Config {
  BSParams bs1{std::numbers::pi / 4.0, 0.0};
  BSParams bs2{std::numbers::pi / 4.0, 0.0};
  BSParams bs3{std::numbers::pi / 4.0, 0.0};
  BSParams bs4{std::numbers::pi / 4.0, std::numbers::pi / 2.0};
  std::array<int, 2> heralded_modes{2, 3};  // accepted outcome: zero photons

  /// Symmetric layout with the conditioning splitters set to transmittance t.
  static Fig2Config symmetric(double t = 1.0 / std::numbers::sqrt2) {
    if (!(t > 0.0) || !(t < 1.0))
      throw std::invalid_argument("Fig2Config: T must lie in (0, 1)");
    Fig2Config config;
    config.bs2 = BSParams{std::acos(t), 0.0};
    config.bs3 = BSParams{std::acos(t), 0.0};
    return config;
  }
};

struct Fig2Outcome {
  FockState after_bs1;       // normalized snapshot after the HOM stage
  FockState after_heralding; // normalized snapshot after both projections
  FockState final_state;     // normalized output
  double raw_norm_sq = 0.0;
  double success_probability = 0.0;
  std::vector<double> stage_probabilities;
};

inline Fig2Outcome run_fig2(const Fig2Config& config = Fig2Config::symmetric()) {
  FockState state = make_vacuum(4, 4);
  for (int mode = 0; mode < 4; ++mode) state = add_photon(state, mode);

  state = apply_beamsplitter(state, 0, 1, config.bs1);
  const FockState after_bs1 = state.normalized();

  state = apply_beamsplitter(state, 0, 2, config.bs2);
  state = apply_beamsplitter(state, 1, 3, config.bs3);

  std::vector<double> stage_probs;
  for (int mode : config.heralded_modes) {
    const double before = state.norm_sq();
    state = project_zero(state, mode);
    const double after = state.norm_sq();
    if (!(after > 0.0))
      throw ZeroProbabilityError(
          mode, "run_fig2: zero-photon projection annihilated the state");
    stage_probs.push_back(after / before);
  }
  const FockState after_heralding = state.normalized();

  state = apply_beamsplitter(state, 0, 1, config.bs4);

  Fig2Outcome outcome{after_bs1, after_heralding, state.normalized()};
  outcome.raw_norm_sq = state.norm_sq();
  outcome.stage_probabilities = std::move(stage_probs);
  outcome.success_probability =
      success_probability(outcome.stage_probabilities);
  detail::check_telescoping(outcome.success_probability, outcome.raw_norm_sq);
  return outcome;
}

}  // namespace fockchain
