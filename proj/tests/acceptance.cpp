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
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned here, in code.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <vector>

#include "fockchain/circuit.hpp"
#include "testutil.hpp"

using namespace fockchain;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::vector<TargetSpec> make_target_suite(int per_photon_number) {
  std::mt19937_64 rng(2026);
  std::vector<TargetSpec> suite;
  for (int n_total = 1; n_total <= 5; ++n_total) {
    for (int k = 0; k < per_photon_number; ++k) {
      const bool zero_first = k % 5 == 1;
      const bool zero_last = k % 7 == 2;
      suite.push_back(
          testutil::random_target(rng, n_total, zero_first, zero_last));
    }
  }
  return suite;
}

// Shared across criteria 1 and 5: the worst telescoping defect seen in any
// simulated run.
double g_worst_telescoping = 0.0;

void end_to_end_synthesis(const std::vector<TargetSpec>& suite) {
  const auto start = std::chrono::steady_clock::now();
  double worst_fidelity = 1.0;
  int solved = 0;
  std::string failure;
  for (const TargetSpec& target : suite) {
    try {
      const Decomposition d = decompose(target);
      const SchemeParams scheme =
          solve_scheme(d.ideal_params, 1.0 / std::numbers::sqrt2);
      const CircuitOutcome outcome = run_chain(scheme, &target);
      worst_fidelity = std::min(worst_fidelity, *outcome.fidelity_vs_target);
      g_worst_telescoping = std::max(
          g_worst_telescoping,
          std::abs(success_probability(outcome.stage_probabilities) -
                   outcome.raw_norm_sq));
      ++solved;
    } catch (const std::exception& e) {
      failure = e.what();
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const bool pass = solved == static_cast<int>(suite.size()) &&
                    worst_fidelity >= 1.0 - 1e-8 && seconds < 60.0;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "%d/%zu targets (N in 1..5, degenerate edges included), worst "
                "fidelity deficit %.3g, %.2fs%s%s",
                solved, suite.size(), 1.0 - worst_fidelity, seconds,
                failure.empty() ? "" : ", last error: ", failure.c_str());
  report("end-to-end synthesis at fidelity >= 1-1e-8", pass, detail);
}

void factorization_oracle(const std::vector<TargetSpec>& suite) {
  double worst_fidelity = 1.0;
  double worst_coeff = 0.0;
  for (const TargetSpec& target : suite) {
    const Decomposition d = decompose(target);
    worst_fidelity =
        std::min(worst_fidelity,
                 fidelity(reconstruct_target(d, target.n_total()),
                          target.to_state()));

    // Convolution expansion of the factor product, compared with the
    // coefficient vector after phase/scale alignment.
    const FockState oracle_state = testutil::state_from_factor_poly(
        testutil::poly_from_roots(d.roots), d.infinite_roots);
    std::vector<Complex> predicted(target.n_total() + 1, Complex(0.0, 0.0));
    for (const auto& [ket, amp] : oracle_state.terms())
      predicted[ket[0]] = amp;
    worst_coeff = std::max(
        worst_coeff, testutil::aligned_coefficient_deviation(
                         predicted, target.coefficients()));
  }
  const bool pass = worst_fidelity >= 1.0 - 1e-8 && worst_coeff <= 1e-8;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "worst reconstruction fidelity deficit %.3g, worst aligned "
                "coefficient error %.3g",
                1.0 - worst_fidelity, worst_coeff);
  report("ladder-product and convolution oracles at 1e-8", pass, detail);
}

void fig2_intermediate_states() {
  const Fig2Outcome outcome = run_fig2();

  FockState ref_bs1(4, 4);
  ref_bs1.add_term({2, 0, 1, 1}, Complex(1.0 / std::numbers::sqrt2, 0.0));
  ref_bs1.add_term({0, 2, 1, 1}, Complex(-1.0 / std::numbers::sqrt2, 0.0));
  FockState ref_heralded(4, 4);
  ref_heralded.add_term({1, 3, 0, 0}, Complex(1.0 / std::numbers::sqrt2, 0.0));
  ref_heralded.add_term({3, 1, 0, 0},
                        Complex(-1.0 / std::numbers::sqrt2, 0.0));
  FockState ref_final(4, 4);
  ref_final.add_term({0, 4, 0, 0}, Complex(1.0 / std::numbers::sqrt2, 0.0));
  ref_final.add_term({4, 0, 0, 0}, Complex(-1.0 / std::numbers::sqrt2, 0.0));

  const double f1 = fidelity(outcome.after_bs1, ref_bs1);
  const double f2 = fidelity(outcome.after_heralding, ref_heralded);
  const double f3 = fidelity(outcome.final_state, ref_final);
  const bool pass =
      f1 >= 1.0 - 1e-10 && f2 >= 1.0 - 1e-10 && f3 >= 1.0 - 1e-10;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "fidelity deficits: after BS1 %.3g, after heralding %.3g, "
                "final %.3g",
                1.0 - f1, 1.0 - f2, 1.0 - f3);
  report("four-photon checkpoint states at 1e-10", pass, detail);
}

void fig2_probability_adjudication() {
  const double t = 1.0 / std::numbers::sqrt2;
  const Fig2Outcome outcome = run_fig2(Fig2Config::symmetric(t));

  testutil::SymbolicTwoMode sym = testutil::SymbolicTwoMode::vacuum();
  sym.raise_a();
  sym.raise_b();
  sym.apply_beamsplitter(std::numbers::pi / 4.0, 0.0);
  sym.conditional_a(t);
  sym.conditional_b(t);
  const double oracle = sym.norm_sq();

  const double difference = std::abs(outcome.success_probability - oracle);
  const bool pass = difference <= 1e-12;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "simulated %.12g, monomial-ladder oracle %.12g (|diff| %.3g); "
                "quoted reference 1/16 = %.6g, comparison scheme 3/64 = %.6g "
                "(simulated value is authoritative)",
                outcome.success_probability, oracle, difference, 1.0 / 16.0,
                3.0 / 64.0);
  report("four-photon success probability vs independent oracle at 1e-12",
         pass, detail);
}

void telescoping_identity() {
  std::mt19937_64 rng(331);
  std::uniform_real_distribution<double> t_dist(0.15, 0.95);
  double worst = g_worst_telescoping;  // includes every criterion-1 run
  for (int trial = 0; trial < 50; ++trial) {
    const int stages = 1 + static_cast<int>(rng() % 5);
    const SchemeParams scheme =
        testutil::random_scheme(rng, stages, t_dist(rng));
    const CircuitOutcome outcome = run_chain(scheme);
    worst = std::max(
        worst, std::abs(success_probability(outcome.stage_probabilities) -
                        outcome.raw_norm_sq));
  }
  const Fig2Outcome fig2 = run_fig2();
  worst = std::max(
      worst, std::abs(success_probability(fig2.stage_probabilities) -
                      fig2.raw_norm_sq));
  report("telescoping identity within 1e-12", worst <= 1e-12,
         "worst |product - raw norm| = " + std::to_string(worst));
}

void conditional_element_equivalence() {
  std::mt19937_64 rng(337);
  double worst = 0.0;
  for (double t : {0.3, 1.0 / std::numbers::sqrt2, 0.9}) {
    for (int trial = 0; trial < 12; ++trial) {
      const FockState signal = testutil::random_state(rng, 2, 3, 4);

      FockState abstract = apply_attenuation(signal, 0, Complex(t, 0.0));
      abstract = add_photon(abstract, 0);
      abstract.scale(reflectance(t));

      FockState physical(3, 5);
      for (const auto& [ket, amp] : signal.terms())
        physical.add_term({ket[0], ket[1], 1}, amp);
      physical = apply_beamsplitter(physical, 0, 2, {std::acos(t), 0.0});
      physical = project_zero(physical, 2);

      for (const auto& [ket, amp] : physical.terms())
        worst = std::max(
            worst, std::abs(amp - abstract.amplitude({ket[0], ket[1]})));
      for (const auto& [ket, amp] : abstract.terms())
        worst = std::max(
            worst, std::abs(amp - physical.amplitude({ket[0], ket[1], 0})));
    }
  }
  report("conditional element vs heralded realization within 1e-12",
         worst <= 1e-12, "worst amplitude difference = " + std::to_string(worst));
}

void numerical_hygiene(const std::vector<TargetSpec>& suite) {
  std::mt19937_64 rng(347);
  std::uniform_real_distribution<double> theta_dist(0.0,
                                                    std::numbers::pi / 2.0);
  std::uniform_real_distribution<double> phi_dist(-std::numbers::pi,
                                                  std::numbers::pi);

  double worst_norm_drift = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const FockState psi = testutil::random_state(rng, 2, 5, 5);
    const FockState out = apply_beamsplitter(
        psi, 0, 1, {theta_dist(rng), phi_dist(rng)});
    worst_norm_drift =
        std::max(worst_norm_drift, std::abs(out.norm_sq() - psi.norm_sq()));
  }

  bool blocks_conserved = true;
  testutil::for_each_ket(2, 6, [&](const Ket& ket) {
    FockState basis(2, 6);
    basis.add_term(ket, Complex(1.0, 0.0));
    const FockState out =
        apply_beamsplitter(basis, 0, 1, {theta_dist(rng), phi_dist(rng)});
    for (const auto& [out_ket, amp] : out.terms())
      blocks_conserved =
          blocks_conserved && out_ket[0] + out_ket[1] == ket[0] + ket[1];
  });

  double worst_residual_ratio = 0.0;
  for (const TargetSpec& target : suite) {
    const std::vector<Complex> poly = char_poly(target);
    double max_coeff = 0.0;
    for (const Complex& p : poly) max_coeff = std::max(max_coeff, std::abs(p));
    const Decomposition d = decompose(target);
    for (const Complex& root : d.roots) {
      Complex value(0.0, 0.0);
      for (auto it = poly.rbegin(); it != poly.rend(); ++it)
        value = value * root + *it;
      worst_residual_ratio =
          std::max(worst_residual_ratio, std::abs(value) / max_coeff);
    }
  }

  double worst_permutation = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n_total = 2 + static_cast<int>(rng() % 4);
    const TargetSpec target = testutil::random_target(rng, n_total);
    Decomposition d = decompose(target);
    const SchemeParams scheme =
        solve_scheme(d.ideal_params, 1.0 / std::numbers::sqrt2);
    const CircuitOutcome reference = run_chain(scheme);

    // Re-map the permuted root list directly (bypassing the deterministic
    // sort) and compile again.
    std::vector<BSParams> permuted_params;
    std::vector<Complex> permuted_roots = d.roots;
    std::shuffle(permuted_roots.begin(), permuted_roots.end(), rng);
    for (const Complex& root : permuted_roots)
      permuted_params.push_back(bs_params_for_root(root));
    for (int k = 0; k < d.infinite_roots; ++k)
      permuted_params.push_back(BSParams{std::numbers::pi / 2.0, 0.0});
    std::shuffle(permuted_params.begin(), permuted_params.end(), rng);
    const SchemeParams permuted_scheme =
        solve_scheme(permuted_params, 1.0 / std::numbers::sqrt2);
    const CircuitOutcome permuted = run_chain(permuted_scheme);
    worst_permutation = std::max(
        worst_permutation,
        1.0 - fidelity(reference.final_state, permuted.final_state));
  }

  const bool pass = worst_norm_drift <= 1e-12 && blocks_conserved &&
                    worst_residual_ratio <= 1e-9 &&
                    worst_permutation <= 1e-10;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "unitarity drift %.3g, blocks %s, root residual ratio %.3g, "
                "permutation fidelity deficit %.3g",
                worst_norm_drift, blocks_conserved ? "exact" : "VIOLATED",
                worst_residual_ratio, worst_permutation);
  report("numerical hygiene (unitarity 1e-12, blocks, residuals 1e-9, "
         "permutation 1e-10)",
         pass, detail);
}

void recursion_adjudication() {
  std::mt19937_64 rng(353);
  std::uniform_real_distribution<double> t_dist(0.2, 0.95);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int stages = 2 + static_cast<int>(rng() % 4);
    const SchemeParams scheme =
        testutil::random_scheme(rng, stages, t_dist(rng));
    const FockState emulated = ideal_chain_state(effective_params(scheme));
    const CircuitOutcome direct = run_chain(scheme);
    worst = std::max(worst, 1.0 - fidelity(emulated, direct.final_state));
  }

  // Regression on the adopted sign of the D update: the reversed variant
  // must fail against simulation where the adopted one succeeds.
  const SchemeParams probe{{{0.7, 0.3}, {0.9, -1.1}, {1.1, 2.0}}, 0.6};
  RecursionState r = initial_recursion_state(probe.stages[2]);
  EffectiveParams flipped(3);
  flipped[2] = probe.stages[2];
  for (int i = 1; i < 3; ++i) {
    const BSParams& stage = probe.stages[2 - i];
    const double c = std::cos(stage.theta);
    const double s = std::sin(stage.theta);
    const Complex ep = std::exp(Complex(0.0, stage.phi));
    const Complex em = std::conj(ep);
    RecursionState next;
    next.A = probe.transmittance * c * r.A - s * ep * r.C;
    next.B = probe.transmittance * c * r.B + s * ep * r.D;
    next.C = c * r.C + probe.transmittance * s * em * r.A;
    next.D = c * r.D + probe.transmittance * s * em * r.B;  // reversed sign
    r = next;
    flipped[2 - i] = BSParams{std::atan2(std::abs(r.B), std::abs(r.A)),
                              std::arg(r.B * std::conj(r.A))};
  }
  const CircuitOutcome probe_direct = run_chain(probe);
  const double flipped_fidelity =
      fidelity(ideal_chain_state(flipped), probe_direct.final_state);

  const bool pass = worst <= 1e-8 && flipped_fidelity < 1.0 - 1e-8;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "50 random chains, worst effective-vs-direct fidelity deficit "
                "%.3g; reversed D-sign variant fidelity %.6g (correctly "
                "rejected)",
                worst, flipped_fidelity);
  report("effective-parameter recursion vs direct simulation at 1e-8", pass,
         detail);
}

}  // namespace

int main() {
  const std::vector<TargetSpec> suite = make_target_suite(48);  // 240 targets

  end_to_end_synthesis(suite);
  factorization_oracle(suite);
  fig2_intermediate_states();
  fig2_probability_adjudication();
  telescoping_identity();
  conditional_element_equivalence();
  numerical_hygiene(suite);
  recursion_adjudication();

  if (g_failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
