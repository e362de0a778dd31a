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

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <vector>

#include "fockchain/beam_splitter.hpp"
#include "fockchain/target.hpp"

namespace fockchain {

/// Factorization of a target state into creation-operator factors: the
/// finite roots beta_i of the characteristic polynomial (each one factor
/// a† - beta b†), a count of roots at infinity (bare b† factors from
/// vanishing leading coefficients), the beam-splitter angles they map to,
/// and the overall normalization constant (diagnostic only; states are
/// compared by scale-invariant fidelity).
struct Decomposition {
  std::vector<Complex> roots;
  int infinite_roots = 0;
  std::vector<BSParams> ideal_params;
  double scale = 1.0;
};

/// Coefficient list of the characteristic polynomial: p_n = c_n /
/// sqrt(n!(N-n)!), indexed by the power of beta.
inline std::vector<Complex> char_poly(const TargetSpec& target) {
  const int n_total = target.n_total();
  std::vector<Complex> poly(static_cast<std::size_t>(n_total) + 1);
  for (int n = 0; n <= n_total; ++n) {
    double weight = 1.0;
    for (int k = 2; k <= n; ++k) weight *= k;
    for (int k = 2; k <= n_total - n; ++k) weight *= k;
    poly[n] = target.coefficients()[n] / std::sqrt(weight);
  }
  return poly;
}

namespace detail {

inline Complex horner(const std::vector<Complex>& poly, Complex x) {
  Complex value(0.0, 0.0);
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) value = value * x + *it;
  return value;
}

inline Complex horner_derivative(const std::vector<Complex>& poly, Complex x) {
  Complex value(0.0, 0.0);
  for (int k = static_cast<int>(poly.size()) - 1; k >= 1; --k)
    value = value * x + static_cast<double>(k) * poly[k];
  return value;
}

}  // namespace detail

struct RootSet {
  std::vector<Complex> roots;  // finite roots, deterministically ordered
  int infinite_roots = 0;      // stripped leading zero coefficients
};

/// All roots of a complex polynomial. Trailing (highest-order) coefficients
/// below 1e-12 of the largest are stripped and counted as roots at infinity;
/// the remaining polynomial is solved through the eigenvalues of its
/// companion matrix, followed by a Newton polish that only keeps steps which
/// reduce the residual. Near-coincident roots (within 1e-7) are clustered
/// onto their centroid so multiplicities come out exact. Ordering: by |beta|,
/// then by arg(beta).
inline RootSet find_roots(const std::vector<Complex>& poly) {
  if (poly.empty()) throw std::invalid_argument("find_roots: empty polynomial");
  double max_coeff = 0.0;
  for (const Complex& p : poly) max_coeff = std::max(max_coeff, std::abs(p));
  if (max_coeff == 0.0)
    throw std::invalid_argument("find_roots: all coefficients are zero");

  int degree = static_cast<int>(poly.size()) - 1;
  while (degree > 0 && std::abs(poly[degree]) <= 1e-12 * max_coeff) --degree;

  RootSet out;
  out.infinite_roots = static_cast<int>(poly.size()) - 1 - degree;
  if (degree == 0) return out;

  std::vector<Complex> reduced(poly.begin(), poly.begin() + degree + 1);

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  for (int k = 0; k + 1 < degree; ++k) companion(k + 1, k) = 1.0;
  for (int k = 0; k < degree; ++k)
    companion(k, degree - 1) = -reduced[k] / reduced[degree];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("find_roots: companion eigensolve failed");

  out.roots.reserve(degree);
  for (int k = 0; k < degree; ++k) {
    Complex root = es.eigenvalues()(k);
    double residual = std::abs(detail::horner(reduced, root));
    for (int iter = 0; iter < 12; ++iter) {
      const Complex derivative = detail::horner_derivative(reduced, root);
      if (std::abs(derivative) == 0.0) break;
      const Complex candidate =
          root - detail::horner(reduced, root) / derivative;
      const double cand_residual =
          std::abs(detail::horner(reduced, candidate));
      // Accept only clear improvements. Marginal gains are evaluation noise;
      // chasing them drags roots of a symmetric eigenvalue cluster (multiple
      // roots) off their centroid and corrupts the symmetric functions the
      // reconstruction depends on.
      if (cand_residual >= 0.3 * residual) break;
      root = candidate;
      residual = cand_residual;
    }
    out.roots.push_back(root);
  }

  // Cluster near-coincident roots onto their centroid (multiple roots).
  std::vector<int> group(out.roots.size());
  for (std::size_t i = 0; i < group.size(); ++i) group[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    for (std::size_t j = i + 1; j < out.roots.size(); ++j) {
      const double tol = 1e-7 * std::max({1.0, std::abs(out.roots[i]),
                                          std::abs(out.roots[j])});
      if (std::abs(out.roots[i] - out.roots[j]) <= tol) {
        const int gi = group[i];
        const int gj = group[j];
        if (gi != gj)
          for (int& g : group)
            if (g == gj) g = gi;
      }
    }
  }
  std::vector<Complex> clustered(out.roots.size());
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    Complex sum(0.0, 0.0);
    int count = 0;
    for (std::size_t j = 0; j < out.roots.size(); ++j) {
      if (group[j] == group[i]) {
        sum += out.roots[j];
        ++count;
      }
    }
    clustered[i] = sum / static_cast<double>(count);
  }
  out.roots = std::move(clustered);

  std::sort(out.roots.begin(), out.roots.end(),
            [](const Complex& a, const Complex& b) {
              const double ma = std::abs(a);
              const double mb = std::abs(b);
              if (ma != mb) return ma < mb;
              return std::arg(a) < std::arg(b);
            });

  for (const Complex& root : out.roots) {
    // For roots of large magnitude the polynomial cannot be evaluated more
    // accurately than the Horner rounding floor, so the acceptance bound is
    // widened to that floor when it dominates.
    double noise_floor = 0.0;
    double power = 1.0;
    for (const Complex& p : reduced) {
      noise_floor += std::abs(p) * power;
      power *= std::abs(root);
    }
    noise_floor *= 20.0 * std::numeric_limits<double>::epsilon();
    const double bound = std::max(1e-9 * max_coeff, noise_floor);
    if (std::abs(detail::horner(reduced, root)) > bound)
      throw std::runtime_error("find_roots: root residual above tolerance");
  }
  return out;
}

/// Angle map for one factor: a† - beta b† is proportional to the conjugated
/// creation operator of B(theta, phi) with cos(theta) = 1/sqrt(1+|beta|^2)
/// and e^{i phi} = beta/|beta| (phi = 0 for beta = 0).
inline BSParams bs_params_for_root(Complex root) {
  const double magnitude = std::abs(root);
  BSParams params;
  params.theta = std::atan(magnitude);
  params.phi = magnitude == 0.0 ? 0.0 : std::arg(root);
  return params;
}

/// N beam-splitter parameters in deterministic order: finite roots sorted as
/// in find_roots, then one (pi/2, 0) entry per root at infinity.
inline std::vector<BSParams> roots_to_bs_params(
    const std::vector<Complex>& roots, int infinite_roots) {
  std::vector<BSParams> params;
  params.reserve(roots.size() + infinite_roots);
  for (const Complex& root : roots) params.push_back(bs_params_for_root(root));
  for (int k = 0; k < infinite_roots; ++k)
    params.push_back(BSParams{std::numbers::pi / 2.0, 0.0});
  return params;
}

/// Applies (ca a† + cb b†) to a two-mode state.
inline FockState apply_creation_factor(const FockState& state, Complex ca,
                                       Complex cb) {
  FockState out = add_photon(state, 0);
  out.scale(ca);
  out.accumulate(add_photon(state, 1), cb);
  out.prune();
  return out;
}

namespace detail {

inline FockState reconstruct_from_roots(const std::vector<Complex>& roots,
                                        int infinite_roots, int n_total) {
  FockState state = make_vacuum(2, n_total);
  for (const Complex& root : roots)
    state = apply_creation_factor(state, Complex(1.0, 0.0), -root);
  for (int k = 0; k < infinite_roots; ++k) state = add_photon(state, 1);
  return state;
}

}  // namespace detail

/// Ladder-operator oracle for a decomposition: applies the product of
/// (a† - beta_i b†) factors (roots at infinity contribute a bare b†) to the
/// two-mode vacuum and normalizes. Independent of the polynomial route that
/// produced the roots.
inline FockState reconstruct_target(const Decomposition& decomposition,
                                    int n_total) {
  return detail::reconstruct_from_roots(decomposition.roots,
                                        decomposition.infinite_roots, n_total)
      .normalized();
}

/// The state generated by a list of conjugated-creation factors: the product
/// of (cos(theta_j) a† - e^{i phi_j} sin(theta_j) b†) over all stages,
/// applied to vacuum and normalized.
inline FockState ideal_chain_state(const std::vector<BSParams>& params) {
  FockState state = make_vacuum(2, static_cast<int>(params.size()));
  for (const BSParams& p : params) {
    const Complex cb =
        -std::exp(Complex(0.0, p.phi)) * std::sin(p.theta);
    state = apply_creation_factor(state, Complex(std::cos(p.theta), 0.0), cb);
  }
  return state.normalized();
}

/// Full decomposition of a target: characteristic polynomial, roots, ideal
/// beam-splitter angles, and the normalization constant of the factor
/// product.
inline Decomposition decompose(const TargetSpec& target) {
  const RootSet root_set = find_roots(char_poly(target));
  Decomposition decomposition;
  decomposition.roots = root_set.roots;
  decomposition.infinite_roots = root_set.infinite_roots;
  decomposition.ideal_params =
      roots_to_bs_params(root_set.roots, root_set.infinite_roots);
  const FockState product = detail::reconstruct_from_roots(
      root_set.roots, root_set.infinite_roots, target.n_total());
  decomposition.scale = 1.0 / std::sqrt(product.norm_sq());
  return decomposition;
}

}  // namespace fockchain
