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
#include <map>
#include <numbers>

#include "fockchain/fock_state.hpp"

namespace fockchain {

/// Beam-splitter parameters for B(theta, phi) = exp(theta e^{-i phi} a†b -
/// theta e^{i phi} a b†). Under this convention
///
///   B a† B† = cos(theta) a† - e^{i phi} sin(theta) b†
///   B b† B† = e^{-i phi} sin(theta) a† + cos(theta) b†
///
/// where a is the first mode of the pair and b the second.
struct BSParams {
  double theta = 0.0;
  double phi = 0.0;
};

/// Reduces an angle to (-pi, pi].
inline double wrap_angle(double phi) {
  double x = std::remainder(phi, 2.0 * std::numbers::pi);
  if (x <= -std::numbers::pi) x = std::numbers::pi;
  return x;
}

/// Unitary of B(theta, phi) restricted to the block with total pair photon
/// number t, in the basis |k>|t-k> indexed by k = photons in the first mode.
/// Built from the ladder matrix elements of the generator and exponentiated
/// through the eigen-decomposition of the associated Hermitian matrix.
inline Eigen::MatrixXcd bs_block_unitary(int total, double theta, double phi) {
  const int dim = total + 1;
  const Complex i_unit(0.0, 1.0);
  // Generator G = theta (e^{-i phi} a†b - e^{i phi} a b†) is anti-Hermitian;
  // H = iG is Hermitian and U = exp(G) = exp(-iH).
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k + 1 <= total; ++k) {
    const double g = std::sqrt(static_cast<double>((k + 1) * (total - k)));
    const Complex coupling =
        theta * std::exp(Complex(0.0, -phi)) * g;  // G(k+1, k)
    h(k + 1, k) = i_unit * coupling;
    h(k, k + 1) = std::conj(h(k + 1, k));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("bs_block_unitary: eigen-decomposition failed");
  Eigen::VectorXcd phases(dim);
  for (int k = 0; k < dim; ++k)
    phases(k) = std::exp(-i_unit * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

/// Applies B(theta, phi) on the (mode_i, mode_j) pair. Photon number within
/// the pair is conserved block by block, so the cap can never overflow.
inline FockState apply_beamsplitter(const FockState& state, int mode_i,
                                    int mode_j, const BSParams& params) {
  check_mode(state, mode_i, "apply_beamsplitter");
  check_mode(state, mode_j, "apply_beamsplitter");
  if (mode_i == mode_j)
    throw std::invalid_argument("apply_beamsplitter: modes must be distinct");

  std::map<int, Eigen::MatrixXcd> blocks;
  FockState out(state.modes(), state.cap());
  for (const auto& [ket, amp] : state.terms()) {
    const int total = ket[mode_i] + ket[mode_j];
    auto it = blocks.find(total);
    if (it == blocks.end())
      it = blocks.emplace(total, bs_block_unitary(total, params.theta,
                                                  params.phi))
               .first;
    const Eigen::MatrixXcd& u = it->second;
    const int k_in = ket[mode_i];
    Ket moved = ket;
    for (int k_out = 0; k_out <= total; ++k_out) {
      moved[mode_i] = k_out;
      moved[mode_j] = total - k_out;
      out.add_term(moved, amp * u(k_out, k_in));
    }
  }
  out.prune();
  return out;
}

}  // namespace fockchain
