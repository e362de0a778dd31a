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

#include <vector>

#include "fockchain/fock_state.hpp"

namespace fockchain {

/// A two-mode state of fixed total photon number N, given as the N+1
/// coefficients c_n of sum_n c_n |n>|N-n>. Coefficients are normalized on
/// construction; the pre-normalization norm is kept so callers can warn
/// about sloppy input.
class TargetSpec {
 public:
  TargetSpec(int n_total, std::vector<Complex> coefficients)
      : n_total_(n_total), coefficients_(std::move(coefficients)) {
    if (n_total_ < 1)
      throw std::invalid_argument("TargetSpec: total photon number must be >= 1");
    if (coefficients_.size() != static_cast<std::size_t>(n_total_) + 1)
      throw std::invalid_argument(
          "TargetSpec: expected n_total + 1 coefficients");
    double norm = 0.0;
    for (const Complex& c : coefficients_) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::invalid_argument("TargetSpec: non-finite coefficient");
      norm += std::norm(c);
    }
    if (norm <= 0.0)
      throw std::invalid_argument("TargetSpec: all coefficients are zero");
    input_norm_ = std::sqrt(norm);
    for (Complex& c : coefficients_) c /= input_norm_;
  }

  int n_total() const { return n_total_; }
  const std::vector<Complex>& coefficients() const { return coefficients_; }
  double input_norm() const { return input_norm_; }

  /// The target as a two-mode FockState with cap = N.
  FockState to_state() const {
    FockState state(2, n_total_);
    for (int n = 0; n <= n_total_; ++n) {
      if (coefficients_[n] != Complex(0.0, 0.0))
        state.add_term({n, n_total_ - n}, coefficients_[n]);
    }
    return state;
  }

 private:
  int n_total_;
  std::vector<Complex> coefficients_;
  double input_norm_;
};

/// (|0,N> - |N,0>) / sqrt(2), the maximally path-entangled N-photon state.
inline TargetSpec make_noon_target(int n_total) {
  if (n_total < 1)
    throw std::invalid_argument("make_noon_target: N must be >= 1");
  std::vector<Complex> coeffs(static_cast<std::size_t>(n_total) + 1,
                              Complex(0.0, 0.0));
  coeffs.front() = Complex(1.0, 0.0);
  coeffs.back() = Complex(-1.0, 0.0);
  return TargetSpec(n_total, std::move(coeffs));
}

}  // namespace fockchain
