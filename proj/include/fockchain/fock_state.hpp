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

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockchain {

using Complex = std::complex<double>;

/// Occupation-number tuple (one entry per spatial mode).
using Ket = std::vector<int>;

/// Amplitudes whose magnitude falls below this fraction of the largest
/// amplitude in the state are dropped by prune(). Keeps the sparse maps free
/// of numerical dust from block unitaries without touching amplitudes that
/// are small only because the whole state is heavily attenuated.
inline constexpr double kPruneRelativeFloor = 1e-14;

/// Sparse multi-mode bosonic state: a map from occupation tuples to complex
/// amplitudes, with a hard cap on the total photon number. Operations on
/// states are free functions returning new values; a FockState is never
/// mutated once it has been handed out.
class FockState {
 public:
  FockState(int modes, int cap) : modes_(modes), cap_(cap) {
    if (modes < 1) throw std::invalid_argument("FockState: modes must be >= 1");
    if (cap < 0) throw std::invalid_argument("FockState: cap must be >= 0");
  }

  int modes() const { return modes_; }
  int cap() const { return cap_; }
  const std::map<Ket, Complex>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Complex amplitude(const Ket& ket) const {
    auto it = terms_.find(ket);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
  }

  /// Accumulates amp onto the given occupation tuple. Rejects tuples that
  /// violate the mode count, negativity, or the photon cap, and non-finite
  /// amplitudes.
  void add_term(const Ket& ket, Complex amp) {
    if (static_cast<int>(ket.size()) != modes_)
      throw std::invalid_argument("FockState: ket has wrong number of modes");
    int total = 0;
    for (int n : ket) {
      if (n < 0) throw std::invalid_argument("FockState: negative occupation");
      total += n;
    }
    if (total > cap_)
      throw std::overflow_error("FockState: occupation exceeds photon cap");
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
      throw std::invalid_argument("FockState: non-finite amplitude");
    terms_[ket] += amp;
  }

  void scale(Complex factor) {
    for (auto& [ket, amp] : terms_) amp *= factor;
  }

  /// In-place state += factor * other. Both states must share modes and cap.
  void accumulate(const FockState& other, Complex factor) {
    if (other.modes_ != modes_ || other.cap_ != cap_)
      throw std::invalid_argument("FockState: shape mismatch in accumulate");
    for (const auto& [ket, amp] : other.terms_) terms_[ket] += factor * amp;
  }

  double norm_sq() const {
    double n = 0.0;
    for (const auto& [ket, amp] : terms_) n += std::norm(amp);
    return n;
  }

  double max_abs_amplitude() const {
    double m = 0.0;
    for (const auto& [ket, amp] : terms_) m = std::max(m, std::abs(amp));
    return m;
  }

  /// Drops amplitudes below relative_floor * max |amplitude|.
  void prune(double relative_floor = kPruneRelativeFloor) {
    const double floor = relative_floor * max_abs_amplitude();
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (std::abs(it->second) < floor)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  FockState normalized() const {
    const double n = norm_sq();
    if (n <= 0.0)
      throw std::invalid_argument("FockState: cannot normalize zero state");
    FockState out = *this;
    out.scale(1.0 / std::sqrt(n));
    return out;
  }

  bool is_normalized(double tol = 1e-10) const {
    return std::abs(norm_sq() - 1.0) <= tol;
  }

 private:
  int modes_;
  int cap_;
  std::map<Ket, Complex> terms_;
};

/// |0...0> on the given number of modes.
inline FockState make_vacuum(int modes, int cap) {
  FockState state(modes, cap);
  state.add_term(Ket(static_cast<std::size_t>(modes), 0), Complex(1.0, 0.0));
  return state;
}

inline void check_mode(const FockState& state, int mode, const char* op) {
  if (mode < 0 || mode >= state.modes())
    throw std::invalid_argument(std::string(op) + ": mode index out of range");
}

/// Creation operator on one mode: |n> -> sqrt(n+1) |n+1>. Raising any
/// occupied ket past the photon cap is a hard error, not a truncation.
inline FockState add_photon(const FockState& state, int mode) {
  check_mode(state, mode, "add_photon");
  FockState out(state.modes(), state.cap());
  for (const auto& [ket, amp] : state.terms()) {
    Ket raised = ket;
    raised[mode] += 1;
    out.add_term(raised, amp * std::sqrt(static_cast<double>(raised[mode])));
  }
  return out;
}

/// Multiplies each amplitude by T^(photons in mode). Contractive for |T| <= 1.
inline FockState apply_attenuation(const FockState& state, int mode,
                                   Complex transmittance) {
  check_mode(state, mode, "apply_attenuation");
  if (std::abs(transmittance) > 1.0 + 1e-12)
    throw std::invalid_argument("apply_attenuation: |T| must be <= 1");
  FockState out(state.modes(), state.cap());
  for (const auto& [ket, amp] : state.terms()) {
    Complex factor(1.0, 0.0);
    for (int k = 0; k < ket[mode]; ++k) factor *= transmittance;
    out.add_term(ket, amp * factor);
  }
  return out;
}

/// Zero-photon conditional measurement: keeps only kets with no photons in
/// the given mode. The result is unnormalized; its squared norm is the
/// probability of the zero-count outcome (for a normalized input). May be
/// the zero state.
inline FockState project_zero(const FockState& state, int mode) {
  check_mode(state, mode, "project_zero");
  FockState out(state.modes(), state.cap());
  for (const auto& [ket, amp] : state.terms()) {
    if (ket[mode] == 0) out.add_term(ket, amp);
  }
  return out;
}

inline Complex inner_product(const FockState& a, const FockState& b) {
  if (a.modes() != b.modes() || a.cap() != b.cap())
    throw std::invalid_argument("inner_product: shape mismatch");
  // Iterate over the smaller support.
  const FockState& small = a.size() <= b.size() ? a : b;
  const FockState& large = a.size() <= b.size() ? b : a;
  Complex ip(0.0, 0.0);
  for (const auto& [ket, amp] : small.terms()) {
    const Complex other = large.amplitude(ket);
    if (&small == &a)
      ip += std::conj(amp) * other;
    else
      ip += std::conj(other) * amp;
  }
  return ip;
}

/// |<a|b>|^2 / (|a|^2 |b|^2): invariant under global phase and scale.
/// Clamped to 1 where rounding pushes the Cauchy-Schwarz bound over.
inline double fidelity(const FockState& a, const FockState& b) {
  const double na = a.norm_sq();
  const double nb = b.norm_sq();
  if (na <= 0.0 || nb <= 0.0)
    throw std::invalid_argument("fidelity: zero-norm state");
  return std::min(1.0, std::norm(inner_product(a, b)) / (na * nb));
}

}  // namespace fockchain
