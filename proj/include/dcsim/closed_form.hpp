// Copyright 2026 The dcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Analytic detection and coincidence rates for the two-crystal setups.
// Kept free of any state propagation so it can serve as an oracle for it.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dcsim/errors.hpp"
#include "dcsim/format.hpp"

namespace dcsim::closed_form {

using Amplitude = std::complex<double>;

/// 1/sqrt(2), the balanced transmissivity.
inline constexpr double kBalanced = std::numbers::sqrt2 / 2.0;

/// Denominators at or below this are treated as a pole.
inline constexpr double kPoleTolerance = 1e-12;

inline void check_transmissivity(double t, const char* name) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + format_double(t));
  }
}

/// epsilon: signal splitter transmissivity; chi: idler splitter
/// transmissivity; phi: phase in the s1 arm.
struct FringeParams {
  double epsilon = kBalanced;
  double chi = kBalanced;
  double phi = 0.0;

  void validate() const {
    check_transmissivity(epsilon, "epsilon");
    check_transmissivity(chi, "chi");
    if (!std::isfinite(phi)) throw DomainError("phi must be finite");
  }
};

/// numerator / denominator, with the pole reported instead of divided.
struct Ratio {
  double numerator = 0.0;
  double denominator = 0.0;

  bool bounded() const noexcept { return denominator > kPoleTolerance; }
  std::optional<double> value() const {
    if (!bounded()) return std::nullopt;
    return numerator / denominator;
  }
  /// value() or +inf, for text output.
  double value_or_inf() const { return bounded() ? numerator / denominator : std::numeric_limits<double>::infinity(); }
};

inline double visibility(double epsilon) {
  check_transmissivity(epsilon, "epsilon");
  return 2.0 * epsilon * std::sqrt(1.0 - epsilon * epsilon);
}

struct SingleAmplitudes {
  Amplitude s;
  Amplitude s_prime;
};

/// Output amplitudes of e^{i phi}|1_s1> + |1_s2> (over sqrt 2) after the
/// signal splitter.
inline SingleAmplitudes single_amplitudes(double epsilon, double phi) {
  check_transmissivity(epsilon, "epsilon");
  const double r = std::sqrt(1.0 - epsilon * epsilon);
  const Amplitude e = std::polar(1.0, phi);
  const Amplitude I{0.0, 1.0};
  return {(epsilon + I * e * r) / std::numbers::sqrt2, (I * r + epsilon * e) / std::numbers::sqrt2};
}

struct SingleProbs {
  double p_s;
  double p_s_prime;
};

inline SingleProbs single_probs(double epsilon, double phi) {
  const double v = visibility(epsilon) * std::sin(phi);
  return {(1.0 - v) / 2.0, (1.0 + v) / 2.0};
}

/// P_s / P_s' = (1 - V sin phi) / (1 + V sin phi); pole at V sin phi = -1.
inline Ratio single_ratio(double epsilon, double phi) {
  const auto p = single_probs(epsilon, phi);
  return {p.p_s, p.p_s_prime};
}

/// Largest single_ratio over phi, reached at sin phi = -1.
inline Ratio single_ratio_max(double epsilon) {
  const double v = visibility(epsilon);
  return {1.0 + v, 1.0 - v};
}

/// Joint probabilities with the idler modes i1/i2 left as which-path markers.
struct MarkerProbs {
  double p_s_i1;
  double p_sp_i1;
  double p_s_i2;
  double p_sp_i2;
};

inline MarkerProbs marker_coincidence_probs(double epsilon) {
  check_transmissivity(epsilon, "epsilon");
  const double e2 = epsilon * epsilon;
  return {(1.0 - e2) / 2.0, e2 / 2.0, e2 / 2.0, (1.0 - e2) / 2.0};
}

/// P_{s,i1} / P_{s',i1} = (1 - eps^2) / eps^2, independent of phi.
inline Ratio marker_coincidence_ratio(double epsilon) {
  const auto p = marker_coincidence_probs(epsilon);
  return {p.p_s_i1, p.p_sp_i1};
}

struct EraserAmplitudes {
  Amplitude s_i;
  Amplitude sp_i;
  Amplitude s_ip;
  Amplitude sp_ip;
};

/// Two-photon amplitudes after both splitters. Every idler reflection factor
/// is sqrt(1 - chi^2), including the one on the s,i term; only then do the
/// moduli agree with the coincidence rates below.
inline EraserAmplitudes eraser_amplitudes(const FringeParams& p) {
  p.validate();
  const double eps = p.epsilon;
  const double chi = p.chi;
  const double r = std::sqrt(1.0 - eps * eps);
  const double q = std::sqrt(1.0 - chi * chi);
  const Amplitude e = std::polar(1.0, p.phi);
  const Amplitude I{0.0, 1.0};
  const double k = std::numbers::sqrt2;
  return {
      (-e * r * q + eps * chi) / k,
      I * (e * eps * q + r * chi) / k,
      I * (e * r * chi + eps * q) / k,
      (e * eps * chi - r * q) / k,
  };
}

struct CoincidenceProbs {
  double p_s_i;
  double p_sp_i;
  double p_s_ip;
  double p_sp_ip;

  double sum() const noexcept { return p_s_i + p_sp_i + p_s_ip + p_sp_ip; }
};

/// P_{s,i} and P_{s',i} from their closed forms; the i' pair from the
/// moduli of eraser_amplitudes (no closed form is printed for them).
inline CoincidenceProbs eraser_coincidence_probs(const FringeParams& p) {
  p.validate();
  const double e2 = p.epsilon * p.epsilon;
  const double c2 = p.chi * p.chi;
  const double cross = p.chi * std::sqrt(1.0 - c2) * visibility(p.epsilon) * std::cos(p.phi);
  const auto amps = eraser_amplitudes(p);
  return {
      (1.0 - e2 - c2 + 2.0 * e2 * c2 - cross) / 2.0,
      (e2 + c2 - 2.0 * e2 * c2 + cross) / 2.0,
      std::norm(amps.s_ip),
      std::norm(amps.sp_ip),
  };
}

/// P_{s,i} / P_{s',i}.
inline Ratio eraser_coincidence_ratio(const FringeParams& p) {
  const auto c = eraser_coincidence_probs(p);
  return {c.p_s_i, c.p_sp_i};
}

/// start, start + (stop-start)/steps, ..., stop: steps + 1 points.
inline std::vector<double> inclusive_grid(double start, double stop, std::size_t steps) {
  if (steps == 0) return {start};
  std::vector<double> g;
  g.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    g.push_back(start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps));
  }
  return g;
}

/// Default sweep: epsilon and chi in steps of 0.05 over [0, 1], phi in
/// steps of pi/36 over [0, 2 pi].
struct Grid {
  std::vector<double> epsilons = inclusive_grid(0.0, 1.0, 20);
  std::vector<double> chis = inclusive_grid(0.0, 1.0, 20);
  std::vector<double> phis = inclusive_grid(0.0, 2.0 * std::numbers::pi, 72);
};

}  // namespace dcsim::closed_form
