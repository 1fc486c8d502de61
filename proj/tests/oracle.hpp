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

// Test-only reference propagation: dense Kronecker products over the fixed
// ordering (s1, s2) x (i1, i2). Shares no code with the label-driven
// implementation it is used to check.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;

// Rows (out1, out2), columns (in1, in2).
inline Eigen::Matrix2cd splitter(double t) {
  const C r{0.0, std::sqrt(1.0 - t * t)};
  Eigen::Matrix2cd m;
  m << t, r, r, t;
  return m;
}

inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd k;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) k.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return k;
}

/// Amplitudes [signal][idler] after phase, BS_s(eps) and BS_i(chi), with
/// signal 0 = s, 1 = s' and idler 0 = i, 1 = i'.
inline Eigen::Matrix2cd owzm(double eps, double chi, double phi) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd ph = Eigen::Matrix2cd::Identity();
  ph(0, 0) = std::polar(1.0, phi);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  v = kron(id, splitter(chi)) * kron(splitter(eps), id) * kron(ph, id) * v;
  // Output index: signal (s', s) x idler (i', i).
  Eigen::Matrix2cd out;
  out(0, 0) = v(3);  // s, i
  out(0, 1) = v(2);  // s, i'
  out(1, 0) = v(1);  // s', i
  out(1, 1) = v(0);  // s', i'
  return out;
}

/// (amp_s, amp_s') for the single-photon superposition.
inline std::pair<C, C> single(double eps, double phi) {
  Eigen::Vector2cd v(std::polar(1.0, phi) / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  v = splitter(eps) * v;
  return {v(1), v(0)};
}

}  // namespace oracle
