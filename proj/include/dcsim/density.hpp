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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "dcsim/errors.hpp"
#include "dcsim/format.hpp"
#include "dcsim/state.hpp"

namespace dcsim {

/// Tolerance for hermiticity, unit trace and positivity checks.
inline constexpr double kDensityTolerance = 1e-12;

/// Dense density operator over a labeled basis (dimension <= 4 in practice).
class DensityMatrix {
 public:
  using Matrix = Eigen::MatrixXcd;

  /// Validates hermiticity, unit trace and positive semi-definiteness.
  DensityMatrix(std::vector<BasisLabel> basis, Matrix matrix)
      : basis_(std::move(basis)), matrix_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(basis_.size());
    if (n == 0) throw BasisError("density matrix needs a nonempty basis");
    if (matrix_.rows() != n || matrix_.cols() != n) {
      throw BasisError("density matrix dimension does not match its basis");
    }
    if (!std::is_sorted(basis_.begin(), basis_.end()) ||
        std::adjacent_find(basis_.begin(), basis_.end()) != basis_.end()) {
      throw BasisError("density matrix basis must be canonical (sorted, distinct)");
    }
    const BasisKind k = basis_.front().kind();
    for (const auto& l : basis_) {
      if (l.kind() != k) throw BasisError("mixed one-photon and two-photon labels");
    }
    if (!matrix_.allFinite()) throw NormalizationError("non-finite density matrix entry");
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kDensityTolerance) {
      throw NormalizationError("density matrix is not Hermitian");
    }
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kDensityTolerance) {
      throw NormalizationError("density matrix trace is " + format_double(tr));
    }
    if (min_eigenvalue() < -kDensityTolerance) {
      throw NormalizationError("density matrix has a negative eigenvalue");
    }
  }

  BasisKind kind() const noexcept { return basis_.front().kind(); }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<BasisLabel>& basis() const noexcept { return basis_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  /// Index of `label` in the basis, or dimension() when absent.
  std::size_t index_of(const BasisLabel& label) const {
    auto it = std::lower_bound(basis_.begin(), basis_.end(), label);
    if (it == basis_.end() || *it != label) return basis_.size();
    return static_cast<std::size_t>(it - basis_.begin());
  }

  Amplitude element(const BasisLabel& row, const BasisLabel& col) const {
    const auto r = index_of(row);
    const auto c = index_of(col);
    if (r == basis_.size() || c == basis_.size()) {
      throw UnknownModeError("density matrix element outside the basis");
    }
    return matrix_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }

 private:
  std::vector<BasisLabel> basis_;
  Matrix matrix_;
};

/// |psi><psi|
inline DensityMatrix density_from_pure(const PureState& state) {
  const auto terms = state.terms();
  const auto n = static_cast<Eigen::Index>(terms.size());
  Eigen::VectorXcd v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = terms[static_cast<std::size_t>(k)].amplitude;
  return DensityMatrix(state.basis(), v * v.adjoint());
}

/// Traces out the idler: rho_s(a, b) = sum_k rho((a, k), (b, k)).
inline DensityMatrix partial_trace_idler(const DensityMatrix& rho) {
  if (rho.kind() != BasisKind::photon_pair) {
    throw BasisError("partial trace over the idler needs a signal (x) idler basis");
  }
  std::vector<BasisLabel> sig;
  for (const auto& l : rho.basis()) sig.emplace_back(l.signal);
  std::sort(sig.begin(), sig.end());
  sig.erase(std::unique(sig.begin(), sig.end()), sig.end());

  auto sig_index = [&](const ModeLabel& m) {
    return static_cast<Eigen::Index>(
        std::lower_bound(sig.begin(), sig.end(), BasisLabel(m)) - sig.begin());
  };

  const auto& basis = rho.basis();
  const auto& m = rho.matrix();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(sig.size()),
                                                static_cast<Eigen::Index>(sig.size()));
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) {
      if (*basis[r].idler != *basis[c].idler) continue;
      out(sig_index(basis[r].signal), sig_index(basis[c].signal)) +=
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return DensityMatrix(std::move(sig), std::move(out));
}

/// Tr(rho^2); equals the squared Frobenius norm for Hermitian rho.
inline double purity(const DensityMatrix& rho) { return rho.matrix().squaredNorm(); }

/// Probability that a detector on `mode` fires: the sum of diagonal entries
/// whose label carries the mode.
inline double detection_probability(const DensityMatrix& rho, const ModeLabel& mode) {
  bool found = false;
  double p = 0.0;
  const auto& basis = rho.basis();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].contains(mode)) {
      found = true;
      p += rho.matrix()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();
    }
  }
  if (!found) throw UnknownModeError("no detector mode " + mode.name() + " in basis");
  return p;
}

/// Joint click probability of the signal detector on `signal_mode` and the
/// idler detector on `idler_mode`.
inline double coincidence_probability(const PureState& state, const ModeLabel& signal_mode,
                                      const ModeLabel& idler_mode) {
  if (state.kind() != BasisKind::photon_pair) {
    throw BasisError("coincidences need a two-photon state");
  }
  const auto sig = state.signal_modes();
  const auto idl = state.idler_modes();
  if (!std::binary_search(sig.begin(), sig.end(), signal_mode)) {
    throw UnknownModeError("no signal mode " + signal_mode.name());
  }
  if (!std::binary_search(idl.begin(), idl.end(), idler_mode)) {
    throw UnknownModeError("no idler mode " + idler_mode.name());
  }
  return std::norm(state.amplitude(BasisLabel(signal_mode, idler_mode)));
}

// JSON: {"basis": [...], "re": [[...]], "im": [[...]]}

inline void to_json(nlohmann::json& j, const DensityMatrix& rho) {
  auto basis = nlohmann::json::array();
  for (const auto& l : rho.basis()) basis.push_back(basis_label_to_json(l));
  auto re = nlohmann::json::array();
  auto im = nlohmann::json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto rr = nlohmann::json::array();
    auto ri = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  j = nlohmann::json{{"basis", std::move(basis)}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline DensityMatrix density_from_json(const nlohmann::json& j) {
  std::vector<BasisLabel> basis;
  for (const auto& l : j.at("basis")) basis.push_back(basis_label_from_json(l));
  const auto n = static_cast<Eigen::Index>(basis.size());
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != n || static_cast<Eigen::Index>(im.size()) != n) {
    throw BasisError("density JSON matrix does not match its basis");
  }
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& rr = re[static_cast<std::size_t>(r)];
    const auto& ri = im[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(rr.size()) != n || static_cast<Eigen::Index>(ri.size()) != n) {
      throw BasisError("density JSON rows must be square");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = {rr[static_cast<std::size_t>(c)].get<double>(), ri[static_cast<std::size_t>(c)].get<double>()};
    }
  }
  return DensityMatrix(std::move(basis), std::move(m));
}

}  // namespace dcsim
