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
#include <complex>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dcsim/errors.hpp"
#include "dcsim/format.hpp"
#include "dcsim/mode.hpp"

namespace dcsim {

using Amplitude = std::complex<double>;

/// Unit-norm tolerance applied on construction; states outside it are
/// rejected rather than renormalized.
inline constexpr double kNormTolerance = 1e-12;

enum class BasisKind {
  single_photon,  ///< one photon in one of the listed signal modes
  photon_pair,    ///< one signal photon and one idler photon
};

/// A basis vector: |1_signal> or |1_signal> (x) |1_idler>.
///
/// Ordering is lexicographic on (signal, idler), which is the canonical
/// order states are stored and serialized in.
struct BasisLabel {
  ModeLabel signal;
  std::optional<ModeLabel> idler;

  BasisLabel() = default;
  explicit BasisLabel(ModeLabel sig) : signal(std::move(sig)) {}
  BasisLabel(ModeLabel sig, ModeLabel idl) : signal(std::move(sig)), idler(std::move(idl)) {}

  BasisKind kind() const noexcept {
    return idler ? BasisKind::photon_pair : BasisKind::single_photon;
  }
  bool contains(const ModeLabel& m) const { return signal == m || (idler && *idler == m); }

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
  friend std::strong_ordering operator<=>(const BasisLabel& a, const BasisLabel& b) {
    if (auto c = a.signal <=> b.signal; c != 0) return c;
    if (a.idler.has_value() != b.idler.has_value()) {
      return a.idler.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (!a.idler) return std::strong_ordering::equal;
    return *a.idler <=> *b.idler;
  }

  std::string to_string() const {
    return idler ? signal.name() + "," + idler->name() : signal.name();
  }
};

/// Normalized vector over a labeled one- or two-photon basis.
///
/// Immutable once built. Zero amplitudes are kept explicitly, so the basis
/// of a propagated state is the full image of its input basis.
class PureState {
 public:
  struct Term {
    BasisLabel label;
    Amplitude amplitude;
  };

  /// Validates and canonicalizes. All terms must share one kind, carry
  /// distinct labels and finite amplitudes, and sum to unit norm.
  static PureState from_terms(std::vector<Term> terms) {
    if (terms.empty()) throw BasisError("a state needs at least one basis label");
    const BasisKind kind = terms.front().label.kind();
    for (const auto& t : terms) {
      if (t.label.kind() != kind) throw BasisError("mixed one-photon and two-photon labels");
      if (!std::isfinite(t.amplitude.real()) || !std::isfinite(t.amplitude.imag())) {
        throw NormalizationError("non-finite amplitude on " + t.label.to_string());
      }
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.label < b.label; });
    auto dup = std::adjacent_find(terms.begin(), terms.end(),
                                  [](const Term& a, const Term& b) { return a.label == b.label; });
    if (dup != terms.end()) throw BasisError("duplicate basis label " + dup->label.to_string());

    PureState st(kind, std::move(terms));
    const double n2 = st.norm_squared();
    if (std::abs(n2 - 1.0) > kNormTolerance) {
      throw NormalizationError("state norm^2 is " + format_double(n2) + ", expected 1");
    }
    return st;
  }

  BasisKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return terms_.size(); }
  std::span<const Term> terms() const noexcept { return terms_; }

  std::vector<BasisLabel> basis() const {
    std::vector<BasisLabel> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.label);
    return out;
  }

  std::optional<Amplitude> find(const BasisLabel& label) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), label,
                               [](const Term& t, const BasisLabel& l) { return t.label < l; });
    if (it == terms_.end() || it->label != label) return std::nullopt;
    return it->amplitude;
  }

  /// Amplitude on `label`, zero when the label is not part of the basis.
  Amplitude amplitude(const BasisLabel& label) const { return find(label).value_or(Amplitude{}); }

  double norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto& t : terms_) acc += std::norm(t.amplitude);
    return acc;
  }

  /// Distinct signal modes, sorted.
  std::vector<ModeLabel> signal_modes() const {
    std::vector<ModeLabel> out;
    for (const auto& t : terms_) out.push_back(t.label.signal);
    return unique_sorted(std::move(out));
  }

  /// Distinct idler modes, sorted; empty for one-photon states.
  std::vector<ModeLabel> idler_modes() const {
    std::vector<ModeLabel> out;
    for (const auto& t : terms_) {
      if (t.label.idler) out.push_back(*t.label.idler);
    }
    return unique_sorted(std::move(out));
  }

  bool has_mode(const ModeLabel& m) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.label.contains(m); });
  }

  /// Exact comparison; global phase is not quotiented out.
  friend bool operator==(const PureState& a, const PureState& b) {
    if (a.kind_ != b.kind_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
      if (a.terms_[k].label != b.terms_[k].label ||
          a.terms_[k].amplitude != b.terms_[k].amplitude) {
        return false;
      }
    }
    return true;
  }

 private:
  PureState(BasisKind kind, std::vector<Term> terms) : kind_(kind), terms_(std::move(terms)) {}

  static std::vector<ModeLabel> unique_sorted(std::vector<ModeLabel> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  BasisKind kind_;
  std::vector<Term> terms_;
};

/// amp1 |1_mode1> + amp2 |1_mode2>.
inline PureState make_superposition(Amplitude amp1, const ModeLabel& mode1, Amplitude amp2,
                                    const ModeLabel& mode2) {
  if (mode1 == mode2) throw BasisError("superposition needs two distinct modes, got " + mode1.name());
  return PureState::from_terms({{BasisLabel(mode1), amp1}, {BasisLabel(mode2), amp2}});
}

struct PairWeight {
  Amplitude amplitude;
  ModeLabel signal;
  ModeLabel idler;
};

/// Sum of amplitude |1_signal> (x) |1_idler> over the given pairs.
inline PureState make_entangled_pair(std::span<const PairWeight> weights) {
  std::vector<PureState::Term> terms;
  terms.reserve(weights.size());
  for (const auto& w : weights) {
    if (w.signal == w.idler) throw BasisError("signal and idler share mode " + w.signal.name());
    terms.push_back({BasisLabel(w.signal, w.idler), w.amplitude});
  }
  return PureState::from_terms(std::move(terms));
}

inline PureState make_entangled_pair(std::initializer_list<PairWeight> weights) {
  return make_entangled_pair(std::span<const PairWeight>(weights.begin(), weights.size()));
}

/// |signal> (x) |1_idler>: a separable two-photon state.
inline PureState tensor_with_idler(const PureState& signal, const ModeLabel& idler_mode) {
  if (signal.kind() != BasisKind::single_photon) {
    throw BasisError("tensor_with_idler expects a one-photon signal state");
  }
  if (signal.has_mode(idler_mode)) {
    throw BasisError("idler mode " + idler_mode.name() + " collides with a signal mode");
  }
  std::vector<PureState::Term> terms;
  for (const auto& t : signal.terms()) {
    terms.push_back({BasisLabel(t.label.signal, idler_mode), t.amplitude});
  }
  return PureState::from_terms(std::move(terms));
}

/// <a|b>. Both states must be expanded over the same basis.
inline Amplitude inner_product(const PureState& a, const PureState& b) {
  if (a.kind() != b.kind() || a.dimension() != b.dimension()) {
    throw BasisError("inner product of states over different bases");
  }
  Amplitude acc{};
  auto ta = a.terms();
  auto tb = b.terms();
  for (std::size_t k = 0; k < ta.size(); ++k) {
    if (ta[k].label != tb[k].label) throw BasisError("inner product of states over different bases");
    acc += std::conj(ta[k].amplitude) * tb[k].amplitude;
  }
  return acc;
}

// JSON: {"basis": ["s1", ...] or [["s","i1"], ...], "amplitudes": [[re, im], ...]}

inline nlohmann::json basis_label_to_json(const BasisLabel& l) {
  if (l.idler) return nlohmann::json::array({l.signal.name(), l.idler->name()});
  return l.signal.name();
}

inline BasisLabel basis_label_from_json(const nlohmann::json& j) {
  if (j.is_string()) return BasisLabel(ModeLabel(j.get<std::string>()));
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
    return BasisLabel(ModeLabel(j[0].get<std::string>()), ModeLabel(j[1].get<std::string>()));
  }
  throw BasisError("malformed basis label: " + j.dump());
}

inline void to_json(nlohmann::json& j, const PureState& st) {
  auto basis = nlohmann::json::array();
  auto amps = nlohmann::json::array();
  for (const auto& t : st.terms()) {
    basis.push_back(basis_label_to_json(t.label));
    amps.push_back(nlohmann::json::array({t.amplitude.real(), t.amplitude.imag()}));
  }
  j = nlohmann::json{{"basis", std::move(basis)}, {"amplitudes", std::move(amps)}};
}

inline PureState pure_state_from_json(const nlohmann::json& j) {
  const auto& basis = j.at("basis");
  const auto& amps = j.at("amplitudes");
  if (!basis.is_array() || !amps.is_array() || basis.size() != amps.size()) {
    throw BasisError("state JSON needs equally long 'basis' and 'amplitudes' arrays");
  }
  std::vector<PureState::Term> terms;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& a = amps[k];
    if (!a.is_array() || a.size() != 2) throw BasisError("amplitude must be [re, im]");
    terms.push_back({basis_label_from_json(basis[k]), {a[0].get<double>(), a[1].get<double>()}});
  }
  return PureState::from_terms(std::move(terms));
}

}  // namespace dcsim
