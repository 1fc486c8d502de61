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

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dcsim/errors.hpp"
#include "dcsim/format.hpp"
#include "dcsim/mode.hpp"
#include "dcsim/state.hpp"

namespace dcsim {

/// Multiplies every basis vector that carries `mode` by e^{i phi}.
struct PhaseShift {
  ModeLabel mode;
  double phi = 0.0;

  /// phi reduced into [0, 2pi), for reporting only.
  double reduced_phi() const {
    double r = std::fmod(phi, 2.0 * std::numbers::pi);
    return r < 0 ? r + 2.0 * std::numbers::pi : r;
  }
};

/// Lossless two-port with amplitude transmissivity tau.
///
///   out1 = T in1 + R in2
///   out2 = R in1 + T in2,   T = tau, R = i sqrt(1 - tau^2)
///
/// The signal splitter maps (s1, s2) -> (s', s); the idler splitter maps
/// (i1, i2) -> (i', i), so i1 reaches i' by transmission.
struct BeamSplitter {
  double tau = 1.0;
  ModeLabel in1, in2, out1, out2;

  static BeamSplitter signal(double epsilon) {
    return {epsilon, modes::s1, modes::s2, modes::s_prime, modes::s};
  }
  static BeamSplitter idler(double chi) {
    return {chi, modes::i1, modes::i2, modes::i_prime, modes::i};
  }

  Amplitude transmission() const { return {tau, 0.0}; }
  Amplitude reflection() const { return {0.0, std::sqrt(1.0 - tau * tau)}; }

  void validate() const {
    if (!(tau >= 0.0 && tau <= 1.0)) {
      throw DomainError("beam splitter transmissivity must lie in [0, 1], got " + format_double(tau));
    }
    if (in1 == in2) throw BasisError("beam splitter inputs must differ");
    if (out1 == out2) throw BasisError("beam splitter outputs must differ");
  }
};

inline PureState apply_phase(const PureState& state, const ModeLabel& mode, double phi) {
  if (!state.has_mode(mode)) throw UnknownModeError("phase on unknown mode " + mode.name());
  const Amplitude factor = std::polar(1.0, phi);
  std::vector<PureState::Term> terms(state.terms().begin(), state.terms().end());
  for (auto& t : terms) {
    if (t.label.contains(mode)) t.amplitude *= factor;
  }
  return PureState::from_terms(std::move(terms));
}

inline PureState apply(const PureState& state, const PhaseShift& p) {
  return apply_phase(state, p.mode, p.phi);
}

/// Applies `bs` to whichever subsystem (signal or idler) carries both of
/// its input modes, independently for each label of the other subsystem.
/// Labels of the acted subsystem other than in1/in2 pass through untouched.
inline PureState apply_beam_splitter(const PureState& state, const BeamSplitter& bs) {
  bs.validate();

  const auto sig = state.signal_modes();
  const auto idl = state.idler_modes();
  auto holds = [](const std::vector<ModeLabel>& v, const ModeLabel& m) {
    return std::binary_search(v.begin(), v.end(), m);
  };
  bool on_signal;
  if (holds(sig, bs.in1) && holds(sig, bs.in2)) {
    on_signal = true;
  } else if (holds(idl, bs.in1) && holds(idl, bs.in2)) {
    on_signal = false;
  } else {
    throw UnknownModeError("beam splitter inputs " + bs.in1.name() + ", " + bs.in2.name() +
                           " are not both present in one subsystem");
  }

  auto acted = [&](const BasisLabel& l) -> const ModeLabel& { return on_signal ? l.signal : *l.idler; };
  auto relabel = [&](const BasisLabel& l, const ModeLabel& m) {
    BasisLabel out = l;
    (on_signal ? out.signal : *out.idler) = m;
    return out;
  };

  // Keyed by the label with the acted mode replaced by in1, so that the two
  // inputs sharing the same spectator land in the same slot.
  std::map<BasisLabel, std::pair<Amplitude, Amplitude>> groups;
  std::vector<PureState::Term> terms;
  for (const auto& t : state.terms()) {
    const ModeLabel& m = acted(t.label);
    if (m == bs.in1) {
      groups[relabel(t.label, bs.in1)].first += t.amplitude;
    } else if (m == bs.in2) {
      groups[relabel(t.label, bs.in1)].second += t.amplitude;
    } else if (m == bs.out1 || m == bs.out2) {
      throw BasisError("beam splitter output " + m.name() + " collides with an existing mode");
    } else {
      terms.push_back(t);
    }
  }

  const Amplitude T = bs.transmission();
  const Amplitude R = bs.reflection();
  for (const auto& [key, amps] : groups) {
    const auto& [a1, a2] = amps;
    terms.push_back({relabel(key, bs.out1), T * a1 + R * a2});
    terms.push_back({relabel(key, bs.out2), R * a1 + T * a2});
  }
  return PureState::from_terms(std::move(terms));
}

inline PureState apply(const PureState& state, const BeamSplitter& bs) {
  return apply_beam_splitter(state, bs);
}

using OpticalElement = std::variant<PhaseShift, BeamSplitter>;

/// Ordered list of elements; evaluation is a left fold over it.
class OpticalNetwork {
 public:
  OpticalNetwork() = default;
  explicit OpticalNetwork(std::vector<OpticalElement> elements) : elements_(std::move(elements)) {}

  OpticalNetwork& add(OpticalElement e) {
    elements_.push_back(std::move(e));
    return *this;
  }

  const std::vector<OpticalElement>& elements() const noexcept { return elements_; }
  bool empty() const noexcept { return elements_.empty(); }

 private:
  std::vector<OpticalElement> elements_;
};

inline PureState evaluate_network(PureState state, const OpticalNetwork& net) {
  for (const auto& element : net.elements()) {
    state = std::visit([&](const auto& e) { return apply(state, e); }, element);
  }
  return state;
}

// Network file: [{"phase": {"mode": "s1", "phi": 1.5708}},
//                {"bs": {"tau": 0.7071, "in": ["s1","s2"], "out": ["s'","s"]}}]

inline nlohmann::json network_to_json(const OpticalNetwork& net) {
  auto arr = nlohmann::json::array();
  for (const auto& element : net.elements()) {
    std::visit(
        [&](const auto& e) {
          using E = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<E, PhaseShift>) {
            arr.push_back({{"phase", {{"mode", e.mode.name()}, {"phi", e.phi}}}});
          } else {
            arr.push_back({{"bs",
                            {{"tau", e.tau},
                             {"in", {e.in1.name(), e.in2.name()}},
                             {"out", {e.out1.name(), e.out2.name()}}}}});
          }
        },
        element);
  }
  return arr;
}

inline OpticalNetwork network_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw BasisError("network JSON must be an array of elements");
  OpticalNetwork net;
  for (const auto& item : j) {
    if (item.contains("phase")) {
      const auto& p = item.at("phase");
      net.add(PhaseShift{ModeLabel(p.at("mode").get<std::string>()), p.at("phi").get<double>()});
    } else if (item.contains("bs")) {
      const auto& b = item.at("bs");
      const auto& in = b.at("in");
      const auto& out = b.at("out");
      if (in.size() != 2 || out.size() != 2) throw BasisError("beam splitter needs two in and two out modes");
      BeamSplitter bs{b.at("tau").get<double>(), ModeLabel(in[0].get<std::string>()),
                      ModeLabel(in[1].get<std::string>()), ModeLabel(out[0].get<std::string>()),
                      ModeLabel(out[1].get<std::string>())};
      bs.validate();
      net.add(std::move(bs));
    } else {
      throw BasisError("unknown network element: " + item.dump());
    }
  }
  return net;
}

inline OpticalNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open network file " + path);
  return network_from_json(nlohmann::json::parse(in));
}

}  // namespace dcsim
