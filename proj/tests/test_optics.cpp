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

#include "dcsim/optics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "dcsim/closed_form.hpp"
#include "dcsim/experiments.hpp"
#include "gtest/gtest.h"
#include "oracle.hpp"

using namespace dcsim;

namespace {

const double kH = std::numbers::sqrt2 / 2.0;
const double kPi = std::numbers::pi;

PureState eq1() { return make_superposition(kH, modes::s1, kH, modes::s2); }

PureState random_source(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<PairWeight> w;
  double n2 = 0.0;
  for (const auto& [s, i] : {std::pair{modes::s1, modes::i1}, std::pair{modes::s1, modes::i2},
                             std::pair{modes::s2, modes::i1}, std::pair{modes::s2, modes::i2}}) {
    Amplitude z{g(rng), g(rng)};
    n2 += std::norm(z);
    w.push_back({z, s, i});
  }
  for (auto& x : w) x.amplitude /= std::sqrt(n2);
  return make_entangled_pair(w);
}

}  // namespace

TEST(beam_splitter, coefficients_and_unitarity) {
  for (double t : {0.0, 0.1, 0.6, kH, 0.95, 1.0}) {
    auto bs = BeamSplitter::signal(t);
    EXPECT_NEAR(std::norm(bs.transmission()) + std::norm(bs.reflection()), 1.0, 1e-15);
    // Columns (T, R) and (R, T) are orthonormal.
    const Amplitude T = bs.transmission(), R = bs.reflection();
    EXPECT_NEAR(std::abs(std::conj(T) * R + std::conj(R) * T), 0.0, 1e-12);
  }
}

TEST(apply_phase, examples) {
  const double phi = 0.7;
  auto st = apply_phase(eq1(), modes::s1, phi);
  EXPECT_LT(std::abs(st.amplitude(BasisLabel(modes::s1)) - std::polar(kH, phi)), 1e-15);
  EXPECT_EQ(st.amplitude(BasisLabel(modes::s2)), Amplitude(kH));

  EXPECT_EQ(apply_phase(eq1(), modes::s2, 0.0), eq1());

  auto flip = apply_phase(make_superposition(1.0, modes::s1, 0.0, modes::s2), modes::s1, kPi);
  EXPECT_LT(std::abs(flip.amplitude(BasisLabel(modes::s1)) - Amplitude(-1.0)), 1e-15);
}

TEST(apply_phase, acts_on_idler_labels_and_rejects_unknown) {
  auto bell = make_entangled_pair({{kH, modes::s1, modes::i1}, {kH, modes::s2, modes::i2}});
  auto st = apply_phase(bell, modes::i2, kPi / 2);
  EXPECT_LT(std::abs(st.amplitude({modes::s2, modes::i2}) - Amplitude(0.0, kH)), 1e-15);
  EXPECT_THROW(apply_phase(eq1(), modes::i, 1.0), UnknownModeError);
}

TEST(phase_shift, reduced_phi) {
  EXPECT_NEAR((PhaseShift{modes::s1, 5 * kPi}.reduced_phi()), kPi, 1e-12);
  EXPECT_NEAR((PhaseShift{modes::s1, -kPi / 2}.reduced_phi()), 1.5 * kPi, 1e-12);
}

// Frozen from the numpy Kronecker-product oracle.
TEST(apply_beam_splitter, reproduces_signal_amplitudes) {
  auto st = apply_beam_splitter(apply_phase(eq1(), modes::s1, 1.0), BeamSplitter::signal(0.6));
  EXPECT_NEAR(st.amplitude(BasisLabel(modes::s)).real(), -0.05174380291158032, 1e-15);
  EXPECT_NEAR(st.amplitude(BasisLabel(modes::s)).imag(), 0.30564113949607186, 1e-15);
  EXPECT_NEAR(st.amplitude(BasisLabel(modes::s_prime)).real(), 0.22923085462205384, 1e-15);
  EXPECT_NEAR(st.amplitude(BasisLabel(modes::s_prime)).imag(), 0.9226913286668695, 1e-15);
}

TEST(apply_beam_splitter, full_transmission_is_relabeling) {
  auto st = apply_beam_splitter(make_superposition(1.0, modes::s1, 0.0, modes::s2),
                                BeamSplitter::signal(1.0));
  EXPECT_EQ(st.amplitude(BasisLabel(modes::s_prime)), Amplitude(1.0));
  EXPECT_EQ(st.amplitude(BasisLabel(modes::s)), Amplitude(0.0));
}

TEST(apply_beam_splitter, errors) {
  EXPECT_THROW(apply_beam_splitter(eq1(), BeamSplitter::signal(1.1)), DomainError);
  EXPECT_THROW(apply_beam_splitter(eq1(), BeamSplitter::signal(-0.1)), DomainError);
  EXPECT_THROW(apply_beam_splitter(eq1(), BeamSplitter::idler(0.5)), UnknownModeError);
  // Output label already occupied by a spectator mode.
  auto three = PureState::from_terms({{BasisLabel(modes::s1), 0.6},
                                      {BasisLabel(modes::s2), 0.0},
                                      {BasisLabel(modes::s), 0.8}});
  EXPECT_THROW(apply_beam_splitter(three, BeamSplitter::signal(0.5)), BasisError);
}

TEST(apply_beam_splitter, matches_closed_form_on_grid) {
  for (int ke = 0; ke <= 10; ++ke) {
    const double eps = ke / 10.0;
    for (int kp = 0; kp <= 36; ++kp) {
      const double phi = kp * kPi / 18.0;
      auto st = apply_beam_splitter(apply_phase(eq1(), modes::s1, phi), BeamSplitter::signal(eps));
      auto cf = closed_form::single_amplitudes(eps, phi);
      EXPECT_LT(std::abs(st.amplitude(BasisLabel(modes::s)) - cf.s), 1e-12);
      EXPECT_LT(std::abs(st.amplitude(BasisLabel(modes::s_prime)) - cf.s_prime), 1e-12);
    }
  }
}

TEST(evaluate_network, examples) {
  const double eps = 0.6, phi = 1.0;
  OpticalNetwork net;
  net.add(PhaseShift{modes::s1, phi}).add(BeamSplitter::signal(eps));
  auto st = evaluate_network(eq1(), net);
  auto [as, asp] = oracle::single(eps, phi);
  EXPECT_LT(std::abs(st.amplitude(BasisLabel(modes::s)) - as), 1e-15);
  EXPECT_LT(std::abs(st.amplitude(BasisLabel(modes::s_prime)) - asp), 1e-15);

  EXPECT_EQ(evaluate_network(eq1(), OpticalNetwork{}), eq1());
}

TEST(evaluate_network, eraser_state_matches_kronecker_oracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double eps = u(rng), chi = u(rng), phi = 2 * kPi * u(rng);
    OpticalNetwork net;
    net.add(PhaseShift{modes::s1, phi}).add(BeamSplitter::signal(eps)).add(BeamSplitter::idler(chi));
    auto st = evaluate_network(entangled_source(), net);
    auto ref = oracle::owzm(eps, chi, phi);
    EXPECT_LT(std::abs(st.amplitude({modes::s, modes::i}) - ref(0, 0)), 1e-14);
    EXPECT_LT(std::abs(st.amplitude({modes::s, modes::i_prime}) - ref(0, 1)), 1e-14);
    EXPECT_LT(std::abs(st.amplitude({modes::s_prime, modes::i}) - ref(1, 0)), 1e-14);
    EXPECT_LT(std::abs(st.amplitude({modes::s_prime, modes::i_prime}) - ref(1, 1)), 1e-14);
  }
}

// Frozen from the numpy oracle at eps=0.6, chi=0.8, phi=pi/3.
TEST(evaluate_network, eraser_frozen_point) {
  auto st = build_owzm(0.6, 0.8, kPi / 3);
  EXPECT_NEAR(st.amplitude({modes::s, modes::i}).real(), 0.1697056274847714, 1e-15);
  EXPECT_NEAR(st.amplitude({modes::s, modes::i}).imag(), -0.2939387691339813, 1e-15);
  EXPECT_NEAR(st.amplitude({modes::s_prime, modes::i}).real(), -0.22045407685048596, 1e-15);
  EXPECT_NEAR(st.amplitude({modes::s_prime, modes::i}).imag(), 0.5798275605729689, 1e-15);
  EXPECT_NEAR(st.amplitude({modes::s, modes::i_prime}).real(), -0.3919183588453085, 1e-15);
  EXPECT_NEAR(st.amplitude({modes::s, modes::i_prime}).imag(), 0.4808326112068523, 1e-15);
  EXPECT_NEAR(st.amplitude({modes::s_prime, modes::i_prime}).real(), -0.1697056274847713, 1e-15);
  EXPECT_NEAR(st.amplitude({modes::s_prime, modes::i_prime}).imag(), 0.29393876913398137, 1e-15);
}

TEST(optics_properties, unitarity_on_random_inputs) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    auto st = random_source(rng);
    OpticalNetwork net;
    net.add(PhaseShift{modes::s1, 2 * kPi * u(rng)})
        .add(BeamSplitter::signal(u(rng)))
        .add(BeamSplitter::idler(u(rng)))
        .add(PhaseShift{modes::i, 2 * kPi * u(rng)});
    EXPECT_NEAR(evaluate_network(st, net).norm_squared(), 1.0, 1e-12);
  }
}

TEST(optics_properties, disjoint_elements_commute) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    auto st = random_source(rng);
    const PhaseShift ph{modes::s1, 2 * kPi * u(rng)};
    const auto bs = BeamSplitter::idler(u(rng));
    auto a = apply(apply(st, ph), bs);
    auto b = apply(apply(st, bs), ph);
    ASSERT_EQ(a.basis(), b.basis());
    for (std::size_t n = 0; n < a.dimension(); ++n) {
      EXPECT_LT(std::abs(a.terms()[n].amplitude - b.terms()[n].amplitude), 1e-15);
    }
  }
}

TEST(optics_properties, global_phase_leaves_probabilities) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    auto st = random_source(rng);
    const Amplitude g = std::polar(1.0, 2 * kPi * u(rng));
    std::vector<PureState::Term> terms(st.terms().begin(), st.terms().end());
    for (auto& t : terms) t.amplitude *= g;
    auto rotated = PureState::from_terms(terms);
    OpticalNetwork net;
    net.add(PhaseShift{modes::s1, u(rng)}).add(BeamSplitter::signal(u(rng))).add(BeamSplitter::idler(u(rng)));
    auto a = evaluate_network(st, net);
    auto b = evaluate_network(rotated, net);
    for (std::size_t n = 0; n < a.dimension(); ++n) {
      EXPECT_NEAR(std::norm(a.terms()[n].amplitude), std::norm(b.terms()[n].amplitude), 1e-15);
    }
  }
}

TEST(network_json, parses_documented_form) {
  auto net = network_from_json(nlohmann::json::parse(
      R"([{"phase": {"mode":"s1","phi":1.5708}}, {"bs": {"tau":0.7071,"in":["s1","s2"],"out":["s'","s"]}}])"));
  ASSERT_EQ(net.elements().size(), 2u);
  const auto& bs = std::get<BeamSplitter>(net.elements()[1]);
  EXPECT_EQ(bs.out1, modes::s_prime);
  EXPECT_EQ(bs.tau, 0.7071);
  auto again = network_from_json(network_to_json(net));
  EXPECT_EQ(network_to_json(again), network_to_json(net));
  EXPECT_NEAR(evaluate_network(eq1(), net).norm_squared(), 1.0, 1e-12);
}

TEST(network_json, rejects_malformed) {
  EXPECT_THROW(network_from_json(nlohmann::json::parse(R"([{"mirror": {}}])")), BasisError);
  EXPECT_THROW(
      network_from_json(nlohmann::json::parse(R"([{"bs": {"tau":2,"in":["s1","s2"],"out":["a","b"]}}])")),
      DomainError);
  EXPECT_THROW(network_from_json(nlohmann::json::parse(R"({"phase": 1})")), BasisError);
}
