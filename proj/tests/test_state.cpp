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

#include "dcsim/state.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

using namespace dcsim;

namespace {

const double kH = std::numbers::sqrt2 / 2.0;

PureState random_pair_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const ModeLabel sig[2] = {modes::s, modes::s_prime};
  const ModeLabel idl[2] = {modes::i, modes::i_prime};
  std::vector<PureState::Term> terms;
  double n2 = 0.0;
  for (const auto& a : sig) {
    for (const auto& b : idl) {
      Amplitude z{g(rng), g(rng)};
      n2 += std::norm(z);
      terms.push_back({BasisLabel(a, b), z});
    }
  }
  for (auto& t : terms) t.amplitude /= std::sqrt(n2);
  return PureState::from_terms(std::move(terms));
}

}  // namespace

TEST(mode_label, prime_spellings_compare_equal) {
  EXPECT_EQ(ModeLabel("s\xE2\x80\xB2"), modes::s_prime);
  EXPECT_EQ(ModeLabel("i'").name(), "i'");
  EXPECT_THROW(ModeLabel(""), BasisError);
}

TEST(make_superposition, balanced) {
  auto st = make_superposition(kH, modes::s1, kH, modes::s2);
  EXPECT_EQ(st.kind(), BasisKind::single_photon);
  EXPECT_EQ(st.dimension(), 2u);
  EXPECT_EQ(st.amplitude(BasisLabel(modes::s1)), Amplitude(kH));
  EXPECT_EQ(st.amplitude(BasisLabel(modes::s2)), Amplitude(kH));
  EXPECT_NEAR(st.norm_squared(), 1.0, 1e-15);
}

TEST(make_superposition, basis_state_and_345) {
  auto basis = make_superposition(1.0, modes::s1, 0.0, modes::s2);
  EXPECT_EQ(basis.norm_squared(), 1.0);
  auto st = make_superposition(0.6, modes::s1, 0.8, modes::s2);
  EXPECT_NEAR(st.norm_squared(), 1.0, 1e-15);
}

TEST(make_superposition, rejects_bad_input) {
  EXPECT_THROW(make_superposition(0.6, modes::s1, 0.6, modes::s2), NormalizationError);
  EXPECT_THROW(make_superposition(kH, modes::s1, kH, modes::s1), BasisError);
  EXPECT_THROW(make_superposition(NAN, modes::s1, 1.0, modes::s2), NormalizationError);
  // Just outside the tolerance is rejected, not renormalized.
  EXPECT_THROW(make_superposition(1.0 + 1e-11, modes::s1, 0.0, modes::s2), NormalizationError);
  EXPECT_NO_THROW(make_superposition(1.0 + 1e-13, modes::s1, 0.0, modes::s2));
}

TEST(make_entangled_pair, examples) {
  auto bell = make_entangled_pair({{kH, modes::s1, modes::i1}, {kH, modes::s2, modes::i2}});
  EXPECT_EQ(bell.kind(), BasisKind::photon_pair);
  EXPECT_EQ(bell.amplitude({modes::s1, modes::i1}), Amplitude(kH));
  EXPECT_EQ(bell.amplitude({modes::s1, modes::i2}), Amplitude(0.0));

  auto product = make_entangled_pair({{1.0, modes::s1, modes::i1}});
  EXPECT_EQ(product.dimension(), 1u);

  auto singlet = make_entangled_pair({{kH, modes::s1, modes::i1}, {-kH, modes::s2, modes::i2}});
  EXPECT_NEAR(singlet.norm_squared(), 1.0, 1e-15);
}

TEST(make_entangled_pair, errors) {
  EXPECT_THROW(make_entangled_pair({{kH, modes::s1, modes::i1}, {kH, modes::s1, modes::i1}}),
               BasisError);
  EXPECT_THROW(make_entangled_pair({{0.5, modes::s1, modes::i1}}), NormalizationError);
}

TEST(tensor_with_idler, examples) {
  auto sup = make_superposition(kH, modes::s1, kH, modes::s2);
  auto sep = tensor_with_idler(sup, modes::i);
  EXPECT_EQ(sep.kind(), BasisKind::photon_pair);
  EXPECT_EQ(sep.amplitude({modes::s1, modes::i}), Amplitude(kH));
  EXPECT_EQ(sep.amplitude({modes::s2, modes::i}), Amplitude(kH));

  auto one = tensor_with_idler(make_superposition(1.0, modes::s1, 0.0, modes::s2), modes::i);
  EXPECT_EQ(one.amplitude({modes::s1, modes::i}), Amplitude(1.0));

  auto carried = tensor_with_idler(make_superposition(0.6, modes::s1, 0.8, modes::s2), modes::i);
  EXPECT_EQ(carried.amplitude({modes::s1, modes::i}), Amplitude(0.6));
  EXPECT_EQ(carried.amplitude({modes::s2, modes::i}), Amplitude(0.8));
}

TEST(tensor_with_idler, errors) {
  auto sup = make_superposition(kH, modes::s1, kH, modes::s2);
  EXPECT_THROW(tensor_with_idler(sup, modes::s1), BasisError);
  auto pair = tensor_with_idler(sup, modes::i);
  EXPECT_THROW(tensor_with_idler(pair, modes::i1), BasisError);
}

TEST(inner_product, examples) {
  auto x = make_superposition(kH, modes::s1, kH, modes::s2);
  EXPECT_NEAR(std::abs(inner_product(x, x) - 1.0), 0.0, 1e-12);
  auto e1 = make_superposition(1.0, modes::s1, 0.0, modes::s2);
  auto e2 = make_superposition(0.0, modes::s1, 1.0, modes::s2);
  EXPECT_EQ(inner_product(e1, e2), Amplitude(0.0));
  EXPECT_NEAR(std::abs(inner_product(x, e1) - kH), 0.0, 1e-15);
}

TEST(inner_product, basis_mismatch) {
  auto a = make_superposition(kH, modes::s1, kH, modes::s2);
  auto b = make_superposition(kH, modes::s, kH, modes::s_prime);
  EXPECT_THROW(inner_product(a, b), BasisError);
  EXPECT_THROW(inner_product(a, tensor_with_idler(a, modes::i)), BasisError);
}

TEST(inner_product, conjugate_symmetric_and_normalized) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    auto a = random_pair_state(rng);
    auto b = random_pair_state(rng);
    EXPECT_LT(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))), 1e-15);
    EXPECT_LT(std::abs(inner_product(a, a) - 1.0), 1e-12);
  }
}

TEST(pure_state, canonical_order_independent_of_construction) {
  auto a = make_entangled_pair({{kH, modes::s2, modes::i2}, {kH, modes::s1, modes::i1}});
  auto b = make_entangled_pair({{kH, modes::s1, modes::i1}, {kH, modes::s2, modes::i2}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.terms()[0].label, BasisLabel(modes::s1, modes::i1));
}

TEST(pure_state, global_phase_is_not_quotiented) {
  auto a = make_superposition(kH, modes::s1, kH, modes::s2);
  auto b = make_superposition(-kH, modes::s1, -kH, modes::s2);
  EXPECT_FALSE(a == b);
}

TEST(pure_state, json_round_trip_is_bit_exact) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    auto st = random_pair_state(rng);
    nlohmann::json j = st;
    auto back = pure_state_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back, st);
  }
  auto one = make_superposition(0.6, modes::s1, Amplitude(0.0, 0.8), modes::s2);
  nlohmann::json j = one;
  EXPECT_EQ(j.dump(), R"({"amplitudes":[[0.6,0.0],[0.0,0.8]],"basis":["s1","s2"]})");
  EXPECT_EQ(pure_state_from_json(j), one);
}

TEST(pure_state, json_errors) {
  EXPECT_THROW(pure_state_from_json(nlohmann::json::parse(R"({"basis":["s1"],"amplitudes":[]})")),
               BasisError);
  EXPECT_THROW(
      pure_state_from_json(nlohmann::json::parse(R"({"basis":["s1"],"amplitudes":[[0.5,0]]})")),
      NormalizationError);
}
