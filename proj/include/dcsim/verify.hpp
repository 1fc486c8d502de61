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

// Oracle-equivalence sweep: every closed-form rate against the same
// quantity obtained by propagating states through the optical network.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "dcsim/closed_form.hpp"
#include "dcsim/density.hpp"
#include "dcsim/experiments.hpp"
#include "dcsim/format.hpp"
#include "dcsim/optics.hpp"

namespace dcsim {

/// Ratios are compared only where both denominators are at least this;
/// closer to a pole the probabilities themselves are compared instead.
inline constexpr double kRatioCompareFloor = 1e-5;

struct VerifyCheck {
  std::string name;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  std::size_t points = 0;

  bool passed() const noexcept { return max_deviation <= tolerance; }

  void record(double deviation) {
    ++points;
    if (!(deviation <= max_deviation)) max_deviation = deviation;  // NaN sticks
  }
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed(); });
  }
};

/// |a - b| / max(1, |b|)
inline double scaled_deviation(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

/// Deviation of two ratios, or nullopt when either sits too close to a pole.
inline std::optional<double> ratio_deviation(const closed_form::Ratio& a, const closed_form::Ratio& b) {
  if (a.denominator < kRatioCompareFloor || b.denominator < kRatioCompareFloor) return std::nullopt;
  return scaled_deviation(a.numerator / a.denominator, b.numerator / b.denominator);
}

inline VerifyReport run_verification(const closed_form::Grid& grid = {}) {
  namespace cf = closed_form;
  VerifyCheck amp_single{"signal amplitudes vs closed form", 1e-12};
  VerifyCheck prob_single{"signal detection probabilities vs closed form", 1e-12};
  VerifyCheck ratio_single{"signal detection ratio vs closed form", 1e-10};
  VerifyCheck flat{"entangled singles P_s = P_s' = 1/2", 1e-12};
  VerifyCheck mixed{"entangled reduced purity = 1/2", 1e-12};
  VerifyCheck marker{"which-path coincidence ratio vs closed form", 1e-10};
  VerifyCheck marker_phi{"which-path coincidences constant in phi", 1e-12};
  VerifyCheck amp_eraser{"eraser amplitudes vs closed form", 1e-12};
  VerifyCheck prob_eraser{"eraser coincidence probabilities vs closed form", 1e-10};
  VerifyCheck ratio_eraser{"eraser coincidence ratio vs closed form", 1e-10};
  VerifyCheck limit_marker{"chi = 0 reduces to the which-path ratio", 1e-10};
  VerifyCheck limit_fringe{"chi = 1/sqrt2 gives the single ratio at phi + pi/2", 1e-10};
  VerifyCheck no_signal{"idler marginals P_i = P_i' = 1/2", 1e-12};
  VerifyCheck sum_four{"four coincidence probabilities sum to 1", 1e-12};
  VerifyCheck sep_purity{"separable reduced signal purity = 1", 1e-12};
  VerifyCheck sep_ratio{"separable singles ratio vs single ratio", 1e-10};

  for (double eps : grid.epsilons) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double marker_lo[2] = {inf, inf};
    double marker_hi[2] = {-inf, -inf};
    for (double phi : grid.phis) {
      // single system
      const auto single = evaluate_network(signal_superposition(), signal_arm(eps, phi));
      const auto amps = cf::single_amplitudes(eps, phi);
      amp_single.record(std::abs(single.amplitude(BasisLabel(modes::s)) - amps.s));
      amp_single.record(std::abs(single.amplitude(BasisLabel(modes::s_prime)) - amps.s_prime));
      const auto rho1 = density_from_pure(single);
      const double ps = detection_probability(rho1, modes::s);
      const double psp = detection_probability(rho1, modes::s_prime);
      const auto sp = cf::single_probs(eps, phi);
      prob_single.record(std::abs(ps - sp.p_s));
      prob_single.record(std::abs(psp - sp.p_s_prime));
      if (auto d = ratio_deviation({ps, psp}, cf::single_ratio(eps, phi))) ratio_single.record(*d);

      // which-path markers
      const auto tagged = build_owzm(eps, phi);
      const auto dm = outcome_distribution(tagged);
      marker_lo[0] = std::min(marker_lo[0], dm.p_s_i());
      marker_hi[0] = std::max(marker_hi[0], dm.p_s_i());
      marker_lo[1] = std::min(marker_lo[1], dm.p_sp_i());
      marker_hi[1] = std::max(marker_hi[1], dm.p_sp_i());
      if (auto d = ratio_deviation({dm.p_s_i(), dm.p_sp_i()}, cf::marker_coincidence_ratio(eps))) {
        marker.record(*d);
      }
      const auto rho_tag = partial_trace_idler(density_from_pure(tagged));
      flat.record(std::abs(detection_probability(rho_tag, modes::s) - 0.5));
      flat.record(std::abs(detection_probability(rho_tag, modes::s_prime) - 0.5));
      mixed.record(std::abs(purity(rho_tag) - 0.5));

      // separable source
      const auto sep = build_zwm(eps, phi);
      const auto rho_sep = partial_trace_idler(density_from_pure(sep));
      sep_purity.record(std::abs(purity(rho_sep) - 1.0));
      const double zs = detection_probability(rho_sep, modes::s);
      const double zsp = detection_probability(rho_sep, modes::s_prime);
      if (auto d = ratio_deviation({zs, zsp}, cf::single_ratio(eps, phi))) sep_ratio.record(*d);

      // eraser
      for (double chi : grid.chis) {
        const cf::FringeParams params{eps, chi, phi};
        const auto st = build_owzm(eps, chi, phi);
        const auto ca = cf::eraser_amplitudes(params);
        amp_eraser.record(std::abs(st.amplitude({modes::s, modes::i}) - ca.s_i));
        amp_eraser.record(std::abs(st.amplitude({modes::s_prime, modes::i}) - ca.sp_i));
        amp_eraser.record(std::abs(st.amplitude({modes::s, modes::i_prime}) - ca.s_ip));
        amp_eraser.record(std::abs(st.amplitude({modes::s_prime, modes::i_prime}) - ca.sp_ip));

        const auto d = outcome_distribution(st);
        const auto cp = cf::eraser_coincidence_probs(params);
        prob_eraser.record(std::abs(d.p_s_i() - cp.p_s_i));
        prob_eraser.record(std::abs(d.p_sp_i() - cp.p_sp_i));
        prob_eraser.record(std::abs(d.p_s_ip() - cp.p_s_ip));
        prob_eraser.record(std::abs(d.p_sp_ip() - cp.p_sp_ip));
        sum_four.record(std::abs(d.sum() - 1.0));
        sum_four.record(std::abs(cp.sum() - 1.0));
        const cf::Ratio propagated{d.p_s_i(), d.p_sp_i()};
        if (auto dev = ratio_deviation(propagated, cf::eraser_coincidence_ratio(params))) {
          ratio_eraser.record(*dev);
        }
        no_signal.record(std::abs(d.idler_marginal(0) - 0.5));
        no_signal.record(std::abs(d.idler_marginal(1) - 0.5));

        const auto rho_s = partial_trace_idler(density_from_pure(st));
        flat.record(std::abs(detection_probability(rho_s, modes::s) - 0.5));
        flat.record(std::abs(detection_probability(rho_s, modes::s_prime) - 0.5));
        mixed.record(std::abs(purity(rho_s) - 0.5));
      }

      // limits, on both routes
      {
        const cf::FringeParams p0{eps, 0.0, phi};
        const auto d0 = outcome_distribution(build_owzm(eps, 0.0, phi));
        const auto target = cf::marker_coincidence_ratio(eps);
        if (auto dev = ratio_deviation(cf::eraser_coincidence_ratio(p0), target)) limit_marker.record(*dev);
        if (auto dev = ratio_deviation({d0.p_s_i(), d0.p_sp_i()}, target)) limit_marker.record(*dev);

        const cf::FringeParams ph{eps, cf::kBalanced, phi};
        const auto dh = outcome_distribution(build_owzm(eps, cf::kBalanced, phi));
        const auto shifted = cf::single_ratio(eps, phi + std::numbers::pi / 2.0);
        if (auto dev = ratio_deviation(cf::eraser_coincidence_ratio(ph), shifted)) limit_fringe.record(*dev);
        if (auto dev = ratio_deviation({dh.p_s_i(), dh.p_sp_i()}, shifted)) limit_fringe.record(*dev);
      }
    }
    marker_phi.record(marker_hi[0] - marker_lo[0]);
    marker_phi.record(marker_hi[1] - marker_lo[1]);
  }

  return {{amp_single, prob_single, ratio_single, flat, mixed, marker, marker_phi, amp_eraser,
           prob_eraser, ratio_eraser, limit_marker, limit_fringe, no_signal, sum_four, sep_purity,
           sep_ratio}};
}

inline void write_verify_report(std::ostream& os, const VerifyReport& report) {
  for (const auto& c : report.checks) {
    os << (c.passed() ? "PASS " : "FAIL ") << c.name << ": max deviation "
       << format_double(c.max_deviation) << " (tolerance " << format_double(c.tolerance) << ", "
       << c.points << " points)\n";
  }
  os << (report.passed() ? "verify: all checks passed\n" : "verify: FAILED\n");
}

}  // namespace dcsim
