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

#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "dcsim/closed_form.hpp"
#include "dcsim/density.hpp"
#include "dcsim/experiments.hpp"
#include "dcsim/format.hpp"
#include "dcsim/optics.hpp"
#include "dcsim/version.hpp"

namespace dcsim {

enum class SweepKind { single, owzm, zwm };

/// One row of a parameter sweep. Every value comes from state propagation;
/// columns that do not apply to a setup hold NaN.
struct SweepRow {
  double epsilon = 0.0;
  double chi = std::numeric_limits<double>::quiet_NaN();
  double phi = 0.0;
  double p_s = 0.0;
  double p_sp = 0.0;
  closed_form::Ratio ratio_single;
  double p_si = std::numeric_limits<double>::quiet_NaN();
  double p_spi = std::numeric_limits<double>::quiet_NaN();
  double p_sip = std::numeric_limits<double>::quiet_NaN();
  double p_spip = std::numeric_limits<double>::quiet_NaN();
  std::optional<closed_form::Ratio> ratio_coinc;
  double visibility = 0.0;
};

inline SweepRow sweep_point(SweepKind kind, double epsilon, double chi, double phi) {
  SweepRow row;
  row.epsilon = epsilon;
  row.phi = phi;
  row.visibility = closed_form::visibility(epsilon);

  auto fill_coincidences = [&](const OutcomeDistribution& d) {
    row.p_si = d.p_s_i();
    row.p_spi = d.p_sp_i();
    row.p_sip = d.p_s_ip();
    row.p_spip = d.p_sp_ip();
    row.ratio_coinc = closed_form::Ratio{d.p_s_i(), d.p_sp_i()};
  };

  if (kind == SweepKind::single) {
    const auto st = evaluate_network(signal_superposition(), signal_arm(epsilon, phi));
    const auto rho = density_from_pure(st);
    row.p_s = detection_probability(rho, modes::s);
    row.p_sp = detection_probability(rho, modes::s_prime);
  } else {
    const auto st = kind == SweepKind::owzm ? build_owzm(epsilon, chi, phi) : build_zwm(epsilon, phi);
    const auto rho_s = partial_trace_idler(density_from_pure(st));
    row.p_s = detection_probability(rho_s, modes::s);
    row.p_sp = detection_probability(rho_s, modes::s_prime);
    if (kind == SweepKind::owzm) row.chi = chi;
    fill_coincidences(outcome_distribution(st));
  }
  row.ratio_single = {row.p_s, row.p_sp};
  return row;
}

inline std::vector<SweepRow> run_sweep(SweepKind kind, const std::vector<double>& epsilons,
                                       double chi, const std::vector<double>& phis) {
  std::vector<SweepRow> rows;
  rows.reserve(epsilons.size() * phis.size());
  for (double eps : epsilons) {
    for (double phi : phis) rows.push_back(sweep_point(kind, eps, chi, phi));
  }
  return rows;
}

inline constexpr const char* kSweepHeader =
    "epsilon,chi,phi,P_s,P_sp,ratio_single,P_si,P_spi,P_sip,P_spip,ratio_coinc,visibility";

/// `metadata` goes on a leading '#' line; the column header follows.
inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                            const std::string& metadata) {
  os << "# dcsim " << kVersion << ' ' << metadata << '\n' << kSweepHeader << '\n';
  for (const auto& r : rows) {
    os << format_double(r.epsilon) << ',' << format_double(r.chi) << ',' << format_double(r.phi)
       << ',' << format_double(r.p_s) << ',' << format_double(r.p_sp) << ','
       << format_double(r.ratio_single.value_or_inf()) << ',' << format_double(r.p_si) << ','
       << format_double(r.p_spi) << ',' << format_double(r.p_sip) << ',' << format_double(r.p_spip)
       << ','
       << format_double(r.ratio_coinc ? r.ratio_coinc->value_or_inf()
                                      : std::numeric_limits<double>::quiet_NaN())
       << ',' << format_double(r.visibility) << '\n';
  }
}

}  // namespace dcsim
