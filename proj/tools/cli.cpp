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

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dcsim/dcsim.hpp"

namespace dcsim::cli {
namespace {

struct Options {
  std::optional<double> epsilon;
  std::optional<double> chi;
  std::optional<double> phi_start;
  std::optional<double> phi_stop;
  std::optional<std::size_t> phi_steps;
  std::vector<double> epsilon_menu;
  std::optional<std::uint64_t> events;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + format_double(v[k]);
  return s;
}

PhiSweep phi_sweep(const Options& o, std::size_t default_steps) {
  PhiSweep p;
  p.start = o.phi_start.value_or(0.0);
  p.stop = o.phi_stop.value_or(2.0 * std::numbers::pi);
  p.steps = o.phi_steps.value_or(default_steps);
  return p;
}

std::vector<double> epsilons(const Options& o) {
  if (!o.epsilon_menu.empty()) return o.epsilon_menu;
  return {o.epsilon.value_or(closed_form::kBalanced)};
}

// Writes through `fn` to --out when given, else to `out`.
template <class Fn>
void emit(const Options& o, std::ostream& out, Fn&& fn) {
  if (!o.out) {
    fn(out);
    return;
  }
  std::ofstream f(*o.out, std::ios::binary);
  if (!f) throw Error("cannot write " + *o.out);
  fn(f);
  if (!f) throw Error("write failed for " + *o.out);
}

int run_sweep_command(const std::string& name, SweepKind kind, const Options& o, std::ostream& out) {
  const auto eps = epsilons(o);
  const double chi = o.chi.value_or(closed_form::kBalanced);
  closed_form::check_transmissivity(chi, "chi");
  for (double e : eps) closed_form::check_transmissivity(e, "epsilon");
  const auto phi = phi_sweep(o, 72);
  std::ostringstream meta;
  meta << "sweep subcommand=" << name << " epsilon-menu=" << join(eps);
  if (kind == SweepKind::owzm) meta << " chi=" << format_double(chi);
  meta << " phi-start=" << format_double(phi.start) << " phi-stop=" << format_double(phi.stop)
       << " phi-steps=" << phi.steps;
  const auto rows = run_sweep(kind, eps, chi, phi.points());
  emit(o, out, [&](std::ostream& os) { write_sweep_csv(os, rows, meta.str()); });
  return kOk;
}

int run_delayed_choice_command(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  cfg.epsilon_choices = !o.epsilon_menu.empty() ? o.epsilon_menu
                        : o.epsilon             ? std::vector<double>{*o.epsilon}
                                                : default_epsilon_menu();
  auto distinct = cfg.epsilon_choices;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  // A one-entry menu is a plain entangled run with fixed epsilon.
  if (distinct.size() < 2) {
    cfg.kind = ExperimentKind::owzm;
    cfg.epsilon_choices = {distinct.front()};
  }
  cfg.chi = o.chi.value_or(closed_form::kBalanced);
  cfg.phi = phi_sweep(o, 12);
  cfg.events = o.events.value_or(1'000'000);
  cfg.seed = o.seed.value_or(42);
  cfg.validate();

  const auto log = run_delayed_choice(cfg);
  const auto stats = analyze(log);
  const auto checks = check_run(stats);

  std::ostream* summary = &err;
  if (o.out) {
    const std::string events_path = *o.out + ".events.txt";
    const std::string stats_path = *o.out + ".stats.csv";
    std::ofstream ef(events_path, std::ios::binary);
    std::ofstream sf(stats_path, std::ios::binary);
    if (!ef || !sf) throw Error("cannot write " + events_path + " / " + stats_path);
    write_event_log(ef, log);
    write_run_statistics(sf, stats);
    if (!ef || !sf) throw Error("write failed for " + events_path + " / " + stats_path);
    out << "wrote " << events_path << " (" << log.events.size() << " events) and " << stats_path << '\n';
    summary = &out;
  } else {
    write_run_statistics(out, stats);
  }

  bool ok = true;
  for (const auto& c : checks) {
    *summary << (c.passed() ? "PASS " : "FAIL ") << c.name << ": worst |z| "
             << format_double(c.worst_z) << " (limit " << format_double(c.limit) << ")\n";
    ok = ok && c.passed();
  }
  return ok ? kOk : kCheckFailed;
}

int run_verify_command(const Options& o, std::ostream& out) {
  const auto report = run_verification();
  emit(o, out, [&](std::ostream& os) { write_verify_report(os, report); });
  return report.passed() ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-crystal photon-pair interferometry and delayed-choice simulator", "dcsim"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key=value file mirroring the long flags");
  app.require_subcommand(1);

  Options o;
  app.add_option("--epsilon", o.epsilon, "signal beam splitter transmissivity");
  app.add_option("--chi", o.chi, "idler beam splitter transmissivity");
  app.add_option("--phi-start", o.phi_start, "first phase (rad)");
  app.add_option("--phi-stop", o.phi_stop, "last phase (rad)");
  app.add_option("--phi-steps", o.phi_steps, "number of phase intervals");
  app.add_option("--epsilon-menu", o.epsilon_menu, "comma-separated epsilon values")->delimiter(',');
  app.add_option("--events", o.events, "total Monte Carlo events");
  app.add_option("--seed", o.seed, "QRNG seed");
  app.add_option("--out", o.out, "output file (prefix for delayed-choice)");

  auto* single = app.add_subcommand("single", "single-photon superposition through BS_s")->fallthrough();
  auto* owzm = app.add_subcommand("owzm", "entangled source with which-path eraser")->fallthrough();
  auto* zwm = app.add_subcommand("zwm", "separable source")->fallthrough();
  auto* dc = app.add_subcommand("delayed-choice", "Monte Carlo delayed-choice protocol")->fallthrough();
  auto* verify = app.add_subcommand("verify", "closed forms vs propagation over the default grid")
                     ->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*single) return run_sweep_command("single", SweepKind::single, o, out);
    if (*owzm) return run_sweep_command("owzm", SweepKind::owzm, o, out);
    if (*zwm) return run_sweep_command("zwm", SweepKind::zwm, o, out);
    if (*dc) return run_delayed_choice_command(o, out, err);
    if (*verify) return run_verify_command(o, out);
  } catch (const DomainError& e) {
    err << "dcsim: " << e.what() << '\n';
    return kUsageError;
  } catch (const NoSignalingViolation& e) {
    err << "dcsim: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "dcsim: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace dcsim::cli
