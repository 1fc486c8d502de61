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
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dcsim/closed_form.hpp"
#include "dcsim/density.hpp"
#include "dcsim/errors.hpp"
#include "dcsim/format.hpp"
#include "dcsim/mode.hpp"
#include "dcsim/optics.hpp"
#include "dcsim/state.hpp"
#include "dcsim/version.hpp"

namespace dcsim {

// ---------------------------------------------------------------------------
// Setups
// ---------------------------------------------------------------------------

/// (|1_s1>|1_i1> + |1_s2>|1_i2>) / sqrt 2
inline PureState entangled_source() {
  const double a = closed_form::kBalanced;
  return make_entangled_pair({{a, modes::s1, modes::i1}, {a, modes::s2, modes::i2}});
}

/// (|1_s1> + |1_s2>) / sqrt 2
inline PureState signal_superposition() {
  const double a = closed_form::kBalanced;
  return make_superposition(a, modes::s1, a, modes::s2);
}

inline OpticalNetwork signal_arm(double epsilon, double phi) {
  OpticalNetwork net;
  net.add(PhaseShift{modes::s1, phi}).add(BeamSplitter::signal(epsilon));
  return net;
}

/// Entangled source, phase on s1 and the signal splitter; the idler modes
/// i1/i2 stay which-path markers.
inline PureState build_owzm(double epsilon, double phi) {
  return evaluate_network(entangled_source(), signal_arm(epsilon, phi));
}

/// Entangled source through both splitters: the idler splitter with
/// transmissivity chi mixes i1/i2 into i/i'. chi = 0 sends i1 to i by pure
/// reflection, reproducing the marker statistics with i standing for i1.
inline PureState build_owzm(double epsilon, double chi, double phi) {
  auto net = signal_arm(epsilon, phi);
  net.add(BeamSplitter::idler(chi));
  return evaluate_network(entangled_source(), net);
}

/// Separable source (|1_s1> + |1_s2>)/sqrt2 (x) |1_i> through the signal arm.
inline PureState build_zwm(double epsilon, double phi) {
  return evaluate_network(tensor_with_idler(signal_superposition(), modes::i),
                          signal_arm(epsilon, phi));
}

/// Joint probabilities over {s, s'} x {first idler, second idler}.
///
/// The idler pair is (i, i') after the eraser, (i1, i2) before it, and
/// (i, i') with i' never firing for the separable setup.
struct OutcomeDistribution {
  std::array<ModeLabel, 2> idler_modes;
  /// p[signal][idler]; signal 0 = s, 1 = s'.
  std::array<std::array<double, 2>, 2> p{};

  double p_s_i() const { return p[0][0]; }
  double p_sp_i() const { return p[1][0]; }
  double p_s_ip() const { return p[0][1]; }
  double p_sp_ip() const { return p[1][1]; }

  double signal_marginal(int sig) const { return p[sig][0] + p[sig][1]; }
  double idler_marginal(int idl) const { return p[0][idl] + p[1][idl]; }
  double sum() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }
};

inline OutcomeDistribution outcome_distribution(const PureState& state) {
  if (state.kind() != BasisKind::photon_pair) {
    throw BasisError("outcome distribution needs a two-photon state");
  }
  const auto sig = state.signal_modes();
  if (sig != std::vector<ModeLabel>{modes::s, modes::s_prime}) {
    throw BasisError("outcome distribution needs signal modes {s, s'}");
  }
  const auto idl = state.idler_modes();
  OutcomeDistribution d;
  if (idl == std::vector<ModeLabel>{modes::i, modes::i_prime} ||
      idl == std::vector<ModeLabel>{modes::i}) {
    d.idler_modes = {modes::i, modes::i_prime};
  } else if (idl == std::vector<ModeLabel>{modes::i1, modes::i2}) {
    d.idler_modes = {modes::i1, modes::i2};
  } else {
    throw BasisError("outcome distribution needs idler modes {i, i'}, {i1, i2} or {i}");
  }
  const std::array<ModeLabel, 2> sm{modes::s, modes::s_prime};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      d.p[a][b] = std::norm(state.amplitude(BasisLabel(sm[a], d.idler_modes[b])));
    }
  }
  if (std::abs(d.sum() - 1.0) > kNormTolerance) {
    throw NormalizationError("outcome probabilities do not sum to 1");
  }
  return d;
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class ExperimentKind { owzm, zwm, delayed_choice };

inline std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::owzm: return "owzm";
    case ExperimentKind::zwm: return "zwm";
    case ExperimentKind::delayed_choice: return "delayed_choice";
  }
  return "unknown";
}

/// Inclusive phase grid with `steps` intervals (steps + 1 points).
struct PhiSweep {
  double start = 0.0;
  double stop = 2.0 * std::numbers::pi;
  std::size_t steps = 12;

  std::vector<double> points() const { return closed_form::inclusive_grid(start, stop, steps); }
};

inline const std::vector<double>& default_epsilon_menu() {
  static const std::vector<double> menu{0.3, closed_form::kBalanced, 0.95};
  return menu;
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::delayed_choice;
  PhiSweep phi;
  /// A single entry for owzm/zwm; the QRNG menu (>= 2 distinct) for
  /// delayed_choice.
  std::vector<double> epsilon_choices = default_epsilon_menu();
  double chi = closed_form::kBalanced;
  /// Total events, spread as evenly as possible over the phi grid.
  std::uint64_t events = 1'000'000;
  std::uint64_t seed = 42;

  void validate() const {
    if (epsilon_choices.empty()) throw DomainError("epsilon menu must not be empty");
    for (double e : epsilon_choices) closed_form::check_transmissivity(e, "epsilon");
    closed_form::check_transmissivity(chi, "chi");
    if (!std::isfinite(phi.start) || !std::isfinite(phi.stop)) {
      throw DomainError("phi range must be finite");
    }
    if (kind == ExperimentKind::delayed_choice) {
      auto sorted = epsilon_choices;
      std::sort(sorted.begin(), sorted.end());
      if (std::unique(sorted.begin(), sorted.end()) - sorted.begin() < 2) {
        throw DomainError("delayed choice needs at least two distinct epsilon choices");
      }
    } else if (epsilon_choices.size() != 1) {
      throw DomainError(to_string(kind) + " takes a single epsilon");
    }
    if (events < phi.points().size()) {
      throw DomainError("need at least one event per phi point");
    }
  }

  /// Events assigned to phi point `k`.
  std::uint64_t events_at(std::size_t k) const {
    const auto n = static_cast<std::uint64_t>(phi.points().size());
    return events / n + (k < events % n ? 1 : 0);
  }

  /// One-line key=value echo, stable across runs.
  std::string describe() const {
    std::ostringstream os;
    os << "kind=" << to_string(kind) << " phi-start=" << format_double(phi.start)
       << " phi-stop=" << format_double(phi.stop) << " phi-steps=" << phi.steps
       << " epsilon-menu=";
    for (std::size_t k = 0; k < epsilon_choices.size(); ++k) {
      os << (k ? "," : "") << format_double(epsilon_choices[k]);
    }
    os << " chi=" << format_double(chi) << " events=" << events << " seed=" << seed;
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

/// Stand-in for the quantum random number generator: mt19937_64 seeded
/// through std::seed_seq from (seed, substream index). Both algorithms are
/// fully specified by the standard, so streams are portable; the integer to
/// double and bounded-integer conversions below are done by hand for the
/// same reason.
class Qrng {
 public:
  static Qrng substream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Qrng(std::mt19937_64(seq));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., n-1}, by rejection.
  std::size_t pick(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

 private:
  explicit Qrng(std::mt19937_64 engine) : engine_(std::move(engine)) {}
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Events
// ---------------------------------------------------------------------------

enum class IdlerOutcome : std::uint8_t { i, i_prime };
enum class SignalOutcome : std::uint8_t { s, s_prime };

inline const char* to_string(IdlerOutcome o) { return o == IdlerOutcome::i ? "i" : "i'"; }
inline const char* to_string(SignalOutcome o) { return o == SignalOutcome::s ? "s" : "s'"; }

/// Logical ticks of the four steps of one event, in the order the sampler
/// performed them.
struct CausalOrder {
  std::uint8_t bob_detected = 0;
  std::uint8_t trigger_sent = 0;
  std::uint8_t epsilon_chosen = 0;
  std::uint8_t alice_detected = 0;

  bool delayed_choice() const {
    return bob_detected < trigger_sent && trigger_sent < epsilon_chosen &&
           epsilon_chosen < alice_detected;
  }

  friend bool operator==(const CausalOrder&, const CausalOrder&) = default;
};

struct Event {
  std::uint64_t sequence_no = 0;
  std::size_t phi_index = 0;
  double phi = 0.0;
  IdlerOutcome bob = IdlerOutcome::i;
  std::size_t epsilon_index = 0;
  double epsilon = 0.0;
  SignalOutcome alice = SignalOutcome::s;
  CausalOrder order;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Tolerance for the idler-marginal independence check done before sampling.
inline constexpr double kNoSignalingTolerance = 1e-12;

/// Outcome tables for one phase point and every epsilon in the menu.
///
/// Construction verifies that Bob's marginal does not depend on the menu
/// entry. That independence is what lets Bob's click be drawn before
/// epsilon exists.
class EventSampler {
 public:
  EventSampler(ExperimentKind kind, double phi, std::vector<double> epsilon_choices, double chi)
      : phi_(phi), menu_(std::move(epsilon_choices)) {
    if (menu_.empty()) throw DomainError("epsilon menu must not be empty");
    for (double eps : menu_) {
      const PureState st = kind == ExperimentKind::zwm ? build_zwm(eps, phi) : build_owzm(eps, chi, phi);
      const auto d = outcome_distribution(st);
      std::array<double, 2> cond{};
      for (int b = 0; b < 2; ++b) {
        const double pb = d.idler_marginal(b);
        cond[b] = pb > 0.0 ? d.p[0][b] / pb : 0.0;
      }
      conditional_s_.push_back(cond);
      dists_.push_back(d);
    }
    p_bob_i_ = dists_.front().idler_marginal(0);
    for (const auto& d : dists_) {
      if (std::abs(d.idler_marginal(0) - p_bob_i_) > kNoSignalingTolerance) {
        throw NoSignalingViolation("idler marginal depends on epsilon at phi = " + format_double(phi));
      }
    }
  }

  double phi() const noexcept { return phi_; }
  double p_bob_i() const noexcept { return p_bob_i_; }
  const std::vector<double>& menu() const noexcept { return menu_; }
  const OutcomeDistribution& distribution(std::size_t eps_index) const { return dists_.at(eps_index); }

  /// P(alice = s | bob, epsilon).
  double conditional_s(std::size_t eps_index, IdlerOutcome bob) const {
    return conditional_s_.at(eps_index)[bob == IdlerOutcome::i ? 0 : 1];
  }

  /// Bob clicks, sends the trigger, the QRNG picks epsilon, then Alice's
  /// photon is detected under that epsilon.
  Event sample(Qrng& rng) const {
    Event ev;
    ev.phi = phi_;
    std::uint8_t tick = 0;

    ev.bob = rng.uniform01() < p_bob_i_ ? IdlerOutcome::i : IdlerOutcome::i_prime;
    ev.order.bob_detected = tick++;
    ev.order.trigger_sent = tick++;

    ev.epsilon_index = rng.pick(menu_.size());
    ev.epsilon = menu_[ev.epsilon_index];
    ev.order.epsilon_chosen = tick++;

    ev.alice = rng.uniform01() < conditional_s(ev.epsilon_index, ev.bob) ? SignalOutcome::s
                                                                         : SignalOutcome::s_prime;
    ev.order.alice_detected = tick++;
    return ev;
  }

 private:
  double phi_;
  std::vector<double> menu_;
  std::vector<OutcomeDistribution> dists_;
  std::vector<std::array<double, 2>> conditional_s_;
  double p_bob_i_ = 0.5;
};

/// Single draw; builds the outcome tables on every call.
inline Event sample_event(Qrng& rng, double phi, const std::vector<double>& epsilon_choices,
                          double chi, ExperimentKind kind = ExperimentKind::delayed_choice) {
  return EventSampler(kind, phi, epsilon_choices, chi).sample(rng);
}

struct EventLog {
  ExperimentConfig config;
  std::vector<Event> events;
};

/// Runs the protocol at every phase point. Each phase point owns the
/// substream (seed, phi index), so the log does not depend on how points
/// are spread over worker threads.
inline EventLog run_delayed_choice(const ExperimentConfig& config, unsigned workers = 0) {
  config.validate();
  const auto phis = config.phi.points();

  std::vector<EventSampler> samplers;
  samplers.reserve(phis.size());
  for (double phi : phis) samplers.emplace_back(config.kind, phi, config.epsilon_choices, config.chi);

  std::vector<std::uint64_t> offsets(phis.size() + 1, 0);
  for (std::size_t k = 0; k < phis.size(); ++k) offsets[k + 1] = offsets[k] + config.events_at(k);

  EventLog log{config, std::vector<Event>(offsets.back())};

  auto run_point = [&](std::size_t k) {
    Qrng rng = Qrng::substream(config.seed, k);
    for (std::uint64_t seq = offsets[k]; seq < offsets[k + 1]; ++seq) {
      Event ev = samplers[k].sample(rng);
      ev.sequence_no = seq;
      ev.phi_index = k;
      log.events[seq] = ev;
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, phis.size()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < phis.size(); ++k) run_point(k);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < phis.size(); k += workers) run_point(k);
      });
    }
  }
  return log;
}

/// Text log: a metadata comment, a column header, then
/// "seq phi bob eps alice" per event.
inline void write_event_log(std::ostream& os, const EventLog& log) {
  os << "# dcsim " << kVersion << " event-log " << log.config.describe() << '\n';
  os << "seq phi bob eps alice\n";
  for (const auto& e : log.events) {
    os << e.sequence_no << ' ' << format_double(e.phi) << ' ' << to_string(e.bob) << ' '
       << format_double(e.epsilon) << ' ' << to_string(e.alice) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Analysis
// ---------------------------------------------------------------------------

struct StratumCounts {
  std::uint64_t n = 0;
  std::uint64_t n_s = 0;
  std::uint64_t n_sp = 0;
  std::uint64_t n_si = 0;
  std::uint64_t n_spi = 0;
  std::uint64_t n_sip = 0;
  std::uint64_t n_spip = 0;

  void add(const Event& e) {
    ++n;
    const bool s = e.alice == SignalOutcome::s;
    const bool i = e.bob == IdlerOutcome::i;
    ++(s ? n_s : n_sp);
    if (i) {
      ++(s ? n_si : n_spi);
    } else {
      ++(s ? n_sip : n_spip);
    }
  }
};

enum class EstimateFlag { ok, empty, unbounded };

inline const char* to_string(EstimateFlag f) {
  switch (f) {
    case EstimateFlag::ok: return "ok";
    case EstimateFlag::empty: return "empty";
    case EstimateFlag::unbounded: return "unbounded";
  }
  return "unknown";
}

/// a / b with the binomial (delta-method) standard error
/// sqrt(a b (a + b)) / b^2.
struct RatioEstimate {
  double value = std::numeric_limits<double>::quiet_NaN();
  double std_error = std::numeric_limits<double>::quiet_NaN();
  EstimateFlag flag = EstimateFlag::empty;

  static RatioEstimate of(std::uint64_t a, std::uint64_t b) {
    RatioEstimate r;
    if (a + b == 0) return r;
    if (b == 0) {
      r.value = r.std_error = std::numeric_limits<double>::infinity();
      r.flag = EstimateFlag::unbounded;
      return r;
    }
    const double fa = static_cast<double>(a);
    const double fb = static_cast<double>(b);
    r.value = fa / fb;
    r.std_error = std::sqrt(fa * fb * (fa + fb)) / (fb * fb);
    r.flag = EstimateFlag::ok;
    return r;
  }
};

struct StratumStatistics {
  std::size_t phi_index = 0;
  double phi = 0.0;
  /// Menu entry, or nullopt for the row pooled over every epsilon.
  std::optional<std::size_t> epsilon_index;
  std::optional<double> epsilon;
  StratumCounts counts;
  RatioEstimate singles;  ///< N_s / N_s'
  RatioEstimate coinc_i;  ///< N_{s,i} / N_{s',i}
  RatioEstimate coinc_ip; ///< N_{s,i'} / N_{s',i'}

  bool empty() const noexcept { return counts.n == 0; }
};

struct RunStatistics {
  ExperimentConfig config;
  /// For each phi point: one row per menu entry, then the pooled row.
  std::vector<StratumStatistics> strata;

  const StratumStatistics& pooled(std::size_t phi_index) const {
    return strata.at(phi_index * (config.epsilon_choices.size() + 1) + config.epsilon_choices.size());
  }
  const StratumStatistics& at(std::size_t phi_index, std::size_t eps_index) const {
    return strata.at(phi_index * (config.epsilon_choices.size() + 1) + eps_index);
  }
};

inline RunStatistics analyze(const EventLog& log) {
  if (log.events.empty()) throw DomainError("cannot analyze an empty event log");
  const auto phis = log.config.phi.points();
  const std::size_t menu = log.config.epsilon_choices.size();
  const std::size_t width = menu + 1;

  RunStatistics out{log.config, std::vector<StratumStatistics>(phis.size() * width)};
  for (std::size_t k = 0; k < phis.size(); ++k) {
    for (std::size_t e = 0; e < width; ++e) {
      auto& st = out.strata[k * width + e];
      st.phi_index = k;
      st.phi = phis[k];
      if (e < menu) {
        st.epsilon_index = e;
        st.epsilon = log.config.epsilon_choices[e];
      }
    }
  }
  for (const auto& ev : log.events) {
    if (ev.phi_index >= phis.size() || ev.epsilon_index >= menu) {
      throw DomainError("event outside the configured grid");
    }
    if (!ev.order.delayed_choice()) {
      throw DomainError("event " + std::to_string(ev.sequence_no) + " violates the causal order");
    }
    out.strata[ev.phi_index * width + ev.epsilon_index].counts.add(ev);
    out.strata[ev.phi_index * width + menu].counts.add(ev);
  }
  for (auto& st : out.strata) {
    const auto& c = st.counts;
    st.singles = RatioEstimate::of(c.n_s, c.n_sp);
    st.coinc_i = RatioEstimate::of(c.n_si, c.n_spi);
    st.coinc_ip = RatioEstimate::of(c.n_sip, c.n_spip);
  }
  return out;
}

inline void write_run_statistics(std::ostream& os, const RunStatistics& stats) {
  os << "# dcsim " << kVersion << " run-statistics " << stats.config.describe() << '\n';
  os << "phi,eps,n,n_s,n_sp,n_si,n_spi,n_sip,n_spip,ratio_singles,stderr_singles,"
        "ratio_coinc_i,stderr_coinc_i,ratio_coinc_ip,stderr_coinc_ip,flag\n";
  for (const auto& st : stats.strata) {
    const auto& c = st.counts;
    os << format_double(st.phi) << ',' << (st.epsilon ? format_double(*st.epsilon) : "all") << ','
       << c.n << ',' << c.n_s << ',' << c.n_sp << ',' << c.n_si << ',' << c.n_spi << ',' << c.n_sip
       << ',' << c.n_spip << ',' << format_double(st.singles.value) << ','
       << format_double(st.singles.std_error) << ',' << format_double(st.coinc_i.value) << ','
       << format_double(st.coinc_i.std_error) << ',' << format_double(st.coinc_ip.value) << ','
       << format_double(st.coinc_ip.std_error) << ',' << (st.empty() ? "empty" : "ok") << '\n';
  }
}

// ---------------------------------------------------------------------------
// Statistical checks against the closed forms
// ---------------------------------------------------------------------------

/// Standardized deviation of an observed split a : b from an expected
/// ratio. The standard error is evaluated at the expected probability
/// p = num / (num + den), on the ratio scale when the expected ratio is
/// finite and on the probability scale at a pole.
inline double ratio_z_score(std::uint64_t a, std::uint64_t b, const closed_form::Ratio& expected) {
  const double m = static_cast<double>(a + b);
  if (m == 0) return 0.0;
  const double p = expected.numerator / (expected.numerator + expected.denominator);
  const double p_hat = static_cast<double>(a) / m;
  const double se_p = std::sqrt(std::max(p * (1.0 - p), 0.0) / m);
  auto z = [](double dev, double se) {
    dev = std::abs(dev);
    if (dev <= 1e-15) return 0.0;
    return se > 0.0 ? dev / se : std::numeric_limits<double>::infinity();
  };
  if (!expected.bounded() || b == 0) return z(p_hat - p, se_p);
  const double r = *expected.value();
  const double r_hat = static_cast<double>(a) / static_cast<double>(b);
  return z(r_hat - r, se_p / ((1.0 - p) * (1.0 - p)));
}

/// Standardized deviation of Alice's pooled singles rate from 1/2.
inline double flatness_z_score(const StratumCounts& c) {
  if (c.n == 0) return 0.0;
  const double n = static_cast<double>(c.n);
  return std::abs(static_cast<double>(c.n_s) / n - 0.5) / std::sqrt(0.25 / n);
}

struct StatCheck {
  std::string name;
  double worst_z = 0.0;
  double limit = 0.0;
  bool passed() const noexcept { return worst_z <= limit; }
};

/// Checks a Monte Carlo run against the analytic rates.
///
/// Entangled kinds: Alice's pooled singles are flat (within flat_sigmas),
/// and each epsilon stratum's N_{s,i}/N_{s',i} follows the eraser ratio
/// (within ratio_sigmas). Separable kind: each stratum's singles ratio
/// follows the single-system ratio.
inline std::vector<StatCheck> check_run(const RunStatistics& stats, double flat_sigmas = 4.0,
                                        double ratio_sigmas = 3.0) {
  const auto& cfg = stats.config;
  const auto phis = cfg.phi.points();
  std::vector<StatCheck> out;
  if (cfg.kind == ExperimentKind::zwm) {
    StatCheck fringe{"singles ratio follows the single-system fringe", 0.0, ratio_sigmas};
    for (std::size_t k = 0; k < phis.size(); ++k) {
      for (std::size_t e = 0; e < cfg.epsilon_choices.size(); ++e) {
        const auto& c = stats.at(k, e).counts;
        const auto expected = closed_form::single_ratio(cfg.epsilon_choices[e], phis[k]);
        fringe.worst_z = std::max(fringe.worst_z, ratio_z_score(c.n_s, c.n_sp, expected));
      }
    }
    out.push_back(fringe);
    return out;
  }
  StatCheck flat{"Alice singles flat at every phi", 0.0, flat_sigmas};
  StatCheck coinc{"per-epsilon coincidence ratio N_si/N_s'i", 0.0, ratio_sigmas};
  for (std::size_t k = 0; k < phis.size(); ++k) {
    flat.worst_z = std::max(flat.worst_z, flatness_z_score(stats.pooled(k).counts));
    for (std::size_t e = 0; e < cfg.epsilon_choices.size(); ++e) {
      const auto& c = stats.at(k, e).counts;
      const auto expected =
          closed_form::eraser_coincidence_ratio({cfg.epsilon_choices[e], cfg.chi, phis[k]});
      coinc.worst_z = std::max(coinc.worst_z, ratio_z_score(c.n_si, c.n_spi, expected));
    }
  }
  out.push_back(flat);
  out.push_back(coinc);
  return out;
}

}  // namespace dcsim
