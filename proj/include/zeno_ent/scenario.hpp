#pragma once

// Batch scenarios behind the zeno-ent command line: each one turns a
// ScenarioConfig into a Table that the report writers serialize.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "zeno_ent/dynamics.hpp"
#include "zeno_ent/entanglement.hpp"
#include "zeno_ent/model.hpp"
#include "zeno_ent/optimize.hpp"
#include "zeno_ent/zeno.hpp"

namespace zeno_ent {

enum class Scenario { StationarySurface, TimeEvolution, ZenoCompare, SolverXcheck, Optimum };
enum class SolverChoice { Closed, Volterra, Ode, Bath };
enum class OutputFormat { Csv, Json };
enum class Objective { Stationary, Transient };

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::StationarySurface: return "stationary-surface";
    case Scenario::TimeEvolution: return "time-evolution";
    case Scenario::ZenoCompare: return "zeno-compare";
    case Scenario::SolverXcheck: return "solver-xcheck";
    case Scenario::Optimum: return "optimum";
  }
  return "?";
}

inline const char* to_string(SolverChoice s) {
  switch (s) {
    case SolverChoice::Closed: return "closed";
    case SolverChoice::Volterra: return "volterra";
    case SolverChoice::Ode: return "ode";
    case SolverChoice::Bath: return "bath";
  }
  return "?";
}

inline const char* to_string(Objective o) {
  return o == Objective::Stationary ? "stationary" : "transient";
}

/// n evenly spaced points on [lo, hi]; n == 1 yields {lo}.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  detail::require(n >= 1, "grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * double(i) / double(n - 1);
  out.back() = hi;
  return out;
}

/// Parses "x", "x,y,z" or the range form "lo:hi:n".
inline std::vector<double> parse_grid(const std::string& text) {
  auto number = [&](const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse number '" + tok + "' in grid '" + text + "'");
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
    detail::require(used == tok.size() && std::isfinite(v),
                    "cannot parse number '" + tok + "' in grid '" + text + "'");
    return v;
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
  };

  detail::require(!text.empty(), "empty grid");
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    detail::require(parts.size() == 3, "range grid must look like lo:hi:n, got '" + text + "'");
    const double n = number(parts[2]);
    detail::require(n >= 1.0 && n == std::floor(n), "range grid count must be a positive integer");
    return linspace(number(parts[0]), number(parts[1]), static_cast<std::size_t>(n));
  }
  std::vector<double> out;
  for (const auto& tok : split(text, ',')) out.push_back(number(tok));
  return out;
}

struct ScenarioConfig {
  Scenario scenario = Scenario::TimeEvolution;
  std::vector<double> bigR{0.1};
  std::vector<double> r1;  // empty: scenario default
  std::vector<double> s;   // empty: scenario default
  double phi = 0.0;
  double tauMax = 10.0;
  std::size_t tauSteps = 2001;
  std::vector<double> measIntervals;
  SolverChoice solver = SolverChoice::Closed;
  std::string out;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;

  double dt = 0.0;  // 0: per-solver reference step
  std::size_t nModes = 2000;
  double freqWindow = 20.0;
  bool withBath = false;
  Objective objective = Objective::Stationary;

  std::vector<double> r1_grid() const {
    if (!r1.empty()) return r1;
    if (scenario == Scenario::StationarySurface) return linspace(0.0, 1.0, 201);
    return {0.0, 1.0 / std::numbers::sqrt2, 0.87, 1.0};
  }

  std::vector<double> s_grid() const {
    if (!s.empty()) return s;
    if (scenario == Scenario::StationarySurface) return linspace(-1.0, 1.0, 201);
    return {1.0, 0.0};
  }

  void validate() const {
    detail::require(!bigR.empty(), "bigR grid is empty");
    for (double R : bigR) detail::require(std::isfinite(R) && R > 0.0, "bigR must be > 0");
    for (double x : r1_grid())
      detail::require(std::isfinite(x) && x >= 0.0 && x <= 1.0, "r1 values must lie in [0, 1]");
    for (double x : s_grid())
      detail::require(std::isfinite(x) && x >= -1.0 && x <= 1.0, "s values must lie in [-1, 1]");
    detail::require(std::isfinite(phi), "phi must be finite");
    detail::require(std::isfinite(tauMax) && tauMax > 0.0, "tauMax must be > 0");
    detail::require(tauSteps >= 2, "tauSteps must be >= 2");
    for (double T : measIntervals)
      detail::require(std::isfinite(T) && T > 0.0, "measurement intervals must be > 0");
    detail::require(dt >= 0.0 && std::isfinite(dt), "dt must be >= 0");
    detail::require(nModes >= 1, "nModes must be >= 1");
    detail::require(freqWindow > 0.0, "freqWindow must be > 0");
    if (scenario == Scenario::ZenoCompare)
      detail::require(!measIntervals.empty(), "zeno-compare needs at least one measurement interval");
    if (scenario != Scenario::SolverXcheck)
      detail::require(bigR.size() == 1, std::string(to_string(scenario)) + " takes a single bigR");
  }
};

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;  // per-schedule problems, solver warnings
  bool passed = true;              // solver-xcheck verdict
};

namespace detail {

inline std::string fmt_label(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace detail

/// Stationary concurrence on the (r1, s) grid at fixed phi; the argmax row is flagged.
inline Table run_stationary_surface(const ScenarioConfig& cfg) {
  detail::require(cfg.scenario == Scenario::StationarySurface, "not a stationary-surface config");
  cfg.validate();
  Table table;
  table.columns = {"r1", "s", "C_s", "is_argmax"};
  std::size_t best = 0;
  double bestValue = -1.0;
  for (double r1 : cfg.r1_grid()) {
    const CouplingSpec coup = CouplingSpec::from_relative(1.0, r1);
    for (double s : cfg.s_grid()) {
      const double cs = stationary_concurrence(coup, InitialState::from_separability(s, cfg.phi));
      if (cs > bestValue) {
        bestValue = cs;
        best = table.rows.size();
      }
      table.rows.push_back({r1, s, cs, 0.0});
    }
  }
  table.rows[best][3] = 1.0;
  return table;
}

/// Reference integration step per solver: fine enough for the cross-check tolerances.
inline double reference_dt(SolverChoice solver, double bigR) {
  switch (solver) {
    case SolverChoice::Volterra:
    case SolverChoice::Ode: return 1e-3 / std::max(1.0, bigR);
    case SolverChoice::Bath: return 1e-3;
    case SolverChoice::Closed: break;
  }
  return 0.0;
}

inline SolverMethod method_of(SolverChoice solver) {
  switch (solver) {
    case SolverChoice::Volterra: return SolverMethod::TrapezoidVolterra;
    case SolverChoice::Ode: return SolverMethod::AuxOdeRk4;
    case SolverChoice::Bath: return SolverMethod::BathRk4;
    case SolverChoice::Closed: break;
  }
  throw InvalidArgument("the closed form is not a numerical solver");
}

/// Amplitudes on linspace(0, tauMax, tauSteps) from the chosen route. Numerical solvers
/// run with a step that divides the output spacing and is no coarser than the requested
/// (or reference) step.
inline std::vector<Amplitudes> amplitude_series(const ScenarioConfig& cfg, double bigR, double r1,
                                                double s, std::vector<std::string>* notes = nullptr) {
  const ReservoirSpec res = ReservoirSpec::for_ratio(bigR);
  const CouplingSpec coup = CouplingSpec::from_relative(1.0, r1);
  const InitialState init = InitialState::from_separability(s, cfg.phi);
  const std::vector<double> taus = linspace(0.0, cfg.tauMax, cfg.tauSteps);
  std::vector<Amplitudes> out;
  out.reserve(taus.size());
  if (cfg.solver == SolverChoice::Closed) {
    for (double tau : taus) out.push_back(amplitudes_at(res, coup, init, tau));
    return out;
  }
  const double spacing = cfg.tauMax / double(cfg.tauSteps - 1);
  if (cfg.dt > 0.0) detail::require_resolved(cfg.dt, bigR);
  const double target = cfg.dt > 0.0 ? cfg.dt : reference_dt(cfg.solver, bigR);
  const auto sub = static_cast<std::size_t>(std::ceil(spacing / target - 1e-9));
  SolverConfig sc;
  sc.method = method_of(cfg.solver);
  sc.dt = spacing / double(sub);
  sc.tMax = cfg.tauMax;
  sc.nModes = cfg.nModes;
  sc.freqWindow = cfg.freqWindow;
  const Trajectory traj = solve(res, coup, init, sc);
  if (notes)
    for (const auto& w : traj.diagnostics.warnings) notes->push_back(w);
  for (std::size_t i = 0; i < taus.size(); ++i) out.push_back(traj.samples[i * sub]);
  return out;
}

/// Concurrence versus tau, one column per (r1, s) pair.
inline Table run_time_evolution(const ScenarioConfig& cfg) {
  detail::require(cfg.scenario == Scenario::TimeEvolution, "not a time-evolution config");
  cfg.validate();
  const double bigR = cfg.bigR.front();
  Table table;
  table.columns = {"tau"};
  const std::vector<double> taus = linspace(0.0, cfg.tauMax, cfg.tauSteps);
  for (double tau : taus) table.rows.push_back({tau});
  for (double r1 : cfg.r1_grid()) {
    for (double s : cfg.s_grid()) {
      table.columns.push_back("C[r1=" + detail::fmt_label(r1) + ";s=" + detail::fmt_label(s) + "]");
      const auto series = amplitude_series(cfg, bigR, r1, s, &table.notes);
      for (std::size_t i = 0; i < series.size(); ++i)
        table.rows[i].push_back(concurrence_closed(series[i]));
    }
  }
  return table;
}

/// Unmeasured concurrence next to the measured one for every interval T. At measurement
/// times with E(T) > 0 the measured column holds C^(N) from the effective rate; elsewhere
/// (between measurements, or E(T) < 0) it holds the explicit measure-and-reset evolution.
inline Table run_zeno_compare(const ScenarioConfig& cfg) {
  detail::require(cfg.scenario == Scenario::ZenoCompare, "not a zeno-compare config");
  cfg.validate();
  const ReservoirSpec res = ReservoirSpec::for_ratio(cfg.bigR.front());
  const CouplingSpec coup = CouplingSpec::from_relative(1.0, cfg.r1_grid().front());
  const InitialState init = InitialState::from_separability(cfg.s_grid().front(), cfg.phi);
  const std::vector<double> taus = linspace(0.0, cfg.tauMax, cfg.tauSteps);

  Table table;
  table.columns = {"tau", "C_unmeasured"};
  for (double tau : taus)
    table.rows.push_back({tau, concurrence_closed(amplitudes_at(res, coup, init, tau))});

  for (double T : cfg.measIntervals) {
    const std::string label = "C_measured[T=" + detail::fmt_label(T) + "]";
    ZenoRate rate;
    try {
      rate = zeno_rate(res, coup, T);
    } catch (const DivergentRate& e) {
      table.notes.push_back(label + ": " + e.what());
      continue;
    }
    if (!rate.closed_form_valid())
      table.notes.push_back(label + ": E(T) < 0, values follow the stroboscopic evolution");
    const auto count = static_cast<std::size_t>(std::ceil(cfg.tauMax / T - 1e-12));
    const MeasurementSchedule sched{T, std::max<std::size_t>(1, count)};
    detail::StroboscopicEvolution evo(res, coup, init, sched);
    table.columns.push_back(label);
    for (std::size_t i = 0; i < taus.size(); ++i) {
      const double tau = taus[i];
      const double k = std::round(tau / T);
      double c = evo.at(tau).concurrence;
      if (k >= 1.0 && rate.closed_form_valid() &&
          std::abs(tau - k * T) <= 1e-12 * std::max(1.0, tau))
        c = concurrence_measured(res, coup, init,
                                 MeasurementSchedule{T, static_cast<std::size_t>(k)});
      table.rows[i].push_back(c);
    }
  }
  return table;
}

struct XcheckTolerances {
  double volterra = 1e-5;
  double ode = 1e-6;
  double volterraVsOde = 1e-4;
  double bath = 1e-3;
};

/// Max |c_j(solver) - c_j(reference)| over the shared grid, both amplitudes.
inline double max_amplitude_error(const std::vector<Amplitudes>& a,
                                  const std::vector<Amplitudes>& b) {
  detail::require(a.size() == b.size(), "series lengths differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max({worst, std::abs(a[i].c1 - b[i].c1), std::abs(a[i].c2 - b[i].c2)});
  return worst;
}

/// Runs the closed form and the numerical solvers on every (bigR, s, r1) combination and
/// reports the worst amplitude mismatch of each pair against its tolerance.
inline Table run_solver_xcheck(const ScenarioConfig& cfg, const XcheckTolerances& tol = {}) {
  detail::require(cfg.scenario == Scenario::SolverXcheck, "not a solver-xcheck config");
  cfg.validate();
  Table table;
  table.columns = {"bigR", "s", "r1", "pair", "max_abs_error", "tolerance", "pass"};
  for (double bigR : cfg.bigR) {
    for (double s : cfg.s_grid()) {
      for (double r1 : cfg.r1_grid()) {
        ScenarioConfig run = cfg;
        run.solver = SolverChoice::Closed;
        const auto closed = amplitude_series(run, bigR, r1, s);
        run.solver = SolverChoice::Volterra;
        const auto volterra = amplitude_series(run, bigR, r1, s);
        run.solver = SolverChoice::Ode;
        const auto ode = amplitude_series(run, bigR, r1, s);

        auto report = [&](const char* pair, double err, double limit) {
          const bool ok = err <= limit;
          table.passed = table.passed && ok;
          table.rows.push_back({bigR, s, r1, std::string(pair), err, limit, ok ? 1.0 : 0.0});
        };
        report("closed-volterra", max_amplitude_error(closed, volterra), tol.volterra);
        report("closed-ode", max_amplitude_error(closed, ode), tol.ode);
        report("volterra-ode", max_amplitude_error(volterra, ode), tol.volterraVsOde);
        if (cfg.withBath) {
          run.solver = SolverChoice::Bath;
          const auto bath = amplitude_series(run, bigR, r1, s, &table.notes);
          report("closed-bath", max_amplitude_error(closed, bath), tol.bath);
        }
      }
    }
  }
  return table;
}

struct Optimum {
  double r1 = 0.0;
  double tau = 0.0;  // transient objective only
  double value = 0.0;
};

/// Stationary: maximize C_s over r1 at fixed (s, phi).
/// Transient: maximize the closed-form C over (r1, tau) in [0,1] x [0, tauMax] at fixed R, s, phi.
inline Optimum find_optimum(Objective objective, const ScenarioConfig& cfg) {
  cfg.validate();
  const double s = cfg.s_grid().front();
  const InitialState init = InitialState::from_separability(s, cfg.phi);
  if (objective == Objective::Stationary) {
    auto cs = [&](double r1) {
      return stationary_concurrence(CouplingSpec::from_relative(1.0, r1), init);
    };
    const auto best = opt::maximize_1d(cs, 0.0, 1.0, 201, 1e-5);
    return Optimum{best.x, 0.0, best.value};
  }
  const ReservoirSpec res = ReservoirSpec::for_ratio(cfg.bigR.front());
  auto c = [&](double r1, double tau) {
    return concurrence_closed(amplitudes_at(res, CouplingSpec::from_relative(1.0, r1), init, tau));
  };
  const auto best = opt::maximize_2d(c, opt::Box2D{{0.0, 0.0}, {1.0, cfg.tauMax}}, 201, 1e-5);
  return Optimum{best.x[0], best.x[1], best.value};
}

inline Table run_optimum(const ScenarioConfig& cfg) {
  detail::require(cfg.scenario == Scenario::Optimum, "not an optimum config");
  const Optimum best = find_optimum(cfg.objective, cfg);
  Table table;
  table.columns = {"objective", "bigR", "s", "phi", "r1", "tau", "value"};
  table.rows.push_back({std::string(to_string(cfg.objective)), cfg.bigR.front(),
                        cfg.s_grid().front(), cfg.phi, best.r1, best.tau, best.value});
  return table;
}

inline Table run_scenario(const ScenarioConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::StationarySurface: return run_stationary_surface(cfg);
    case Scenario::TimeEvolution: return run_time_evolution(cfg);
    case Scenario::ZenoCompare: return run_zeno_compare(cfg);
    case Scenario::SolverXcheck: return run_solver_xcheck(cfg);
    case Scenario::Optimum: return run_optimum(cfg);
  }
  throw InvalidArgument("unknown scenario");
}

}  // namespace zeno_ent
