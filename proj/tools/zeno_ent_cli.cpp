// zeno-ent: batch scenarios for two qubits in a common lossy resonator.
//
// Exit codes: 0 success, 2 configuration error, 3 solver tolerance failure, 4 I/O error.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zeno_ent/zeno_ent.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitIo = 4;

constexpr const char* kColumnsHelp = R"(CSV columns by scenario:
  stationary-surface  r1,s,C_s,is_argmax        (is_argmax = 1 on the grid maximum)
  time-evolution      tau,C[r1=..;s=..]...      (one concurrence column per (r1, s))
  zeno-compare        tau,C_unmeasured,C_measured[T=..]...
  solver-xcheck       bigR,s,r1,pair,max_abs_error,tolerance,pass
  optimum             objective,bigR,s,phi,r1,tau,value
Times are tau = lambda t. Numbers are written with 17 significant digits.
Grids accept "x", "x,y,z" or "lo:hi:n". The --config file is TOML/INI style
key = value using either the flag names or the camelCase field names
(bigR, r1, s, phi, tauMax, tauSteps, measIntervals, solver, format, ...).)";

std::vector<double> expand(const std::vector<std::string>& pieces) {
  std::vector<double> out;
  for (const auto& p : pieces) {
    const auto part = zeno_ent::parse_grid(p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace zeno_ent;

  CLI::App app{"Entanglement dynamics of two qubits in a common lossy resonator", "zeno-ent"};
  app.footer(kColumnsHelp);
  app.set_config("--config", "", "Flat key = value config file; flags override its values");

  ScenarioConfig cfg;
  const std::map<std::string, Scenario> scenarios{
      {"stationary-surface", Scenario::StationarySurface},
      {"time-evolution", Scenario::TimeEvolution},
      {"zeno-compare", Scenario::ZenoCompare},
      {"solver-xcheck", Scenario::SolverXcheck},
      {"optimum", Scenario::Optimum}};
  const std::map<std::string, SolverChoice> solvers{{"closed", SolverChoice::Closed},
                                                    {"volterra", SolverChoice::Volterra},
                                                    {"ode", SolverChoice::Ode},
                                                    {"bath", SolverChoice::Bath}};
  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::Csv},
                                                    {"json", OutputFormat::Json}};
  const std::map<std::string, Objective> objectives{{"stationary", Objective::Stationary},
                                                    {"transient", Objective::Transient}};

  std::vector<std::string> bigR, r1, s, intervals;
  app.add_option("scenario", cfg.scenario, "Scenario to run")
      ->required()
      ->transform(CLI::CheckedTransformer(scenarios, CLI::ignore_case));
  app.add_option("--out,--output", cfg.out, "Output file (default: standard output)");
  app.add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--solver", cfg.solver, "closed, volterra, ode or bath")
      ->transform(CLI::CheckedTransformer(solvers, CLI::ignore_case));
  app.add_option("--big-r,--bigR", bigR, "R = alphaT W / lambda (list for solver-xcheck)")
      ->delimiter(',');
  app.add_option("--r1", r1, "Relative coupling r1 of qubit 1, value or grid")->delimiter(',');
  app.add_option("--s", s, "Separability parameter, value or grid")->delimiter(',');
  app.add_option("--phi", cfg.phi, "Relative phase of the initial amplitudes");
  app.add_option("--tau-max,--tauMax", cfg.tauMax, "Final time (lambda t)");
  app.add_option("--tau-steps,--tauSteps", cfg.tauSteps, "Number of output times");
  app.add_option("--meas-interval,--measIntervals", intervals,
                 "Measurement interval(s) lambda T for zeno-compare")
      ->delimiter(',');
  app.add_option("--dt", cfg.dt, "Integration step for numerical solvers (0: reference step)");
  app.add_option("--n-modes,--nModes", cfg.nModes, "Bath modes for the bath solver");
  app.add_option("--freq-window,--freqWindow", cfg.freqWindow,
                 "Half-width K of the sampled band, in units of lambda");
  app.add_flag("--with-bath,--withBath", cfg.withBath, "Include the bath solver in solver-xcheck");
  app.add_option("--objective", cfg.objective, "optimum: stationary or transient")
      ->transform(CLI::CheckedTransformer(objectives, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (!bigR.empty()) cfg.bigR = expand(bigR);
    cfg.r1 = expand(r1);
    cfg.s = expand(s);
    cfg.measIntervals = expand(intervals);
    cfg.validate();

    const Table table = run_scenario(cfg);
    for (const auto& note : table.notes) std::cerr << "note: " << note << '\n';
    if (cfg.out.empty())
      write_table(table, cfg, std::cout);
    else
      write_table_atomic(table, cfg, cfg.out);
    if (!table.passed) {
      std::cerr << "solver cross-check failed: at least one pair exceeds its tolerance\n";
      return kExitTolerance;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return EXIT_SUCCESS;
}
