#pragma once

// Numerical routes to the qubit amplitudes that do not use the closed-form
// survival amplitude: the memory-kernel (Volterra) form, its exact reduction to
// an auxiliary ODE for the exponential kernel, and a brute-force discretized bath.
//
// All times and rates are in units of 1/lambda and lambda respectively.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "zeno_ent/model.hpp"

namespace zeno_ent {

enum class SolverMethod { TrapezoidVolterra, AuxOdeRk4, BathRk4 };

inline const char* to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::TrapezoidVolterra: return "trapezoid-volterra";
    case SolverMethod::AuxOdeRk4: return "aux-ode-rk4";
    case SolverMethod::BathRk4: return "bath-rk4";
  }
  return "?";
}

/// Memory kernel of the integro-differential equations, in dimensionless form
/// k(u) = f(u / lambda) / lambda^2 with u = lambda * t.
struct KernelSpec {
  enum class Kind { Exponential, Tabulated };

  Kind kind = Kind::Exponential;
  double Wsq = 1.0;     // exponential: W^2
  double lambda = 1.0;  // exponential: lambda
  std::vector<double> samples;  // tabulated: k(i * sampleStep), already dimensionless
  double sampleStep = 0.0;

  static KernelSpec exponential(double Wsq, double lambda) {
    KernelSpec k;
    k.kind = Kind::Exponential;
    k.Wsq = Wsq;
    k.lambda = lambda;
    k.validate();
    return k;
  }

  static KernelSpec lorentzian(const ReservoirSpec& res) {
    res.validate();
    return exponential(res.W * res.W, res.lambda);
  }

  /// Uniformly sampled kernel; values between samples are interpolated linearly.
  static KernelSpec tabulated(std::vector<double> samples, double step) {
    KernelSpec k;
    k.kind = Kind::Tabulated;
    k.samples = std::move(samples);
    k.sampleStep = step;
    k.validate();
    return k;
  }

  void validate() const {
    if (kind == Kind::Exponential) {
      detail::require(std::isfinite(Wsq) && Wsq > 0.0, "kernel W^2 must be finite and > 0");
      detail::require(std::isfinite(lambda) && lambda > 0.0,
                      "kernel lambda must be finite and > 0");
      return;
    }
    detail::require(samples.size() >= 2, "tabulated kernel needs at least two samples");
    detail::require(std::isfinite(sampleStep) && sampleStep > 0.0,
                    "tabulated kernel step must be finite and > 0");
    for (double v : samples) detail::require(std::isfinite(v), "non-finite kernel value");
  }

  double operator()(double u) const {
    if (kind == Kind::Exponential) return Wsq / (lambda * lambda) * std::exp(-u);
    const double x = u / sampleStep;
    const auto i = static_cast<std::size_t>(x);
    detail::require(i + 1 < samples.size() || (i + 1 == samples.size() && x == double(i)),
                    "tabulated kernel does not cover the requested lag");
    if (i + 1 == samples.size()) return samples.back();
    const double w = x - double(i);
    return (1.0 - w) * samples[i] + w * samples[i + 1];
  }
};

/// One discretized reservoir mode (physical units).
struct BathMode {
  double omega = 0.0;     // omega_k
  double coupling = 0.0;  // g_k, with g_k^2 = J(omega_k) * delta_omega
  double detuning = 0.0;  // omega0 - omega_k
};

/// nModes midpoints on [omega0 - K lambda, omega0 + K lambda] weighted by the Lorentzian.
inline std::vector<BathMode> lorentzian_modes(const ReservoirSpec& res, std::size_t nModes,
                                              double window) {
  res.validate();
  detail::require(nModes >= 1, "bath needs at least one mode");
  detail::require(std::isfinite(window) && window > 0.0, "frequency window must be > 0");
  const double spacing = 2.0 * window * res.lambda / double(nModes);
  std::vector<BathMode> modes(nModes);
  for (std::size_t k = 0; k < nModes; ++k) {
    const double omega = res.omega0 - window * res.lambda + (double(k) + 0.5) * spacing;
    modes[k] = BathMode{omega, std::sqrt(res.spectral_density(omega) * spacing),
                        res.omega0 - omega};
  }
  return modes;
}

struct SolverConfig {
  double dt = 1e-3;
  double tMax = 10.0;
  SolverMethod method = SolverMethod::TrapezoidVolterra;
  std::size_t nModes = 2000;
  double freqWindow = 20.0;
  std::uint64_t seed = 0;  // reserved; mode placement is deterministic

  void validate() const {
    detail::require(std::isfinite(dt) && dt > 0.0, "dt must be finite and > 0");
    detail::require(std::isfinite(tMax) && tMax > 0.0, "tMax must be finite and > 0");
    detail::require(nModes >= 1, "nModes must be >= 1");
    detail::require(std::isfinite(freqWindow) && freqWindow > 0.0, "freqWindow must be > 0");
  }

  /// Number of steps; tMax has to be a whole multiple of dt.
  std::size_t steps() const {
    const double n = std::round(tMax / dt);
    detail::require(n >= 1.0 && std::abs(n * dt - tMax) <= 1e-9 * tMax,
                    "tMax must be an integer multiple of dt");
    return static_cast<std::size_t>(n);
  }
};

struct SolverDiagnostics {
  std::vector<std::string> warnings;
  double validityHorizon = std::numeric_limits<double>::infinity();
  double maxNormDrift = 0.0;  // bath solver: max |1 - total excitation|
};

/// Amplitudes on the grid {0, dt, ..., tMax}.
struct Trajectory {
  std::vector<Amplitudes> samples;
  SolverDiagnostics diagnostics;
};

namespace detail {

inline void require_method(const SolverConfig& cfg, SolverMethod expected) {
  require(cfg.method == expected,
          std::string("solver configured for ") + to_string(cfg.method) + ", expected " +
              to_string(expected));
}

/// dt must stay below 1/(2 max(1, R)) in lambda units.
inline void require_resolved(double dt, double bigR) {
  const double limit = 1.0 / (2.0 * std::max(1.0, bigR));
  if (!(dt < limit))
    throw UnderResolved("dt = " + std::to_string(dt) + " under-resolves the dynamics (need dt < " +
                        std::to_string(limit) + ")");
}

}  // namespace detail

/// Predictor-corrector integration of
///   dc_j/du = -alpha_j * integral_0^u k(u - v) [alpha1 c1(v) + alpha2 c2(v)] dv
/// with trapezoidal quadrature of the memory integral and trapezoidal time stepping.
/// The exponential kernel reuses the previous quadrature sum (same weights, O(n) total);
/// tabulated kernels are summed directly (O(n^2)).
inline Trajectory solve_volterra(const KernelSpec& kernel, const CouplingSpec& coup,
                                 const InitialState& init, const SolverConfig& cfg) {
  detail::require_method(cfg, SolverMethod::TrapezoidVolterra);
  cfg.validate();
  kernel.validate();
  coup.validate();
  const std::size_t n = cfg.steps();
  const double h = cfg.dt;
  const double k0 = kernel(0.0);
  detail::require(std::isfinite(k0), "non-finite kernel value");
  detail::require_resolved(h, coup.alphaT * std::sqrt(std::abs(k0)));

  const bool exponential = kernel.kind == KernelSpec::Kind::Exponential;
  std::vector<double> lagged;
  if (!exponential) {
    lagged.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      lagged[j] = kernel(double(j) * h);
      detail::require(std::isfinite(lagged[j]), "non-finite kernel value");
    }
  }
  const double decay = exponential ? std::exp(-h) : 0.0;

  const double a1 = coup.alpha1;
  const double a2 = coup.alpha2;
  std::vector<complex> g(n + 1);  // alpha . c at each grid point
  std::vector<complex> memory(n + 1);

  Trajectory out;
  out.samples.reserve(n + 1);
  out.samples.push_back(Amplitudes{init.c01, init.c02, 0.0});
  g[0] = a1 * init.c01 + a2 * init.c02;
  memory[0] = 0.0;

  complex history = 0.0;  // exponential kernel: sum_{m<n} w_m e^{-(n-m)h} g_m
  for (std::size_t step = 1; step <= n; ++step) {
    // quadrature over the already known points 0..step-1
    complex known;
    if (exponential) {
      history = decay * (history + (step == 1 ? 0.5 : 1.0) * g[step - 1]);
      known = k0 * h * history;
    } else {
      known = 0.5 * h * lagged[step] * g[0];
      for (std::size_t m = 1; m < step; ++m) known += h * lagged[step - m] * g[m];
    }

    const Amplitudes& prev = out.samples.back();
    // Euler predictor, then three trapezoidal corrector sweeps
    complex c1 = prev.c1 - h * a1 * memory[step - 1];
    complex c2 = prev.c2 - h * a2 * memory[step - 1];
    complex mem;
    for (int sweep = 0; sweep < 3; ++sweep) {
      mem = known + 0.5 * h * k0 * (a1 * c1 + a2 * c2);
      c1 = prev.c1 - 0.5 * h * a1 * (memory[step - 1] + mem);
      c2 = prev.c2 - 0.5 * h * a2 * (memory[step - 1] + mem);
    }
    g[step] = a1 * c1 + a2 * c2;
    memory[step] = known + 0.5 * h * k0 * g[step];
    out.samples.push_back(Amplitudes{c1, c2, double(step) * h});
  }
  return out;
}

namespace detail {

template <class State, class Rhs>
void rk4_step(State& y, double h, Rhs&& rhs) {
  const State k1 = rhs(y);
  const State k2 = rhs(State(y + 0.5 * h * k1));
  const State k3 = rhs(State(y + 0.5 * h * k2));
  const State k4 = rhs(State(y + h * k3));
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

/// Exponential kernel only: z(u) = integral k(u-v) (alpha . c)(v) dv obeys
/// dz/du = -z + (W^2/lambda^2)(alpha . c), and dc_j/du = -alpha_j z. Classic RK4.
inline Trajectory solve_aux_ode(const KernelSpec& kernel, const CouplingSpec& coup,
                                const InitialState& init, const SolverConfig& cfg) {
  detail::require_method(cfg, SolverMethod::AuxOdeRk4);
  cfg.validate();
  kernel.validate();
  coup.validate();
  detail::require(kernel.kind == KernelSpec::Kind::Exponential,
                  "auxiliary-ODE reduction needs an exponential kernel");
  const std::size_t n = cfg.steps();
  const double strength = kernel(0.0);
  detail::require_resolved(cfg.dt, coup.alphaT * std::sqrt(strength));

  const double a1 = coup.alpha1;
  const double a2 = coup.alpha2;
  auto rhs = [&](const Eigen::Vector3cd& y) {
    return Eigen::Vector3cd(-a1 * y(2), -a2 * y(2),
                            -y(2) + strength * (a1 * y(0) + a2 * y(1)));
  };

  Eigen::Vector3cd y(init.c01, init.c02, complex(0.0));
  Trajectory out;
  out.samples.reserve(n + 1);
  out.samples.push_back(Amplitudes{y(0), y(1), 0.0});
  for (std::size_t step = 1; step <= n; ++step) {
    detail::rk4_step(y, cfg.dt, rhs);
    out.samples.push_back(Amplitudes{y(0), y(1), double(step) * cfg.dt});
  }
  return out;
}

/// RK4 on the full single-excitation sector: two qubit amplitudes plus one amplitude per
/// bath mode, written in the frame where each mode carries its own detuning phase.
/// Reports the recurrence time 2 pi / delta_omega as the validity horizon.
inline Trajectory solve_discretized_bath(const ReservoirSpec& res, const CouplingSpec& coup,
                                         const InitialState& init, const SolverConfig& cfg) {
  detail::require_method(cfg, SolverMethod::BathRk4);
  cfg.validate();
  coup.validate();
  const std::size_t n = cfg.steps();
  const RegimeParams regime = RegimeParams::of(res, coup);
  detail::require_resolved(cfg.dt, regime.bigR);
  detail::require(cfg.dt * cfg.freqWindow <= 1.0,
                  "dt too large for the sampled frequency window (need dt * K <= 1)");

  const std::vector<BathMode> modes = lorentzian_modes(res, cfg.nModes, cfg.freqWindow);
  const auto m = static_cast<Eigen::Index>(modes.size());
  const complex I(0.0, 1.0);
  Eigen::ArrayXcd rotation(m);  // -i (omega_k - omega0) / lambda
  Eigen::ArrayXcd g(m);         // g_k / lambda
  for (Eigen::Index k = 0; k < m; ++k) {
    rotation(k) = I * modes[std::size_t(k)].detuning / res.lambda;
    g(k) = modes[std::size_t(k)].coupling / res.lambda;
  }
  const Eigen::ArrayXcd gI = -I * g;

  const double a1 = coup.alpha1;
  const double a2 = coup.alpha2;
  auto rhs = [&](const Eigen::VectorXcd& y) {
    Eigen::VectorXcd dy(y.size());
    const auto b = y.tail(m).array();
    const complex field = (g * b).sum();
    const complex source = a1 * y(0) + a2 * y(1);
    dy(0) = -I * a1 * field;
    dy(1) = -I * a2 * field;
    dy.tail(m).array() = rotation * b + gI * source;
    return dy;
  };

  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(m + 2);
  y(0) = init.c01;
  y(1) = init.c02;

  Trajectory out;
  out.samples.reserve(n + 1);
  out.samples.push_back(Amplitudes{y(0), y(1), 0.0});
  const double spacing = 2.0 * cfg.freqWindow / double(cfg.nModes);
  const double recurrence = 2.0 * std::numbers::pi / spacing;
  if (recurrence < cfg.tMax) {
    out.diagnostics.validityHorizon = recurrence;
    out.diagnostics.warnings.push_back("bath recurrence time " + std::to_string(recurrence) +
                                       " is shorter than tMax; later samples are unphysical");
  }
  for (std::size_t step = 1; step <= n; ++step) {
    detail::rk4_step(y, cfg.dt, rhs);
    out.diagnostics.maxNormDrift =
        std::max(out.diagnostics.maxNormDrift, std::abs(1.0 - y.squaredNorm()));
    out.samples.push_back(Amplitudes{y(0), y(1), double(step) * cfg.dt});
  }
  return out;
}

/// Runs the solver named by cfg.method on a Lorentzian reservoir.
inline Trajectory solve(const ReservoirSpec& res, const CouplingSpec& coup,
                        const InitialState& init, const SolverConfig& cfg) {
  switch (cfg.method) {
    case SolverMethod::TrapezoidVolterra:
      return solve_volterra(KernelSpec::lorentzian(res), coup, init, cfg);
    case SolverMethod::AuxOdeRk4:
      return solve_aux_ode(KernelSpec::lorentzian(res), coup, init, cfg);
    case SolverMethod::BathRk4:
      return solve_discretized_bath(res, coup, init, cfg);
  }
  throw InvalidArgument("unknown solver method");
}

}  // namespace zeno_ent
