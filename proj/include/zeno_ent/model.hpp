#pragma once

// Two resonant qubits sharing a Lorentzian (single lossy cavity mode) reservoir.
//
// Time convention: every public time argument is dimensionless, tau = lambda * t.
// Frequencies stored in the parameter structs keep their physical units, and
// the dynamics depend on them only through the ratio R = alphaT * W / lambda.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "zeno_ent/error.hpp"

namespace zeno_ent {

using complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;

/// Lorentzian bath: J(w) = (W^2/pi) * lambda / ((w - w0)^2 + lambda^2).
struct ReservoirSpec {
  double W = 1.0;
  double lambda = 1.0;
  double omega0 = 0.0;  // resonance; carried along, unused on resonance

  /// Reservoir with lambda = 1 whose coupling W produces the requested R = alphaT W / lambda.
  static ReservoirSpec for_ratio(double bigR, double alphaT = 1.0, double omega0 = 0.0) {
    detail::require(std::isfinite(bigR) && bigR > 0.0, "R must be finite and > 0");
    detail::require(std::isfinite(alphaT) && alphaT > 0.0, "alphaT must be finite and > 0");
    return ReservoirSpec{bigR / alphaT, 1.0, omega0};
  }

  void validate() const {
    detail::require(std::isfinite(W) && W > 0.0, "reservoir W must be finite and > 0");
    detail::require(std::isfinite(lambda) && lambda > 0.0,
                    "reservoir lambda must be finite and > 0");
    detail::require(std::isfinite(omega0), "reservoir omega0 must be finite");
  }

  double spectral_density(double omega) const {
    const double d = omega - omega0;
    return W * W / std::numbers::pi * lambda / (d * d + lambda * lambda);
  }

  /// f(t) = W^2 exp(-lambda t), t in physical units.
  double correlation(double t) const { return W * W * std::exp(-lambda * t); }
};

/// Per-qubit couplings alpha_j and their normalized form r_j = alpha_j / alphaT.
struct CouplingSpec {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alphaT = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;

  static CouplingSpec from_alphas(double alpha1, double alpha2) {
    detail::require(std::isfinite(alpha1) && std::isfinite(alpha2), "couplings must be finite");
    detail::require(alpha1 >= 0.0 && alpha2 >= 0.0, "couplings must be nonnegative");
    const double total = std::hypot(alpha1, alpha2);
    detail::require(total > 0.0, "at least one coupling must be nonzero");
    return CouplingSpec{alpha1, alpha2, total, alpha1 / total, alpha2 / total};
  }

  /// r2 = sqrt(1 - r1^2); r1 must lie in [0, 1].
  static CouplingSpec from_relative(double alphaT, double r1) {
    detail::require(std::isfinite(alphaT) && alphaT > 0.0, "alphaT must be finite and > 0");
    detail::require(std::isfinite(r1) && r1 >= 0.0 && r1 <= 1.0, "r1 must lie in [0, 1]");
    const double r2 = std::sqrt(std::max(0.0, 1.0 - r1 * r1));
    return CouplingSpec{alphaT * r1, alphaT * r2, alphaT, r1, r2};
  }

  void validate() const {
    detail::require(std::isfinite(alphaT) && alphaT > 0.0, "alphaT must be finite and > 0");
    detail::require(r1 >= 0.0 && r2 >= 0.0, "relative couplings must be nonnegative");
    detail::require(std::abs(r1 * r1 + r2 * r2 - 1.0) <= kNormTolerance,
                    "relative couplings must satisfy r1^2 + r2^2 = 1");
  }
};

/// Derived rates of a (reservoir, coupling) pair.
struct RegimeParams {
  double rabi = 0.0;        // alphaT * W
  double bigR = 0.0;        // rabi / lambda
  double omegaSq = 0.0;     // lambda^2 - 4 rabi^2, negative when underdamped
  double markovRate = 0.0;  // 2 rabi^2 / lambda

  static RegimeParams of(const ReservoirSpec& res, const CouplingSpec& coup) {
    res.validate();
    coup.validate();
    const double rabi = coup.alphaT * res.W;
    return RegimeParams{rabi, rabi / res.lambda, res.lambda * res.lambda - 4.0 * rabi * rabi,
                        2.0 * rabi * rabi / res.lambda};
  }

  bool underdamped() const { return omegaSq < 0.0; }
};

/// Single-excitation initial state c01 |10> + c02 |01>.
struct InitialState {
  complex c01{};
  complex c02{};
  std::optional<double> s;  // set only when built from (s, phi)
  double phi = 0.0;

  /// c01 = sqrt((1-s)/2), c02 = sqrt((1+s)/2) e^{i phi}.
  static InitialState from_separability(double s, double phi) {
    detail::require(std::isfinite(s) && s >= -1.0 && s <= 1.0, "s must lie in [-1, 1]");
    detail::require(std::isfinite(phi), "phi must be finite");
    return InitialState{complex(std::sqrt((1.0 - s) / 2.0), 0.0),
                        std::sqrt((1.0 + s) / 2.0) * std::polar(1.0, phi), s, phi};
  }

  static InitialState from_amplitudes(complex c01, complex c02) {
    detail::require(std::isfinite(c01.real()) && std::isfinite(c01.imag()) &&
                        std::isfinite(c02.real()) && std::isfinite(c02.imag()),
                    "initial amplitudes must be finite");
    detail::require(std::abs(std::norm(c01) + std::norm(c02) - 1.0) <= kNormTolerance,
                    "initial amplitudes must satisfy |c01|^2 + |c02|^2 = 1");
    return InitialState{c01, c02, std::nullopt, std::arg(c02) - std::arg(c01)};
  }
};

/// Overlaps with the sub-radiant psi- = r2|10> - r1|01> and super-radiant psi+ = r1|10> + r2|01>.
struct BellBasis {
  complex betaMinus{};
  complex betaPlus{};

  /// Projects an arbitrary (possibly unnormalized) single-excitation branch.
  static BellBasis project(const CouplingSpec& coup, complex c1, complex c2) {
    return BellBasis{coup.r2 * c1 - coup.r1 * c2, coup.r1 * c1 + coup.r2 * c2};
  }

  static BellBasis of(const CouplingSpec& coup, const InitialState& init) {
    return project(coup, init.c01, init.c02);
  }
};

inline InitialState sub_radiant_state(const CouplingSpec& coup) {
  return InitialState::from_amplitudes(coup.r2, -coup.r1);
}

inline InitialState super_radiant_state(const CouplingSpec& coup) {
  return InitialState::from_amplitudes(coup.r1, coup.r2);
}

/// Qubit amplitudes (c1, c2) at dimensionless time t.
struct Amplitudes {
  complex c1{};
  complex c2{};
  double t = 0.0;

  double excited_population() const { return std::norm(c1) + std::norm(c2); }
};

/// E(tau), the amplitude multiplying the super-radiant component.
///
/// Overdamped (Omega^2 > 0): e^{-tau/2} [cosh(nu tau/2) + sinh(nu tau/2)/nu], nu = Omega/lambda.
/// Underdamped uses the trigonometric continuation and the critical point
/// |Omega^2| < 1e-12 lambda^2 uses e^{-tau/2} (1 + tau/2).
inline double survival_amplitude(const ReservoirSpec& res, const CouplingSpec& coup, double tau) {
  detail::require(std::isfinite(tau), "time must be finite");
  detail::require(tau >= 0.0, "time must be >= 0");
  const RegimeParams regime = RegimeParams::of(res, coup);
  if (tau == 0.0) return 1.0;
  const double nuSq = regime.omegaSq / (res.lambda * res.lambda);
  const double damping = std::exp(-0.5 * tau);
  if (nuSq >= 1e-12) {
    const double nu = std::sqrt(nuSq);
    if (nu > 0.1) {
      // split into decaying exponentials so long times never overflow cosh/sinh
      return 0.5 * ((1.0 + 1.0 / nu) * std::exp(-0.5 * (1.0 - nu) * tau) +
                    (1.0 - 1.0 / nu) * std::exp(-0.5 * (1.0 + nu) * tau));
    }
    return damping * (std::cosh(0.5 * nu * tau) + std::sinh(0.5 * nu * tau) / nu);
  }
  if (nuSq <= -1e-12) {
    const double w = std::sqrt(-nuSq);
    return damping * (std::cos(0.5 * w * tau) + std::sin(0.5 * w * tau) / w);
  }
  return damping * (1.0 + 0.5 * tau);
}

/// 1 - E(tau) without the cancellation of the direct difference at short times, where
/// 1 - E ~ R^2 tau^2 / 2. Uses the Taylor series of E'' + E' + R^2 E = 0 there.
inline double survival_deficit(const ReservoirSpec& res, const CouplingSpec& coup, double tau) {
  const double e = survival_amplitude(res, coup, tau);
  const double bigR = RegimeParams::of(res, coup).bigR;
  if (tau > 0.5 || bigR * tau > 0.5) return 1.0 - e;
  const double r2 = bigR * bigR;
  double a0 = 1.0, a1 = 0.0, power = 1.0, sum = 0.0;
  for (int n = 0; n < 200; ++n) {
    const double a2 = -((n + 1) * a1 + r2 * a0) / double((n + 1) * (n + 2));
    power *= tau;
    const double term = a2 * power * tau;
    sum -= term;
    if (n > 2 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    a0 = a1;
    a1 = a2;
  }
  return sum;
}

/// Rebuilds (c1, c2) from the Bell overlaps after the super-radiant part has been scaled by E.
inline Amplitudes amplitudes_from_overlaps(const CouplingSpec& coup, const BellBasis& bell,
                                           double survival, double t) {
  return Amplitudes{coup.r2 * bell.betaMinus + coup.r1 * survival * bell.betaPlus,
                    -coup.r1 * bell.betaMinus + coup.r2 * survival * bell.betaPlus, t};
}

inline Amplitudes amplitudes_at(const ReservoirSpec& res, const CouplingSpec& coup,
                                const InitialState& init, double tau) {
  const double e = survival_amplitude(res, coup, tau);
  return amplitudes_from_overlaps(coup, BellBasis::of(coup, init), e, tau);
}

}  // namespace zeno_ent
