#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zeno_ent/model.hpp"

using namespace zeno_ent;
using zeno_ent::testing::survival_series;

namespace {

struct Setup {
  ReservoirSpec res;
  CouplingSpec coup;
};

Setup with_ratio(double bigR, double r1 = 1.0 / std::numbers::sqrt2) {
  return {ReservoirSpec::for_ratio(bigR), CouplingSpec::from_relative(1.0, r1)};
}

// reservoir whose omegaSq = lambda^2 (1 - 4 R^2) hits the requested value exactly-ish
Setup with_nu_sq(double nuSq) { return with_ratio(std::sqrt((1.0 - nuSq) / 4.0)); }

}  // namespace

TEST(ReservoirSpec, RejectsNonPositiveParameters) {
  EXPECT_THROW((ReservoirSpec{0.0, 1.0, 0.0}).validate(), InvalidArgument);
  EXPECT_THROW((ReservoirSpec{1.0, -1.0, 0.0}).validate(), InvalidArgument);
  EXPECT_THROW((ReservoirSpec{NAN, 1.0, 0.0}).validate(), InvalidArgument);
  EXPECT_THROW(ReservoirSpec::for_ratio(0.0), InvalidArgument);
}

TEST(ReservoirSpec, KernelIsPositiveAndDecreasing) {
  const ReservoirSpec res{2.0, 0.5, 3.0};
  EXPECT_DOUBLE_EQ(res.correlation(0.0), 4.0);
  double prev = res.correlation(0.0);
  for (int i = 1; i < 100; ++i) {
    const double f = res.correlation(0.1 * i);
    EXPECT_GT(f, 0.0);
    EXPECT_LT(f, prev);
    prev = f;
  }
  // Lorentzian peak at omega0 with height W^2 / (pi lambda)
  EXPECT_NEAR(res.spectral_density(3.0), 4.0 / (std::numbers::pi * 0.5), 1e-14);
}

TEST(CouplingSpec, NormalizedStrengths) {
  const auto c = CouplingSpec::from_alphas(3.0, 4.0);
  EXPECT_DOUBLE_EQ(c.alphaT, 5.0);
  EXPECT_DOUBLE_EQ(c.r1, 0.6);
  EXPECT_DOUBLE_EQ(c.r2, 0.8);
  const auto d = CouplingSpec::from_relative(2.0, 0.0);
  EXPECT_DOUBLE_EQ(d.r2, 1.0);
  EXPECT_DOUBLE_EQ(d.alpha2, 2.0);
  EXPECT_THROW(CouplingSpec::from_relative(1.0, 1.5), InvalidArgument);
  EXPECT_THROW(CouplingSpec::from_relative(1.0, -0.1), InvalidArgument);
  EXPECT_THROW(CouplingSpec::from_alphas(-1.0, 1.0), InvalidArgument);
  EXPECT_THROW(CouplingSpec::from_alphas(0.0, 0.0), InvalidArgument);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto r = CouplingSpec::from_relative(0.1 + 5 * u(rng), u(rng));
    EXPECT_NEAR(r.r1 * r.r1 + r.r2 * r.r2, 1.0, 1e-12);
    EXPECT_GE(r.r2, 0.0);
  }
}

TEST(RegimeParams, UnderdampedIffBigRAboveHalf) {
  for (double R : {0.05, 0.1, 0.49, 0.51, 1.0, 10.0}) {
    const auto s = with_ratio(R);
    const auto p = RegimeParams::of(s.res, s.coup);
    EXPECT_NEAR(p.bigR, R, 1e-14);
    EXPECT_EQ(p.underdamped(), R > 0.5);
    EXPECT_NEAR(p.markovRate, 2 * R * R, 1e-13);
    EXPECT_GT(p.markovRate, 0.0);
  }
}

TEST(InitialState, SeparabilityParametrization) {
  const auto a = InitialState::from_separability(1.0, 0.0);
  EXPECT_EQ(a.c01, complex(0.0));
  EXPECT_EQ(a.c02, complex(1.0));
  const auto b = InitialState::from_separability(0.0, std::numbers::pi);
  EXPECT_NEAR(b.c02.real(), -1.0 / std::numbers::sqrt2, 1e-15);
  EXPECT_THROW(InitialState::from_separability(1.5, 0.0), InvalidArgument);
  EXPECT_THROW(InitialState::from_amplitudes(1.0, 1.0), InvalidArgument);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto st = InitialState::from_separability(u(rng), 4 * u(rng));
    EXPECT_NEAR(std::norm(st.c01) + std::norm(st.c02), 1.0, 1e-12);
  }
}

TEST(BellBasis, OverlapsAreOrthogonalDecomposition) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto coup = CouplingSpec::from_relative(1.0, u(rng));
    const auto init = InitialState::from_separability(2 * u(rng) - 1, 6 * u(rng));
    const auto bell = BellBasis::of(coup, init);
    EXPECT_NEAR(std::norm(bell.betaMinus) + std::norm(bell.betaPlus), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(bell.betaPlus - (coup.r1 * init.c01 + coup.r2 * init.c02)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(bell.betaMinus - (coup.r2 * init.c01 - coup.r1 * init.c02)), 0.0, 1e-15);
  }
  const auto coup = CouplingSpec::from_relative(1.0, 0.3);
  EXPECT_NEAR(std::abs(BellBasis::of(coup, sub_radiant_state(coup)).betaPlus), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(BellBasis::of(coup, super_radiant_state(coup)).betaMinus), 0.0, 1e-15);
}

TEST(SurvivalAmplitude, StartsAtOne) {
  for (double R : {0.05, 0.1, 0.5, 2.0, 10.0}) {
    const auto s = with_ratio(R);
    EXPECT_DOUBLE_EQ(survival_amplitude(s.res, s.coup, 0.0), 1.0);
  }
}

TEST(SurvivalAmplitude, CriticalDampingValue) {
  // Omega = 0 exactly at R = 1/2; expected 2/e from the degenerate limit
  const auto s = with_ratio(0.5);
  EXPECT_NEAR(survival_amplitude(s.res, s.coup, 2.0), 2.0 * std::exp(-1.0), 1e-15);
  // both non-degenerate branches just off the boundary agree with it
  for (double nuSq : {1e-8, -1e-8}) {
    const auto t = with_nu_sq(nuSq);
    EXPECT_NEAR(survival_amplitude(t.res, t.coup, 2.0), 0.7357588823428846, 1e-8);
  }
}

TEST(SurvivalAmplitude, StrongCouplingValue) {
  // high-precision series value -0.85358116885043511 (quoted as about -0.856)
  const auto s = with_ratio(10.0);
  EXPECT_NEAR(survival_amplitude(s.res, s.coup, 0.31), -0.85358116885043511, 1e-12);
  EXPECT_NEAR(survival_amplitude(s.res, s.coup, 0.31), -0.856, 5e-3);
}

TEST(SurvivalAmplitude, MatchesSeriesOracleInAllRegimes) {
  for (double R : {0.05, 0.1, 0.3, 0.5, 0.7, 2.0, 10.0}) {
    const auto s = with_ratio(R);
    for (double tau = 0.0; tau <= 2.0; tau += 0.05)
      EXPECT_NEAR(survival_amplitude(s.res, s.coup, tau), survival_series(R, tau), 1e-10)
          << "R=" << R << " tau=" << tau;
  }
}

TEST(SurvivalAmplitude, MarkovAsymptotics) {
  const auto s = with_ratio(0.1);
  const double gamma = 2 * 0.1 * 0.1;
  for (double tau = 10.0; tau <= 50.0; tau += 1.0) {
    const double markov = std::exp(-0.5 * gamma * tau);
    EXPECT_LT(std::abs(survival_amplitude(s.res, s.coup, tau) / markov - 1.0), 0.02) << tau;
  }
}

TEST(SurvivalAmplitude, FlatAtOrigin) {
  for (double R : {0.05, 0.1, 0.5, 3.0, 10.0}) {
    const auto s = with_ratio(R);
    auto e = [&](double t) { return survival_amplitude(s.res, s.coup, t); };
    const double h = 1e-6;
    // second-order one-sided difference, since E is only defined for t >= 0
    EXPECT_NEAR((-3.0 * e(0.0) + 4.0 * e(h) - e(2.0 * h)) / (2.0 * h), 0.0, 1e-6) << R;
  }
}

TEST(SurvivalAmplitude, BoundedByOne) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> logR(-2.0, 1.5);
  std::uniform_real_distribution<double> tau(0.0, 60.0);
  for (int i = 0; i < 10000; ++i) {
    const auto s = with_ratio(std::pow(10.0, logR(rng)));
    EXPECT_LE(std::abs(survival_amplitude(s.res, s.coup, tau(rng))), 1.0 + 1e-15);
  }
}

TEST(SurvivalAmplitude, ContinuousAcrossCriticalDamping) {
  for (double tau : {0.1, 1.0, 3.0, 10.0, 40.0}) {
    const auto over = with_nu_sq(1e-10);
    const auto under = with_nu_sq(-1e-10);
    const auto crit = with_ratio(0.5);
    const double eo = survival_amplitude(over.res, over.coup, tau);
    const double eu = survival_amplitude(under.res, under.coup, tau);
    EXPECT_NEAR(eo, eu, 1e-6);
    EXPECT_NEAR(eo, survival_amplitude(crit.res, crit.coup, tau), 1e-6);
  }
}

TEST(SurvivalAmplitude, RejectsBadTime) {
  const auto s = with_ratio(1.0);
  EXPECT_THROW(survival_amplitude(s.res, s.coup, -0.1), InvalidArgument);
  EXPECT_THROW(survival_amplitude(s.res, s.coup, NAN), InvalidArgument);
  EXPECT_THROW(survival_amplitude(ReservoirSpec{INFINITY, 1.0, 0.0}, s.coup, 1.0),
               InvalidArgument);
}

TEST(AmplitudesAt, InitialValueIsInitialState) {
  const auto s = with_ratio(3.0, 0.4);
  const auto init = InitialState::from_separability(0.3, 1.1);
  const auto a = amplitudes_at(s.res, s.coup, init, 0.0);
  EXPECT_NEAR(std::abs(a.c1 - init.c01), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a.c2 - init.c02), 0.0, 1e-15);
}

TEST(AmplitudesAt, SubRadiantStateIsFrozen) {
  for (double R : {0.1, 10.0}) {
    const auto s = with_ratio(R, 0.6);
    const auto init = sub_radiant_state(s.coup);
    for (double tau : {0.0, 0.3, 5.0, 100.0}) {
      const auto a = amplitudes_at(s.res, s.coup, init, tau);
      EXPECT_NEAR(std::abs(a.c1 - s.coup.r2), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(a.c2 + s.coup.r1), 0.0, 1e-15);
    }
  }
}

TEST(AmplitudesAt, ProductStateLongTimeLimit) {
  const double r1 = std::sqrt(3.0) / 2.0;
  const auto s = with_ratio(0.1, r1);
  const auto init = InitialState::from_separability(1.0, 0.0);
  for (double tau : {0.5, 3.0, 20.0}) {
    const double e = survival_amplitude(s.res, s.coup, tau);
    const auto a = amplitudes_at(s.res, s.coup, init, tau);
    EXPECT_NEAR(std::abs(a.c1 - r1 * s.coup.r2 * (e - 1.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a.c2 - (r1 * r1 + s.coup.r2 * s.coup.r2 * e)), 0.0, 1e-15);
  }
  // E(tau) ~ e^{-0.01 tau}: tau = 5000 leaves it far below 1e-12
  const auto late = amplitudes_at(s.res, s.coup, init, 5000.0);
  EXPECT_NEAR(late.c1.real(), -std::sqrt(3.0) / 4.0, 1e-12);
  EXPECT_NEAR(late.c2.real(), 0.75, 1e-12);
}

TEST(AmplitudesAt, NormDecomposition) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const auto s = with_ratio(std::pow(10.0, -2.0 + 3.5 * u(rng)), u(rng));
    const auto init = InitialState::from_separability(2 * u(rng) - 1, 6.3 * u(rng));
    const double tau = 30 * u(rng);
    const auto a = amplitudes_at(s.res, s.coup, init, tau);
    const auto bell = BellBasis::of(s.coup, init);
    const double e = survival_amplitude(s.res, s.coup, tau);
    EXPECT_NEAR(a.excited_population(),
                std::norm(bell.betaMinus) + std::norm(bell.betaPlus) * e * e, 1e-12);
    EXPECT_LE(a.excited_population(), 1.0 + 1e-10);
  }
}
