#pragma once

// Periodic nonselective measurements that tell "excitation still on the qubits"
// apart from "qubits in |00>" without resolving which qubit is excited. Each
// measurement resets the reservoir to vacuum and leaves the single-excitation
// branch unrenormalized.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "zeno_ent/entanglement.hpp"
#include "zeno_ent/model.hpp"

namespace zeno_ent {

/// N measurements spaced by interval T (units of 1/lambda).
struct MeasurementSchedule {
  double interval = 0.1;
  std::size_t count = 1;

  double total_time() const { return interval * double(count); }

  void validate() const {
    detail::require(std::isfinite(interval) && interval > 0.0,
                    "measurement interval must be finite and > 0");
    detail::require(count >= 1, "measurement count must be >= 1");
  }
};

struct ZenoRate {
  double value = 0.0;     // gamma_z(T), units of lambda
  double survival = 1.0;  // E(T)
  bool oscillatory = false;  // E(T) < 0: the closed-form C^(N) loses the sign of E(T)^N

  /// The closed forms in this header agree with the stroboscopic evolution only for E(T) > 0.
  bool closed_form_valid() const { return survival > 0.0; }
};

/// gamma_z(T) = -ln(E(T)^2) / T.
inline ZenoRate zeno_rate(const ReservoirSpec& res, const CouplingSpec& coup, double interval) {
  detail::require(std::isfinite(interval) && interval > 0.0,
                  "measurement interval must be finite and > 0");
  const double e = survival_amplitude(res, coup, interval);
  if (e == 0.0)
    throw DivergentRate(
        "measurement interval coincides with a zero of the survival amplitude; gamma_z divergent");
  const double logSq = e > 0.0 ? 2.0 * std::log1p(-survival_deficit(res, coup, interval))
                               : 2.0 * std::log(-e);
  return ZenoRate{-logSq / interval, e, e < 0.0};
}

/// P+^(N) = |beta+|^2 exp(-gamma_z N T).
inline double survival_probability_measured(const ReservoirSpec& res, const CouplingSpec& coup,
                                            const InitialState& init,
                                            const MeasurementSchedule& sched) {
  sched.validate();
  const ZenoRate rate = zeno_rate(res, coup, sched.interval);
  const BellBasis bell = BellBasis::of(coup, init);
  return std::norm(bell.betaPlus) * std::exp(-rate.value * sched.total_time());
}

/// Concurrence after N measurements at t = N T, from the effective decay rate.
inline double concurrence_measured(const ReservoirSpec& res, const CouplingSpec& coup,
                                   const InitialState& init, const MeasurementSchedule& sched) {
  sched.validate();
  const ZenoRate rate = zeno_rate(res, coup, sched.interval);
  const BellBasis bell = BellBasis::of(coup, init);
  const double factor = std::exp(-0.5 * rate.value * sched.total_time());
  const complex first = bell.betaPlus * coup.r1 * factor + bell.betaMinus * coup.r2;
  const complex second = bell.betaPlus * coup.r2 * factor - bell.betaMinus * coup.r1;
  return 2.0 * std::abs(first * second);
}

struct StroboscopicSample {
  Amplitudes branch;            // single-excitation branch, not renormalized
  double concurrence = 0.0;
  double groundPopulation = 0.0;  // 1 - |c1|^2 - |c2|^2 (photon plus measured |00>)
  std::size_t measurementsDone = 0;
};

struct StroboscopicTrajectory {
  std::vector<StroboscopicSample> samples;
  std::vector<double> groundAtMeasurement;  // ground-branch population right before each measurement
};

namespace detail {

/// Evolves the branch for `elapsed` since the last reset, then projects at each
/// measurement time by re-expanding the branch in the Bell basis.
class StroboscopicEvolution {
public:
  StroboscopicEvolution(const ReservoirSpec& res, const CouplingSpec& coup,
                        const InitialState& init, const MeasurementSchedule& sched)
      : res_(res), coup_(coup), sched_(sched), afterReset_(BellBasis::of(coup, init)) {
    sched_.validate();
  }

  /// State at t; t must not decrease between calls.
  StroboscopicSample at(double t) {
    require(t >= lastTime_, "stroboscopic evolution queried backwards in time");
    lastTime_ = t;
    while (done_ < sched_.count && double(done_ + 1) * sched_.interval <= t) measure();
    const double elapsed = t - double(done_) * sched_.interval;
    const Amplitudes branch = amplitudes_from_overlaps(
        coup_, afterReset_, survival_amplitude(res_, coup_, elapsed), t);
    return StroboscopicSample{branch, concurrence_closed(branch),
                              1.0 - branch.excited_population(), done_};
  }

  const std::vector<double>& ground_at_measurement() const { return groundAtMeasurement_; }

private:
  void measure() {
    const Amplitudes before = amplitudes_from_overlaps(
        coup_, afterReset_, survival_amplitude(res_, coup_, sched_.interval), 0.0);
    groundAtMeasurement_.push_back(1.0 - before.excited_population());
    // reservoir back to vacuum; the surviving branch restarts its own evolution
    afterReset_ = BellBasis::project(coup_, before.c1, before.c2);
    ++done_;
  }

  ReservoirSpec res_;
  CouplingSpec coup_;
  MeasurementSchedule sched_;
  BellBasis afterReset_;
  std::size_t done_ = 0;
  double lastTime_ = 0.0;
  std::vector<double> groundAtMeasurement_;
};

}  // namespace detail

/// Explicit measure-and-reset evolution on [0, N T], sampled `perInterval` times per interval.
inline StroboscopicTrajectory simulate_stroboscopic(const ReservoirSpec& res,
                                                    const CouplingSpec& coup,
                                                    const InitialState& init,
                                                    const MeasurementSchedule& sched,
                                                    std::size_t perInterval = 10) {
  detail::require(perInterval >= 1, "need at least one sample per interval");
  detail::StroboscopicEvolution evo(res, coup, init, sched);
  StroboscopicTrajectory out;
  const std::size_t total = sched.count * perInterval;
  out.samples.reserve(total + 1);
  for (std::size_t i = 0; i <= total; ++i) {
    const std::size_t k = i / perInterval;
    const std::size_t j = i % perInterval;
    const double t =
        double(k) * sched.interval + sched.interval * double(j) / double(perInterval);
    out.samples.push_back(evo.at(t));
  }
  out.groundAtMeasurement = evo.ground_at_measurement();
  return out;
}

/// Stroboscopic state at a single time t <= N T.
inline StroboscopicSample stroboscopic_state_at(const ReservoirSpec& res, const CouplingSpec& coup,
                                                const InitialState& init,
                                                const MeasurementSchedule& sched, double t) {
  detail::require(std::isfinite(t) && t >= 0.0, "time must be finite and >= 0");
  detail::StroboscopicEvolution evo(res, coup, init, sched);
  return evo.at(t);
}

}  // namespace zeno_ent
