#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "zeno_ent/model.hpp"

namespace zeno_ent {

/// Reduced two-qubit state in the ordered basis {|11>, |10>, |01>, |00>}.
struct DensityMatrix4 {
  Eigen::Matrix4cd entries = Eigen::Matrix4cd::Zero();

  double ground_population() const { return entries(3, 3).real(); }

  /// Hermitian to 1e-12, unit trace to 1e-10, eigenvalues >= -1e-10.
  void validate() const {
    detail::require(entries.allFinite(), "density matrix has non-finite entries");
    detail::require((entries - entries.adjoint()).cwiseAbs().maxCoeff() <= 1e-12,
                    "density matrix is not Hermitian");
    detail::require(std::abs(entries.trace() - complex(1.0)) <= 1e-10,
                    "density matrix trace differs from 1");
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(entries, Eigen::EigenvaluesOnly);
    detail::require(eig.eigenvalues().minCoeff() >= -1e-10,
                    "density matrix is not positive semidefinite");
  }
};

namespace detail {

inline void require_physical(const Amplitudes& amps) {
  require(std::isfinite(amps.c1.real()) && std::isfinite(amps.c1.imag()) &&
              std::isfinite(amps.c2.real()) && std::isfinite(amps.c2.imag()),
          "amplitudes must be finite");
  require(amps.excited_population() <= 1.0 + 1e-10, "|c1|^2 + |c2|^2 exceeds 1");
}

}  // namespace detail

inline DensityMatrix4 density_matrix(const Amplitudes& amps) {
  detail::require_physical(amps);
  DensityMatrix4 rho;
  rho.entries(1, 1) = std::norm(amps.c1);
  rho.entries(1, 2) = amps.c1 * std::conj(amps.c2);
  rho.entries(2, 1) = std::conj(amps.c1) * amps.c2;
  rho.entries(2, 2) = std::norm(amps.c2);
  rho.entries(3, 3) = 1.0 - amps.excited_population();
  return rho;
}

/// 2 |c1 c2*|, valid for the single-excitation-plus-ground family.
inline double concurrence_closed(const Amplitudes& amps) {
  detail::require_physical(amps);
  return 2.0 * std::abs(amps.c1 * std::conj(amps.c2));
}

/// Wootters concurrence for an arbitrary two-qubit state.
///
/// With rho = W W^dagger (W = V sqrt(D) from the eigendecomposition), the square roots of the
/// eigenvalues of rho * rho~ are the singular values of W^T (Y (x) Y) W. Working with singular
/// values avoids square-rooting eigenvalues that are zero up to rounding.
inline double concurrence_wootters(const DensityMatrix4& rho) {
  rho.validate();
  Eigen::Matrix2cd sy;
  sy << complex(0.0), complex(0.0, 1.0), complex(0.0, -1.0), complex(0.0);  // basis {|1>, |0>}
  Eigen::Matrix4cd yy;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) yy.block<2, 2>(2 * i, 2 * j) = sy(i, j) * sy;

  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho.entries);
  Eigen::Vector4d weights = eig.eigenvalues();
  const double cutoff = 1e-14 * std::max(1.0, weights.maxCoeff());
  for (int i = 0; i < 4; ++i) weights(i) = weights(i) > cutoff ? std::sqrt(weights(i)) : 0.0;
  const Eigen::Matrix4cd w = eig.eigenvectors() * weights.cast<complex>().asDiagonal();
  const Eigen::Matrix4cd overlaps = w.transpose() * yy * w;

  const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(overlaps);
  const Eigen::Vector4d l = svd.singularValues();  // descending
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

/// Long-time concurrence 2 |r1 r2| |beta-|^2 carried by the decoherence-free component.
inline double stationary_concurrence(const CouplingSpec& coup, const InitialState& init) {
  coup.validate();
  const BellBasis bell = BellBasis::of(coup, init);
  return 2.0 * std::abs(coup.r1 * coup.r2) * std::norm(bell.betaMinus);
}

}  // namespace zeno_ent
