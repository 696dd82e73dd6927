// SPDX-License-Identifier: MIT
//
// Singular quadrature on S^3: exclusion caps, exact cap moments, and
// Richardson extrapolation across exclusion radii.
//
// All kernels here are functions of the squared chord rho = |z - w|^2.  In
// geodesic angle theta (rho = 4 sin^2(theta/2), shell area 4 pi sin^2
// theta), the complement moments over {rho > eps^2}, theta0 = 2 asin(eps/2),
// are closed-form:
//
//     I1(eps) = int rho^-1  = 2 pi (pi - theta0 - sin theta0)
//     I2(eps) = int rho^-2  = pi (2 cot(theta0/2) + theta0 - pi)
//     A (eps) = int 1       = 2 pi^2 - 2 pi theta0 + pi sin(2 theta0)
//
// By rotation symmetry the matrix moments of the boundary kernels are
// diagonal, with the off-diagonal parts integrating to zero exactly:
//
//     int_{rho>eps^2} S  = (1/(4 pi^2)) (I1 - A/2) I      -> I/4
//     int_{rho>eps^2} T  = int T* = (1/(2 pi^2)) I1 I     -> I
//     int_{rho>eps^2} R  = (4/pi^2) I2 I                  -> (16/pi)/eps - 4 I + O(eps)
//
// An operator value at a node z_i is computed by singularity subtraction,
//
//     op^eps[psi](z_i) = sum_{rho_ij > eps^2} K(z_i,w_j)(psi_j - psi_i) w_j
//                        + psi_i * M(eps),
//
// after which the weak and principal-value kernels are extrapolated to
// eps -> 0 with the model {1, eps, eps^2, eps^3} over four geometric
// exclusion levels (the exact limit moment M(0) replaces the moment term),
// while the finite-part kernel keeps the moment inside the fit and uses
// {1/eps, 1, eps, eps^2}, which drops the divergent 1/eps part — the
// Hadamard finite part.  On constant densities the subtracted sums vanish
// identically and the weak/PV operators are exact.

#pragma once

#include <dbarbie/grids.hpp>

#include <Eigen/Dense>

#include <stdexcept>

namespace dbarbie {

struct QuadratureDiagnosticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Cap moments
// ---------------------------------------------------------------------------

inline double cap_theta0(double eps) {
  if (eps <= 0.0 || eps >= 2.0)
    throw QuadratureDiagnosticError("exclusion radius must lie in (0, 2)");
  return 2.0 * std::asin(0.5 * eps);
}

inline double cap_I1(double eps) {
  const double t = cap_theta0(eps);
  return 2.0 * kPi * (kPi - t - std::sin(t));
}

inline double cap_I2(double eps) {
  const double t = cap_theta0(eps);
  return kPi * (2.0 / std::tan(0.5 * t) + t - kPi);
}

inline double cap_area(double eps) {
  const double t = cap_theta0(eps);
  return 2.0 * kPi * kPi - 2.0 * kPi * t + kPi * std::sin(2.0 * t);
}

inline double moment_weak(double eps) {
  return (cap_I1(eps) - 0.5 * cap_area(eps)) / (4.0 * kPi * kPi);
}
inline double moment_pv(double eps) { return cap_I1(eps) / (2.0 * kPi * kPi); }
inline double moment_fp(double eps) { return 4.0 * cap_I2(eps) / (kPi * kPi); }

inline constexpr double kMomentWeakLimit = 0.25;
inline constexpr double kMomentPvLimit = 1.0;

// ---------------------------------------------------------------------------
// Exclusion levels and extrapolation weights
// ---------------------------------------------------------------------------

struct EpsLevels {
  std::array<double, 4> eps{};  // increasing

  static EpsLevels geometric(double eps_min, double ratio = 2.0) {
    if (!(eps_min > 0.0) || !(ratio > 1.0))
      throw QuadratureDiagnosticError("exclusion levels require eps_min > 0, ratio > 1");
    EpsLevels lv;
    double e = eps_min;
    for (int k = 0; k < 4; ++k, e *= ratio) {
      if (e >= 2.0)
        throw QuadratureDiagnosticError(
            "exclusion level reaches the sphere diameter; refine the grid or "
            "lower eps_min");
      lv.eps[k] = e;
    }
    return lv;
  }

  // Levels tied to the grid: the smallest exclusion cap must contain at
  // least a shell of neighbors, so eps_min is a multiple of the largest
  // nearest-neighbor spacing.  The ratio keeps the top level well below the
  // sphere diameter on the coarse grids used in practice.
  static EpsLevels for_grid(const BoundaryGrid& g, double mult = 1.25,
                            double ratio = 1.5) {
    return geometric(mult * g.max_neighbor_spacing(), ratio);
  }
};

// Weights gamma_k with sum_k gamma_k v(eps_k) = c_0 for the model
// v(eps) = c_0 + c_1 eps + c_2 eps^2 + c_3 eps^3 (weak / principal value) or
// v(eps) = c_{-1}/eps + c_0 + c_1 eps + c_2 eps^2 (finite part).
inline std::array<double, 4> extrapolation_weights(const EpsLevels& lv,
                                                   bool finite_part) {
  Eigen::Matrix4d V;
  for (int k = 0; k < 4; ++k) {
    const double e = lv.eps[k];
    if (finite_part)
      V.col(k) << 1.0 / e, 1.0, e, e * e;
    else
      V.col(k) << 1.0, e, e * e, e * e * e;
  }
  Eigen::Vector4d rhs = Eigen::Vector4d::Zero();
  rhs(finite_part ? 1 : 0) = 1.0;
  const Eigen::Vector4d g = V.fullPivLu().solve(rhs);
  if ((V * g - rhs).norm() > 1e-8)
    throw QuadratureDiagnosticError("degenerate exclusion levels");
  return {g(0), g(1), g(2), g(3)};
}

// Prefix masses: node j at squared distance rho contributes the partial sum
// of gamma over the levels that exclude nothing beyond it, i.e. levels with
// eps_k^2 < rho.
inline double mask_mass(const EpsLevels& lv, const std::array<double, 4>& gamma,
                        double rho_ij) {
  double m = 0.0;
  for (int k = 0; k < 4; ++k)
    if (rho_ij > lv.eps[k] * lv.eps[k]) m += gamma[k];
  return m;
}

}  // namespace dbarbie
