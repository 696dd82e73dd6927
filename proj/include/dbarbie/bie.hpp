// SPDX-License-Identifier: MIT
//
// Boundary integral operators on S^3 and the reduced system.
//
// Five operator kinds act on pairs of frame coefficients.  The weak kernel S
// and the principal-value kernels T, T* use singularity subtraction with the
// exact limit moment (S -> 1/4, T and T* -> 1); the printed hypersingular
// kernel R is evaluated as a Hadamard finite part with its divergent moment
// kept inside the extrapolation; the system slot carries the conormal of the
// double layer kernel, which on the unit ball vanishes identically in the
// interior, so its exclusion-limit moment is zero.
//
// With the interior-limit jump relations
//
//     gamma SL[phi] = -S phi,          2 gamma DL[psi] = psi - T psi,
//     2 B SL[phi]   = -phi - T* phi,   B DL[psi]       = R_sys psi  (= 0 here),
//
// the traces of the Green representation u = G f + DL[gamma u] - SL[B u]
// give the boundary system for the reduction: with the admissible traces
// gamma u = (psi_1, 0) and B u = (0, phi_2),
//
//     (1/2)(psi_1, 0) + (1/2) T (psi_1, 0) - S (0, phi_2)      = gamma G f
//     (1/2)(0, phi_2) - (1/2) T* (0, phi_2) - R_sys (psi_1, 0) = B G f .
//
// Discretized at the quadrature nodes this is a 4N x 2N complex least-squares
// problem in the interleaved unknowns (psi_1(z_j), phi_2(z_j)).

#pragma once

#include <dbarbie/kernels.hpp>
#include <dbarbie/quadrature.hpp>

#include <vector>

namespace dbarbie {

enum class KernelKind { SWeak, TDouble, TStarAdjoint, RPrinted, RSystem };

inline const char* kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::SWeak: return "S";
    case KernelKind::TDouble: return "T";
    case KernelKind::TStarAdjoint: return "Tstar";
    case KernelKind::RPrinted: return "R";
    case KernelKind::RSystem: return "Rsys";
  }
  return "?";
}

inline Mat2 kernel_eval(KernelKind k, const C2& z, const C2& w) {
  switch (k) {
    case KernelKind::SWeak: return kernel_S(z, w);
    case KernelKind::TDouble: return kernel_T(z, w);
    case KernelKind::TStarAdjoint: return kernel_Tstar(z, w);
    case KernelKind::RPrinted: return kernel_R_printed(z, w);
    case KernelKind::RSystem: return kernel_system_R(z, w);
  }
  return Mat2::Zero();
}

inline bool kernel_finite_part(KernelKind k) { return k == KernelKind::RPrinted; }

// Scalar complement moment at exclusion radius eps (the matrix moment is
// this scalar times the identity).
inline double kernel_moment(KernelKind k, double eps) {
  switch (k) {
    case KernelKind::SWeak: return moment_weak(eps);
    case KernelKind::TDouble:
    case KernelKind::TStarAdjoint: return moment_pv(eps);
    case KernelKind::RPrinted: return moment_fp(eps);
    case KernelKind::RSystem: return 0.0;
  }
  return 0.0;
}

inline double kernel_moment_limit(KernelKind k) {
  switch (k) {
    case KernelKind::SWeak: return kMomentWeakLimit;
    case KernelKind::TDouble:
    case KernelKind::TStarAdjoint: return kMomentPvLimit;
    case KernelKind::RPrinted: return 0.0;  // moment stays inside the fit
    case KernelKind::RSystem: return 0.0;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Matrix-free application
// ---------------------------------------------------------------------------

// Raw masked kernel sum at one target node: sum_{rho>eps^2} K(z_i, w_j)
// psi_j w_j with no subtraction.  Exposed for symmetry checks and kernel
// dumps.
inline C2 masked_sum(KernelKind kind, const BoundaryGrid& g, std::size_t i,
                     double eps, const std::vector<C2>& density) {
  const C2 z = g.nodes[i].z;
  C2 acc{0.0, 0.0};
  for (std::size_t j = 0; j < g.nodes.size(); ++j) {
    if (j == i || g.nodes[j].w == 0.0) continue;
    if (rho(z, g.nodes[j].z) <= eps * eps) continue;
    const Mat2 k = kernel_eval(kind, z, g.nodes[j].z);
    const cplx p0 = density[j][0], p1 = density[j][1];
    acc[0] += g.nodes[j].w * (k(0, 0) * p0 + k(0, 1) * p1);
    acc[1] += g.nodes[j].w * (k(1, 0) * p0 + k(1, 1) * p1);
  }
  return acc;
}

struct ApplyResult {
  std::vector<C2> values;      // one pair of frame coefficients per node
  double subset_disagreement;  // max over nodes of the two 3-level refits
};

// Extrapolated singularity-subtracted application at every node (the probe
// node is a valid target; as a source it carries zero weight).
inline ApplyResult apply_operator(KernelKind kind, const BoundaryGrid& g,
                                  const EpsLevels& lv,
                                  const std::vector<C2>& density) {
  const std::size_t n = g.nodes.size();
  if (density.size() != n)
    throw QuadratureDiagnosticError("density size does not match the grid");
  const bool fp = kernel_finite_part(kind);
  const auto gamma = extrapolation_weights(lv, fp);

  // Three-level refits on {0,1,2} and {1,2,3} for the convergence
  // diagnostic, with the matching reduced model.
  auto subset_weights = [&](int lo) {
    Eigen::Matrix3d V;
    for (int k = 0; k < 3; ++k) {
      const double e = lv.eps[lo + k];
      if (fp)
        V.col(k) << 1.0 / e, 1.0, e;
      else
        V.col(k) << 1.0, e, e * e;
    }
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    rhs(fp ? 1 : 0) = 1.0;
    return Eigen::Vector3d(V.fullPivLu().solve(rhs));
  };
  const Eigen::Vector3d glo = subset_weights(0);
  const Eigen::Vector3d ghi = subset_weights(1);

  ApplyResult out;
  out.values.assign(n, C2{0.0, 0.0});
  out.subset_disagreement = 0.0;

  double density_scale = 1e-300;
  for (const C2& d : density)
    density_scale = std::max(density_scale, std::sqrt(abs2(d)));

  std::array<C2, 4> level{};  // complement sums per exclusion level
  for (std::size_t i = 0; i < n; ++i) {
    level.fill(C2{0.0, 0.0});
    const C2 z = g.nodes[i].z;
    const C2 di = density[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || g.nodes[j].w == 0.0) continue;
      const double r = rho(z, g.nodes[j].z);
      if (r <= lv.eps[0] * lv.eps[0]) continue;
      const Mat2 k = kernel_eval(kind, z, g.nodes[j].z);
      const cplx p0 = density[j][0] - di[0], p1 = density[j][1] - di[1];
      const C2 inc{g.nodes[j].w * (k(0, 0) * p0 + k(0, 1) * p1),
                   g.nodes[j].w * (k(1, 0) * p0 + k(1, 1) * p1)};
      for (int s = 0; s < 4; ++s)
        if (r > lv.eps[s] * lv.eps[s]) level[s] = level[s] + inc;
    }
    if (fp)
      for (int s = 0; s < 4; ++s)
        level[s] = level[s] + kernel_moment(kind, lv.eps[s]) * di;

    C2 val{0.0, 0.0}, vlo{0.0, 0.0}, vhi{0.0, 0.0};
    for (int s = 0; s < 4; ++s) val = val + gamma[s] * level[s];
    for (int s = 0; s < 3; ++s) {
      vlo = vlo + glo(s) * level[s];
      vhi = vhi + ghi(s) * level[s + 1];
    }
    if (!fp) {
      const C2 mm = kernel_moment_limit(kind) * di;
      val = val + mm;
      vlo = vlo + mm;
      vhi = vhi + mm;
    }
    out.values[i] = val;
    const double scale = std::max(std::sqrt(abs2(val)), density_scale);
    out.subset_disagreement = std::max(
        out.subset_disagreement, std::sqrt(abs2(vlo - vhi)) / scale);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Assembly over the quadrature nodes (probe excluded)
// ---------------------------------------------------------------------------

// Dense 2Q x 2Q matrix equivalent to apply_operator restricted to the
// quadrature nodes: off-diagonal blocks carry the prefix-mass-weighted
// kernel, the diagonal block closes the subtraction so constants map to the
// limit moment exactly.
inline Eigen::MatrixXcd assemble_operator(KernelKind kind,
                                          const BoundaryGrid& g,
                                          const EpsLevels& lv) {
  const std::size_t q = g.quad_count();
  const bool fp = kernel_finite_part(kind);
  const auto gamma = extrapolation_weights(lv, fp);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2 * q, 2 * q);

  double diag_moment = kernel_moment_limit(kind);
  if (fp) {
    diag_moment = 0.0;
    for (int s = 0; s < 4; ++s)
      diag_moment += gamma[s] * kernel_moment(kind, lv.eps[s]);
  }

  for (std::size_t i = 0; i < q; ++i) {
    Mat2 row_sum = Mat2::Zero();
    for (std::size_t j = 0; j < q; ++j) {
      if (j == i) continue;
      const double m = mask_mass(lv, gamma, rho(g.nodes[i].z, g.nodes[j].z));
      if (m == 0.0) continue;
      const Mat2 k =
          (m * g.nodes[j].w) * kernel_eval(kind, g.nodes[i].z, g.nodes[j].z);
      A.block<2, 2>(2 * i, 2 * j) = k;
      row_sum += k;
    }
    A.block<2, 2>(2 * i, 2 * i) = diag_moment * Mat2::Identity() - row_sum;
  }
  return A;
}

// ---------------------------------------------------------------------------
// Reduced system
// ---------------------------------------------------------------------------

struct ReducedSystem {
  Eigen::MatrixXcd A;  // 4Q x 2Q, rows grouped (A1, A2, B1, B2) per node
  Eigen::VectorXcd b;  // traces of the Newton potential
};

// gamma_g and conormal_g hold the interleaved frame coefficients of
// gamma G f and B G f at the quadrature nodes.
inline ReducedSystem build_reduced_system(const BoundaryGrid& g,
                                          const EpsLevels& lv,
                                          const Eigen::VectorXcd& gamma_g,
                                          const Eigen::VectorXcd& conormal_g) {
  const std::size_t q = g.quad_count();
  const Eigen::MatrixXcd S = assemble_operator(KernelKind::SWeak, g, lv);
  const Eigen::MatrixXcd T = assemble_operator(KernelKind::TDouble, g, lv);
  const Eigen::MatrixXcd Ts = assemble_operator(KernelKind::TStarAdjoint, g, lv);
  const Eigen::MatrixXcd R = assemble_operator(KernelKind::RSystem, g, lv);

  ReducedSystem sys;
  sys.A = Eigen::MatrixXcd::Zero(4 * q, 2 * q);
  sys.b = Eigen::VectorXcd::Zero(4 * q);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      // Unknowns: x(2j) = psi_1(z_j), x(2j+1) = phi_2(z_j).
      sys.A(4 * i + 0, 2 * j) += 0.5 * T(2 * i + 0, 2 * j);
      sys.A(4 * i + 1, 2 * j) += 0.5 * T(2 * i + 1, 2 * j);
      sys.A(4 * i + 0, 2 * j + 1) -= S(2 * i + 0, 2 * j + 1);
      sys.A(4 * i + 1, 2 * j + 1) -= S(2 * i + 1, 2 * j + 1);
      sys.A(4 * i + 2, 2 * j) -= R(2 * i + 0, 2 * j);
      sys.A(4 * i + 3, 2 * j) -= R(2 * i + 1, 2 * j);
      sys.A(4 * i + 2, 2 * j + 1) -= 0.5 * Ts(2 * i + 0, 2 * j + 1);
      sys.A(4 * i + 3, 2 * j + 1) -= 0.5 * Ts(2 * i + 1, 2 * j + 1);
    }
    sys.A(4 * i + 0, 2 * i) += 0.5;
    sys.A(4 * i + 3, 2 * i + 1) += 0.5;
    sys.b(4 * i + 0) = gamma_g(2 * i + 0);
    sys.b(4 * i + 1) = gamma_g(2 * i + 1);
    sys.b(4 * i + 2) = conormal_g(2 * i + 0);
    sys.b(4 * i + 3) = conormal_g(2 * i + 1);
  }
  return sys;
}

struct SolveResult {
  Eigen::VectorXcd x;               // interleaved (psi_1, phi_2)
  double cond = 0.0;                // normal-equations estimate
  double ridge = 0.0;               // regularization actually applied
  std::array<double, 4> block_rms;  // residual RMS per row group
};

// Least squares via the normal equations.  The blocks are well scaled (all
// operators are order-one on the sphere), so the normal equations lose no
// meaningful accuracy at the grid sizes involved; a tiny ridge is added only
// if the condition estimate degenerates.
inline SolveResult solve_reduced(const ReducedSystem& sys) {
  const Eigen::MatrixXcd G = sys.A.adjoint() * sys.A;
  const Eigen::VectorXcd rhs = sys.A.adjoint() * sys.b;
  const std::size_t m = G.rows();

  // Extremal eigenvalue estimates by power iteration (G is Hermitian PSD).
  const auto power_iterate = [&](const auto& op) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(m);
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 60; ++it) {
      Eigen::VectorXcd w = op(v);
      const double nw = w.norm();
      if (nw == 0.0) return 0.0;
      lambda = nw;
      v = w / nw;
    }
    return lambda;
  };
  const double lmax = power_iterate([&](const Eigen::VectorXcd& v) {
    return Eigen::VectorXcd(G * v);
  });

  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  double ridge = 0.0;
  if (llt.info() != Eigen::Success) {
    ridge = 1e-12 * lmax;
    llt.compute(G + ridge * Eigen::MatrixXcd::Identity(m, m));
  }
  const double lmin_inv = power_iterate([&](const Eigen::VectorXcd& v) {
    return Eigen::VectorXcd(llt.solve(v));
  });
  double cond = (lmin_inv > 0.0) ? lmax * lmin_inv : 0.0;
  if (cond > 1e12 && ridge == 0.0) {
    ridge = 1e-12 * lmax;
    llt.compute(G + ridge * Eigen::MatrixXcd::Identity(m, m));
  }

  SolveResult res;
  res.x = llt.solve(rhs);
  res.cond = cond;
  res.ridge = ridge;
  const Eigen::VectorXcd r = sys.A * res.x - sys.b;
  const std::size_t qn = sys.b.size() / 4;
  for (int blockk = 0; blockk < 4; ++blockk) {
    double acc = 0.0;
    for (std::size_t i = 0; i < qn; ++i) acc += std::norm(r(4 * i + blockk));
    res.block_rms[blockk] = std::sqrt(acc / double(qn));
  }
  return res;
}

}  // namespace dbarbie
