// SPDX-License-Identifier: MIT
//
// Newton and layer potentials on the unit ball in C^2.
//
// The Newton potential G[f](x) = int_B E(x,w) f(w) dV(w) with the
// fundamental solution E = -1/(4 pi^2 |x-w|^2) of the componentwise
// Laplacian in R^4 is computed by subtracting the second-order Taylor
// model of f at the target and adding its ball mass back in closed form.
// In real coordinates w_k, with r = |x|,
//
//     G[v 1_B](x)             = (r^2/8 - 1/4) v ,
//     G[w_k 1_B](x)           = (r^2/12 - 1/8) x_k ,
//     G[w^T H w 1_B](x)       = h(x) (r^2/16 - 1/12)
//                               + (tr H / 4)(r^4/24 - 1/8) ,
//
// where h = w^T H w - (tr H / 4)|w|^2 is the harmonic part of the
// quadratic (each line matches an interior radial solve against a
// decaying exterior harmonic).  Recentred at the target, the model mass
// collapses to the affine terms plus
//
//     (x^T H x)(r^2/96 - 1/24) + (tr H / 8)(-r^4/48 + r^2/12 - 1/8) .
//
// The remaining integrand E * (f - model) vanishes to third order in
// |w - x| up to the singularity, so its near-target dip shrinks with the
// cutoff instead of sitting at a fixed O(f'') height.  The integral is
// split by a C^2 radial blend chi (zero inside |w-x| < d/2, one outside
// d): the blended far field is a plain sum over the volume grid with a
// globally smooth integrand, the near field is integrated in polar
// coordinates w = x + s omega, where the volume element cancels the
// singularity (E s^3 = -s / (4 pi^2)) and the ray length is clipped at
// the sphere.
//
// The conormal of the potential uses the jet kernel of the single layer in
// the same split; its polar integrand stays bounded along each ray, so no
// jump terms appear.  The exact constant-data mass follows from the radial
// derivative of the closed form above: with u = (|x|^2/8 - 1/4) M^dag(x) v
// the conormal reduces to 2 (d/d|x|^2 of the radial factor) |x| M^dag v,
//
//     B G[v 1_B](x) = (|x| / 4) M^dag(x) v .
//
// Boundary traces are taken along rays, on which the frame is constant:
// values at radii 1-h, 1-2h, 1-3h are extrapolated quadratically to the
// sphere.
//
// Layer potentials at interior points (for the Green representation
// u = G[f] + DL[gamma u] - SL[B u]) subtract the constant standard form
// taken from the nearest boundary node and restore its exact action on the
// ball, which keeps the sums accurate as the target nears the sphere.

#pragma once

#include <dbarbie/bie.hpp>
#include <dbarbie/forms.hpp>

#include <limits>

namespace dbarbie {

// Polar near-field rule: Gauss-Legendre along the ray against a small Hopf
// rule in the direction.  A radius beyond the ball diameter turns the
// evaluation into pure polar integration from the target (the grid part of
// the blend vanishes identically); with the sphere clip an analytic
// function of the direction, that mode stays accurate arbitrarily close to
// the boundary and is the default for traces.
struct PatchRule {
  int n_s = 8;
  int n_eta = 4;
  int n_xi = 8;
  double radius = 0.35;

  static PatchRule polar() { return {12, 6, 12, 4.0}; }
};

namespace detail {

// Second-order Taylor model of a vector field at x from central
// differences in the four real coordinates.
struct LocalModel {
  C2 x, v;
  std::array<C2, 4> grad;
  std::array<std::array<C2, 4>, 4> hess;

  static C2 offset(const C2& x, int j, double h) {
    C2 y = x;
    y[j / 2] += (j % 2 == 0) ? cplx(h, 0.0) : cplx(0.0, h);
    return y;
  }

  template <class F>
  LocalModel(const C2& x0, F&& f) : x(x0), v(f(x0)) {
    const double h = 1e-3;
    std::array<C2, 4> fp, fm;
    for (int j = 0; j < 4; ++j) {
      fp[j] = f(offset(x, j, h));
      fm[j] = f(offset(x, j, -h));
      grad[j] = {(fp[j][0] - fm[j][0]) / (2.0 * h),
                 (fp[j][1] - fm[j][1]) / (2.0 * h)};
      hess[j][j] = {(fp[j][0] - 2.0 * v[0] + fm[j][0]) / (h * h),
                    (fp[j][1] - 2.0 * v[1] + fm[j][1]) / (h * h)};
    }
    for (int j = 0; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        const C2 a = f(offset(offset(x, j, h), k, h));
        const C2 b = f(offset(offset(x, j, h), k, -h));
        const C2 c = f(offset(offset(x, j, -h), k, h));
        const C2 d = f(offset(offset(x, j, -h), k, -h));
        hess[j][k] = {(a[0] - b[0] - c[0] + d[0]) / (4.0 * h * h),
                      (a[1] - b[1] - c[1] + d[1]) / (4.0 * h * h)};
        hess[k][j] = hess[j][k];
      }
  }

  // f(w) minus the Taylor model at w.
  C2 remainder(const C2& w, const C2& fw) const {
    const cplx d0 = w[0] - x[0], d1 = w[1] - x[1];
    const double c[4] = {d0.real(), d0.imag(), d1.real(), d1.imag()};
    C2 r{fw[0] - v[0], fw[1] - v[1]};
    for (int j = 0; j < 4; ++j) {
      r[0] -= c[j] * grad[j][0];
      r[1] -= c[j] * grad[j][1];
      for (int k = 0; k < 4; ++k) {
        r[0] -= 0.5 * c[j] * c[k] * hess[j][k][0];
        r[1] -= 0.5 * c[j] * c[k] * hess[j][k][1];
      }
    }
    return r;
  }

  // Exact ball mass of the Taylor model under E (closed forms above; the
  // quadratic coefficients absorb the Taylor 1/2).
  C2 newton_mass() const {
    const double r2 = abs2(x);
    const double m0 = r2 / 8.0 - 0.25;
    const double m1 = 0.125 - r2 / 24.0;
    const double mq = r2 / 96.0 - 1.0 / 24.0;
    const double mt = (-r2 * r2 / 48.0 + r2 / 12.0 - 0.125) / 8.0;
    const double c[4] = {x[0].real(), x[0].imag(), x[1].real(), x[1].imag()};
    C2 m{m0 * v[0], m0 * v[1]};
    for (int j = 0; j < 4; ++j) {
      // affine terms use G[(w_j - x_j) 1_B] = G[w_j 1_B] - x_j G[1_B]
      m[0] += m1 * c[j] * grad[j][0];
      m[1] += m1 * c[j] * grad[j][1];
      m[0] += mt * hess[j][j][0];
      m[1] += mt * hess[j][j][1];
      for (int k = 0; k < 4; ++k) {
        m[0] += mq * c[j] * c[k] * hess[j][k][0];
        m[1] += mq * c[j] * c[k] * hess[j][k][1];
      }
    }
    return m;
  }
};

// C^4 radial blend: 0 on (0, d/2], 1 on [d, inf).
inline double blend(double s, double d) {
  if (s <= 0.5 * d) return 0.0;
  if (s >= d) return 1.0;
  const double t = (2.0 * s - d) / d;
  const double t2 = t * t;
  return t2 * t2 * t *
         (126.0 + t * (-420.0 + t * (540.0 + t * (-315.0 + 70.0 * t))));
}

// Blend cutoff for a target inside the ball: in blended mode the cutoff
// retreats from the sphere so the polar ray length is never clipped by it
// (the clip would put a kink into the angular integrand); radii >= 2 mean
// pure polar integration, where the sphere clip is the whole point.
inline double effective_cutoff(double radius, const C2& x) {
  if (radius >= 2.0) return radius;
  return std::min(radius, 0.9 * (1.0 - std::sqrt(abs2(x))));
}

struct PolarRule {
  std::vector<VolumeNode> dirs;  // unit directions with sphere weights
  std::vector<double> xs, ws;    // Gauss-Legendre on (0, 1)

  explicit PolarRule(const PatchRule& p) {
    const BoundaryGrid sph = BoundaryGrid::hopf(p.n_eta, p.n_xi);
    dirs.reserve(sph.quad_count());
    for (std::size_t j = 0; j < sph.quad_count(); ++j)
      dirs.push_back({sph.nodes[j].z, sph.nodes[j].w});
    std::vector<double> x, w;
    gauss_legendre(p.n_s, x, w);
    xs.resize(p.n_s);
    ws.resize(p.n_s);
    for (int i = 0; i < p.n_s; ++i) {
      xs[i] = 0.5 * (x[i] + 1.0);
      ws[i] = 0.5 * w[i];
    }
  }

  // Ray length to the sphere from x in direction omega, capped at d.
  static double clip(const C2& x, const C2& omega, double d) {
    const double p =
        (x[0] * std::conj(omega[0]) + x[1] * std::conj(omega[1])).real();
    const double disc = p * p + 1.0 - abs2(x);
    if (disc <= 0.0) return 0.0;
    return std::min(d, -p + std::sqrt(disc));
  }
};

}  // namespace detail

// Newton potential in standard components; f_std maps a point of the ball
// to the standard coefficient pair of the data.
template <class F>
C2 newton_potential(const C2& x, F&& f_std, const VolumeGrid& vol,
                    const PatchRule& patch = {}) {
  const double d = detail::effective_cutoff(patch.radius, x);
  const detail::LocalModel lin(x, f_std);
  C2 acc{0.0, 0.0};
  for (const VolumeNode& node : vol.nodes) {
    const double chi = detail::blend(std::sqrt(rho(x, node.z)), d);
    if (chi == 0.0) continue;
    const double e = chi * fundamental_solution(x, node.z) * node.w;
    const C2 r = lin.remainder(node.z, f_std(node.z));
    acc[0] += e * r[0];
    acc[1] += e * r[1];
  }
  const detail::PolarRule rule(patch);
  for (const VolumeNode& dir : rule.dirs) {
    const double smax = detail::PolarRule::clip(x, dir.z, d);
    if (smax <= 0.0) continue;
    for (std::size_t i = 0; i < rule.xs.size(); ++i) {
      const double s = smax * rule.xs[i];
      const double chi = detail::blend(s, d);
      if (chi == 1.0) continue;
      const double wgt = smax * rule.ws[i] * dir.w * (1.0 - chi);
      const C2 p{x[0] + s * dir.z[0], x[1] + s * dir.z[1]};
      const C2 r = lin.remainder(p, f_std(p));
      const double e = -s / (4.0 * kPi * kPi) * wgt;  // E s^3 ds
      acc[0] += e * r[0];
      acc[1] += e * r[1];
    }
  }
  const C2 mass = lin.newton_mass();
  acc[0] += mass[0];
  acc[1] += mass[1];
  return acc;
}

// Conormal of the Newton potential, in frame coefficients at x (nonzero).
template <class F>
C2 newton_conormal(const C2& x, F&& f_std, const VolumeGrid& vol,
                   const PatchRule& patch = {}) {
  const double d = detail::effective_cutoff(patch.radius, x);
  const C2 v = f_std(x);
  const auto add = [&](C2& acc, const C2& w, double vol_weight) {
    const Mat2 k = kernel_single_conormal(x, w);
    const C2 fs = f_std(w);
    const C2 f = to_frame(w, C2{fs[0] - v[0], fs[1] - v[1]});
    acc[0] += vol_weight * (k(0, 0) * f[0] + k(0, 1) * f[1]);
    acc[1] += vol_weight * (k(1, 0) * f[0] + k(1, 1) * f[1]);
  };
  C2 acc{0.0, 0.0};
  for (const VolumeNode& node : vol.nodes) {
    const double chi = detail::blend(std::sqrt(rho(x, node.z)), d);
    if (chi == 0.0) continue;
    add(acc, node.z, chi * node.w);
  }
  const detail::PolarRule rule(patch);
  for (const VolumeNode& dir : rule.dirs) {
    const double smax = detail::PolarRule::clip(x, dir.z, d);
    if (smax <= 0.0) continue;
    for (std::size_t i = 0; i < rule.xs.size(); ++i) {
      const double s = smax * rule.xs[i];
      const double chi = detail::blend(s, d);
      if (chi == 1.0) continue;
      const C2 p{x[0] + s * dir.z[0], x[1] + s * dir.z[1]};
      add(acc, p, smax * rule.ws[i] * dir.w * (1.0 - chi) * s * s * s);
    }
  }
  const double r = std::sqrt(abs2(x));
  const C2 vf = to_frame(x, v);
  acc[0] += 0.25 * r * vf[0];  // exact conormal ball mass at x
  acc[1] += 0.25 * r * vf[1];
  return acc;
}

struct TraceOptions {
  double h = 0.04;  // radial offsets 1-h, 1-2h, 1-3h
};

namespace detail {

// Quadratic extrapolation to the sphere of values at 1-h, 1-2h, 1-3h;
// exact on radial profiles up to second order.
inline C2 radial_extrapolate(const C2& g1, const C2& g2, const C2& g3) {
  return {3.0 * g1[0] - 3.0 * g2[0] + g3[0], 3.0 * g1[1] - 3.0 * g2[1] + g3[1]};
}

}  // namespace detail

// Dirichlet trace of the Newton potential at a sphere point, in frame
// coefficients: radial extrapolation, frames constant along the ray.
template <class F>
C2 newton_gamma_trace(const C2& z, F&& f_std, const VolumeGrid& vol,
                      const PatchRule& patch = PatchRule::polar(),
                      const TraceOptions& opt = {}) {
  C2 g[3];
  for (int k = 0; k < 3; ++k) {
    const double r = 1.0 - (k + 1) * opt.h;
    g[k] = to_frame(z, newton_potential(C2{r * z[0], r * z[1]}, f_std, vol, patch));
  }
  return detail::radial_extrapolate(g[0], g[1], g[2]);
}

template <class F>
C2 newton_conormal_trace(const C2& z, F&& f_std, const VolumeGrid& vol,
                         const PatchRule& patch = PatchRule::polar(),
                         const TraceOptions& opt = {}) {
  C2 g[3];
  for (int k = 0; k < 3; ++k) {
    const double r = 1.0 - (k + 1) * opt.h;
    g[k] = newton_conormal(C2{r * z[0], r * z[1]}, f_std, vol, patch);
  }
  return detail::radial_extrapolate(g[0], g[1], g[2]);
}

// ---------------------------------------------------------------------------
// Layer potentials at interior points (frame coefficients in, frame
// coefficients out; density given at the boundary quadrature nodes)
// ---------------------------------------------------------------------------
//
// Interior evaluations subtract the constant standard form matching the
// density at the node nearest the target; the layer actions on such forms
// are exact on the ball,
//
//     SL[M^dag v](x) = -(1/2) M^dag(x) v    (shell value of E),
//     DL[M^dag v](x) = M^dag(x) v,
//     B SL[M^dag v]  = 0,   B DL[M^dag v] = 0,
//
// which suppresses the near-singular part of the sum when the target
// approaches the boundary.

namespace detail {

template <class Kernel>
C2 layer_sum(Kernel&& kernel, const C2& x, const BoundaryGrid& g,
             const std::vector<C2>& density, const C2& v_std, cplx mass) {
  C2 acc{0.0, 0.0};
  for (std::size_t j = 0; j < g.nodes.size(); ++j) {
    if (g.nodes[j].w == 0.0) continue;
    const Mat2 k = kernel(x, g.nodes[j].z);
    const C2 vf = to_frame(g.nodes[j].z, v_std);
    const cplx p0 = density[j][0] - vf[0], p1 = density[j][1] - vf[1];
    acc[0] += g.nodes[j].w * (k(0, 0) * p0 + k(0, 1) * p1);
    acc[1] += g.nodes[j].w * (k(1, 0) * p0 + k(1, 1) * p1);
  }
  if (mass != 0.0) {
    const C2 mf = to_frame(x, v_std);
    acc[0] += mass * mf[0];
    acc[1] += mass * mf[1];
  }
  return acc;
}

inline C2 nearest_density_std(const C2& x, const BoundaryGrid& g,
                              const std::vector<C2>& density) {
  std::size_t best = 0;
  double best_rho = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < g.quad_count(); ++j) {
    const double r = rho(x, g.nodes[j].z);
    if (r < best_rho) {
      best_rho = r;
      best = j;
    }
  }
  return frame_values_to_standard(g.nodes[best].frame, density[best]);
}

}  // namespace detail

inline C2 single_layer(const C2& x, const BoundaryGrid& g,
                       const std::vector<C2>& density) {
  const C2 v = detail::nearest_density_std(x, g, density);
  return detail::layer_sum(kernel_single, x, g, density, v, cplx(-0.5));
}

inline C2 double_layer(const C2& x, const BoundaryGrid& g,
                       const std::vector<C2>& density) {
  const C2 v = detail::nearest_density_std(x, g, density);
  return detail::layer_sum(kernel_double, x, g, density, v, cplx(1.0));
}

inline C2 single_layer_conormal(const C2& x, const BoundaryGrid& g,
                                const std::vector<C2>& density) {
  const C2 v = detail::nearest_density_std(x, g, density);
  return detail::layer_sum(kernel_single_conormal, x, g, density, v, cplx(0.0));
}

inline C2 double_layer_conormal(const C2& x, const BoundaryGrid& g,
                                const std::vector<C2>& density) {
  const C2 v = detail::nearest_density_std(x, g, density);
  return detail::layer_sum(kernel_system_R, x, g, density, v, cplx(0.0));
}

}  // namespace dbarbie
