// SPDX-License-Identifier: MIT
//
// Layer kernels for the boundary reduction on the unit ball in C^2.
//
// The fundamental solution of the flat Laplacian in R^4 is
//
//     E(z, w) = -1 / (4 pi^2 |z - w|^2),        Delta E = delta(z - w),
//
// and the matrix kernel of the single layer acting on frame coefficients is
// K_E(z, w) = E(z, w) M(z)^dagger M(w) with M = [l | n].  Writing
// rho = |z - w|^2 and a = z . wbar, the boundary kernels in their
// conventional positive normalization are (|z| = |w| = 1):
//
//     S(z,w)  =  1/(4 pi^2 rho)   [[ a,                w1 z2 - w2 z1 ],
//                                  [ w2b z1b - w1b z2b, conj a        ]]
//     T(z,w)  = -1/(pi^2 rho^2)   [[ a - 1,            z2 w1 - z1 w2 ],
//                                  [ z1b w2b - z2b w1b, conj a - 1    ]]
//     T*(z,w) = T(w,z)^dagger   (principal value),
//     R(z,w)  =  4/(pi^2 rho^2) I (finite part).
//
// K_E restricted to the boundary equals -S.  The double layer kernel, valid
// for interior targets x (r = |x|), is
//
//     D(x,w) = 1/(2 pi^2 rho^2) [[ (a - r^2)/r,        (x2 w1 - x1 w2)/r ],
//                                [ (x1b w2b - x2b w1b)/r, (conj a - r^2)/r ]],
//
// whose boundary principal value is -T/2; the interior one-sided limits are
//
//     gamma SL phi = -S phi,          2 gamma DL psi = psi - T psi,
//     2 B SL phi   = -phi - T* phi,   B DL psi = 0  (on the ball).
//
// The last line is special to the ball: the conormal derivative of the
// double layer vanishes identically, because the double layer of any
// density extends with zero conormal trace here.  The printed
// finite-part kernel R is therefore *not* the Green-identity operator in
// the hypersingular slot; it is kept for kernel evaluation and classical
// operator application, while the system assembly uses the jet-differentiated
// kernel B_x D(x, w) (machine zero on the ball), which keeps the dropped-row
// consistency monitors meaningful.
//
// Conormal applications to kernels (B_x K_E and B_x D) are produced by the
// Wirtinger-jet machinery, not by hand-differentiated formulas; the unit
// tests check them against finite differences.

#pragma once

#include <dbarbie/forms.hpp>

#include <Eigen/Dense>

namespace dbarbie {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline double fundamental_solution(const C2& z, const C2& w) {
  return -1.0 / (4.0 * kPi * kPi * rho(z, w));
}

// [[<L_w.L_z>, <N_w.L_z>], [<L_w.N_z>, <N_w.N_z>]] = M(z)^dagger M(w) / 2.
inline Mat2 bracket_matrix(const Frame& fz, const Frame& fw) {
  Mat2 b;
  b(0, 0) = pair_ff(fw.l, fz.l);
  b(0, 1) = pair_ff(fw.n, fz.l);
  b(1, 0) = pair_ff(fw.l, fz.n);
  b(1, 1) = pair_ff(fw.n, fz.n);
  return b;
}

// ---------------------------------------------------------------------------
// Boundary kernels, closed ball forms
// ---------------------------------------------------------------------------

inline Mat2 kernel_S(const C2& z, const C2& w) {
  const double r = rho(z, w);
  const cplx a = a_form(z, w);
  Mat2 k;
  k(0, 0) = a;
  k(0, 1) = w[0] * z[1] - w[1] * z[0];
  k(1, 0) = std::conj(w[1]) * std::conj(z[0]) - std::conj(w[0]) * std::conj(z[1]);
  k(1, 1) = std::conj(a);
  return (1.0 / (4.0 * kPi * kPi * r)) * k;
}

inline Mat2 kernel_T(const C2& z, const C2& w) {
  const double r = rho(z, w);
  const cplx a = a_form(z, w);
  Mat2 k;
  k(0, 0) = a - 1.0;
  k(0, 1) = z[1] * w[0] - z[0] * w[1];
  k(1, 0) = std::conj(z[0]) * std::conj(w[1]) - std::conj(z[1]) * std::conj(w[0]);
  k(1, 1) = std::conj(a) - 1.0;
  return (-1.0 / (kPi * kPi * r * r)) * k;
}

inline Mat2 kernel_Tstar(const C2& z, const C2& w) {
  // Brackets at w: -1/(pi^2 rho^2) [[<(z-w).N_w>, -<(z-w).L_w>],
  //                                 [<L_w.(z-w)>,  <N_w.(z-w)>]].
  const double r = rho(z, w);
  const cplx a = a_form(z, w);
  Mat2 k;
  k(0, 0) = a - 1.0;
  k(0, 1) = w[0] * z[1] - w[1] * z[0];
  k(1, 0) = std::conj(w[1]) * std::conj(z[0]) - std::conj(w[0]) * std::conj(z[1]);
  k(1, 1) = std::conj(a) - 1.0;
  return (-1.0 / (kPi * kPi * r * r)) * k;
}

inline Mat2 kernel_R_printed(const C2& z, const C2& w) {
  const double r = rho(z, w);
  return (4.0 / (kPi * kPi * r * r)) * Mat2::Identity();
}

// ---------------------------------------------------------------------------
// Bracket-built kernels from supplied frames (generic-geometry path)
// ---------------------------------------------------------------------------

inline Mat2 kernel_S_from_frames(const C2& z, const C2& w, const Frame& fz,
                                 const Frame& fw) {
  return (1.0 / (2.0 * kPi * kPi * rho(z, w))) * bracket_matrix(fz, fw);
}

inline Mat2 kernel_T_from_frames(const C2& z, const C2& w, const Frame& fz) {
  const double r = rho(z, w);
  const C2 disp = w - z;
  const cplx nd = pair_fv(fz.n, disp);
  const cplx ld = pair_fv(fz.l, disp);
  Mat2 k;
  k(0, 0) = nd;
  k(0, 1) = std::conj(ld);
  k(1, 0) = -ld;
  k(1, 1) = std::conj(nd);
  return (-1.0 / (kPi * kPi * r * r)) * k;
}

inline Mat2 kernel_Tstar_from_frames(const C2& z, const C2& w, const Frame& fw) {
  const double r = rho(z, w);
  const C2 disp = z - w;
  const cplx nd = pair_fv(fw.n, disp);
  const cplx ld = pair_fv(fw.l, disp);
  Mat2 k;
  k(0, 0) = std::conj(nd);
  k(0, 1) = -std::conj(ld);
  k(1, 0) = ld;
  k(1, 1) = nd;
  return (-1.0 / (kPi * kPi * r * r)) * k;
}

// ---------------------------------------------------------------------------
// Green-identity kernels (interior targets allowed)
// ---------------------------------------------------------------------------

inline Mat2 kernel_single(const C2& x, const C2& w) {
  return (2.0 * fundamental_solution(x, w)) *
         bracket_matrix(ball_frame(x), ball_frame(w));
}

inline Mat2 kernel_double(const C2& x, const C2& w) {
  const double r2 = rho(x, w);
  const double r = std::sqrt(abs2(x));
  const cplx a = a_form(x, w);
  Mat2 k;
  k(0, 0) = (a - r * r) / r;
  k(0, 1) = (x[1] * w[0] - x[0] * w[1]) / r;
  k(1, 0) = (std::conj(x[0]) * std::conj(w[1]) - std::conj(x[1]) * std::conj(w[0])) / r;
  k(1, 1) = (std::conj(a) - r * r) / r;
  return (1.0 / (2.0 * kPi * kPi * r2 * r2)) * k;
}

// B_x applied column-wise to K_E(x, w); used for the conormal trace of the
// single layer and of the Newton potential.
inline Mat2 kernel_single_conormal(const C2& x, const C2& w) {
  const JetVars v = jet_seed(x);
  const FrameJet F = ball_frame_jets(x);
  const Jet2 rho_j = (v[0] - w[0]) * (v[2] - std::conj(w[0])) +
                     (v[1] - w[1]) * (v[3] - std::conj(w[1]));
  const Jet2 E = (-1.0 / (4.0 * kPi * kPi)) * inv(rho_j);
  const Frame fw = ball_frame(w);
  Mat2 out;
  for (int j = 0; j < 2; ++j) {
    const C2 col = (j == 0) ? fw.l : fw.n;  // column j of M(w)
    // Column j of M(x)^dagger M(w), as jets in x.
    const Jet2 c0 = col[0] * conj(F.l[0]) + col[1] * conj(F.l[1]);
    const Jet2 c1 = col[0] * conj(F.n[0]) + col[1] * conj(F.n[1]);
    const std::array<cplx, 2> B = conormal(F, Form01Jet2{E * c0, E * c1});
    out(0, j) = B[0];
    out(1, j) = B[1];
  }
  return out;
}

// B_x applied column-wise to the double layer kernel D(x, w): the
// hypersingular slot of the boundary system.  Identically zero on the ball;
// assembled generically so the vanishing is observed, not assumed.
inline Mat2 kernel_system_R(const C2& x, const C2& w) {
  const JetVars v = jet_seed(x);
  const FrameJet F = ball_frame_jets(x);
  const Jet2 rho_j = (v[0] - w[0]) * (v[2] - std::conj(w[0])) +
                     (v[1] - w[1]) * (v[3] - std::conj(w[1]));
  const Jet2 pref = (1.0 / (2.0 * kPi * kPi)) * inv(rho_j * rho_j);
  const Jet2 rinv = inv(F.r);
  const Jet2 a = std::conj(w[0]) * v[0] + std::conj(w[1]) * v[1];
  const Jet2 d00 = (a - F.r * F.r) * rinv;
  const Jet2 d01 = (w[0] * v[1] - w[1] * v[0]) * rinv;
  const Jet2 d10 = (std::conj(w[1]) * v[2] - std::conj(w[0]) * v[3]) * rinv;
  const Jet2 d11 = (conj(a) - F.r * F.r) * rinv;
  Mat2 out;
  const std::array<cplx, 2> B0 = conormal(F, Form01Jet2{pref * d00, pref * d10});
  const std::array<cplx, 2> B1 = conormal(F, Form01Jet2{pref * d01, pref * d11});
  out(0, 0) = B0[0];
  out(1, 0) = B0[1];
  out(0, 1) = B1[0];
  out(1, 1) = B1[1];
  return out;
}

}  // namespace dbarbie
