// SPDX-License-Identifier: MIT
//
// Boundary geometry of the unit ball in C^2.
//
// The defining function is delta(z) = |z| - 1, so |d delta| is normalized
// and the hypersurfaces delta = const are the spheres |z| = r.  The
// orthonormal frame attached to delta consists of the complex tangential
// field L and the complex normal field N,
//
//     L = sum_i l_i d/dz_i,   l = (2 d delta/dz2, -2 d delta/dz1),
//     N = sum_i n_i d/dz_i,   n = (2 d delta/dz1b, 2 d delta/dz2b),
//
// which on the ball reduce to l = (z2b, -z1b)/r and n = (z1, z2)/r.  The
// same coefficient tuples express the dual (0,1)-forms omega_Lb and
// omega_Nb in the basis (dz1b, dz2b).  With the Euclidean metric
// normalized so that (d/dz_i, d/dz_j) = delta_ij / 2, the tuples l and n
// are unit and orthogonal in C^2, hence (L,L) = (N,N) = 1/2, (L,N) = 0,
// and the matrix M = [l | n] is unitary.
//
// Pairings.  Two sesquilinear brackets appear throughout the kernels:
//   frame-frame        <X_z . Y_w> = 1/2 sum_i x_i(z) conj(y_i(w)),
//   frame-displacement <X_z . v>   =     sum_i x_i(z) conj(v_i),
// with <v . X_z> = conj <X_z . v>.  They satisfy the chordal Pythagoras
// identity |<N_z.(z-w)>|^2 + |<L_z.(z-w)>|^2 = |z-w|^2 for |z| = 1.

#pragma once

#include <dbarbie/jet.hpp>

namespace dbarbie {

// Squared chordal distance; the kernels are all functions of it.
inline double rho(const C2& z, const C2& w) { return abs2(z - w); }

// a(z, w) = z . wbar = z1 w1b + z2 w2b; on the sphere rho = 2 - 2 Re a.
inline cplx a_form(const C2& z, const C2& w) {
  return z[0] * std::conj(w[0]) + z[1] * std::conj(w[1]);
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

struct Frame {
  C2 l;  // complex tangential coefficients
  C2 n;  // complex normal coefficients
};

inline Frame ball_frame(const C2& z) {
  const double r = std::sqrt(abs2(z));
  return Frame{{std::conj(z[1]) / r, -std::conj(z[0]) / r},
               {z[0] / r, z[1] / r}};
}

// Sesquilinear pairings.
inline cplx pair_ff(const C2& x, const C2& y) {
  return 0.5 * (x[0] * std::conj(y[0]) + x[1] * std::conj(y[1]));
}
inline cplx pair_fv(const C2& x, const C2& v) {
  return x[0] * std::conj(v[0]) + x[1] * std::conj(v[1]);
}
inline cplx pair_vf(const C2& v, const C2& x) { return std::conj(pair_fv(x, v)); }

// ---------------------------------------------------------------------------
// Basis change between standard and frame coefficients
// ---------------------------------------------------------------------------
//
// A (0,1)-form u = u1 dz1b + u2 dz2b = s omega_Lb + t omega_Nb has
// u_std = M(z) (s, t) and (s, t) = M(z)^dagger u_std with M = [l | n];
// the change is unitary, with no additional scalar factor.

inline C2 to_frame(const C2& z, const C2& u_std) {
  const Frame f = ball_frame(z);
  return {std::conj(f.l[0]) * u_std[0] + std::conj(f.l[1]) * u_std[1],
          std::conj(f.n[0]) * u_std[0] + std::conj(f.n[1]) * u_std[1]};
}

inline C2 to_standard(const C2& z, const C2& u_frame) {
  const Frame f = ball_frame(z);
  return {f.l[0] * u_frame[0] + f.n[0] * u_frame[1],
          f.l[1] * u_frame[0] + f.n[1] * u_frame[1]};
}

// ---------------------------------------------------------------------------
// Closed displacement brackets on the ball (|z| arbitrary, w unrestricted)
// ---------------------------------------------------------------------------

// <N_z . (w - z)> = (a(z,w) - |z|^2) / |z|
inline cplx bracket_N_disp(const C2& z, const C2& w) {
  const double r = std::sqrt(abs2(z));
  return (a_form(z, w) - r * r) / r;
}

// <L_z . (w - z)> = (z2b w1b - z1b w2b) / |z|
inline cplx bracket_L_disp(const C2& z, const C2& w) {
  const double r = std::sqrt(abs2(z));
  return (std::conj(z[1]) * std::conj(w[0]) - std::conj(z[0]) * std::conj(w[1])) / r;
}

// ---------------------------------------------------------------------------
// Frame jets on the ball
// ---------------------------------------------------------------------------
//
// Coefficient jets are produced by jet arithmetic on l = (z2b, -z1b)/r and
// n = (z1, z2)/r, so every frame derivative of a frame coefficient is exact
// to rounding.  The connection scalar
//
//     c = (L, [L, N]) = 1/2 sum_j l_j conj(L n_j - N l_j)
//
// is computed from the commutator rather than from its closed ball value
// 3/(4r); the two agree to machine precision (tested).

struct FrameJet {
  std::array<Jet2, 2> l, n;
  Jet2 r;   // |z| as a jet
  Jet1 c;   // connection scalar with first derivatives
};

// First-order directional derivative of a Jet2 scalar along a (1,0) field
// with Jet2 coefficients; the result keeps first-order information.
inline Jet1 apply_holo(const std::array<Jet2, 2>& coeff, const Jet2& u) {
  return jet1_of(coeff[0]) * d_slot(u, 0) + jet1_of(coeff[1]) * d_slot(u, 1);
}

// Same along the conjugate field (coefficients conjugated, antiholomorphic
// slots).
inline Jet1 apply_antiholo(const std::array<Jet2, 2>& coeff, const Jet2& u) {
  return conj(jet1_of(coeff[0])) * d_slot(u, 2) + conj(jet1_of(coeff[1])) * d_slot(u, 3);
}

// Value-level application to a Jet1 scalar.
inline cplx apply_holo(const std::array<Jet2, 2>& coeff, const Jet1& u) {
  return coeff[0].v * u.d[0] + coeff[1].v * u.d[1];
}
inline cplx apply_antiholo(const std::array<Jet2, 2>& coeff, const Jet1& u) {
  return std::conj(coeff[0].v) * u.d[2] + std::conj(coeff[1].v) * u.d[3];
}

inline FrameJet ball_frame_jets(const C2& z) {
  const JetVars v = jet_seed(z);
  FrameJet F;
  F.r = jet_r(v);
  const Jet2 rinv = inv(F.r);
  F.l = {v[3] * rinv, -(v[2] * rinv)};
  F.n = {v[0] * rinv, v[1] * rinv};
  // Commutator [L, N] = sum_j (L n_j - N l_j) d/dz_j (both fields are (1,0)).
  Jet1 c = jet1_const(0.0);
  for (int j = 0; j < 2; ++j) {
    const Jet1 comm_j = apply_holo(F.l, F.n[j]) - apply_holo(F.n, F.l[j]);
    c = c + jet1_of(F.l[j]) * conj(comm_j);
  }
  F.c = 0.5 * c;
  return F;
}

// ---------------------------------------------------------------------------
// Frames from an arbitrary defining function
// ---------------------------------------------------------------------------
//
// Given the 2-jet of a real defining function delta at z (delta < 0 inside,
// |d delta| != 0), the frame is built from q_i = 2 d delta / dz_i-bar
// normalized by g = sqrt(|q1|^2 + |q2|^2):
//
//     n = q / g,   l = (conj q2, -conj q1) / g.
//
// The first derivatives of the coefficients come from delta's Hessian, so
// the connection scalar c is available at value level.  For delta = |z| - 1
// this reproduces ball_frame exactly; it is also invariant under smooth
// rescalings of delta (tested with (|z|^2 - 1)/2).

struct FrameLite {
  std::array<Jet1, 2> l, n;
  cplx c;
};

inline cplx apply_holo(const std::array<Jet1, 2>& coeff, const Jet1& u) {
  return coeff[0].v * u.d[0] + coeff[1].v * u.d[1];
}

inline FrameLite frame_from_defining(const Jet2& delta) {
  const Jet1 q1 = 2.0 * d_slot(delta, 2);
  const Jet1 q2 = 2.0 * d_slot(delta, 3);
  const Jet1 g = sqrt(q1 * conj(q1) + q2 * conj(q2));
  const Jet1 ginv = inv(g);
  FrameLite F;
  F.n = {q1 * ginv, q2 * ginv};
  F.l = {conj(q2) * ginv, -(conj(q1) * ginv)};
  cplx c = 0.0;
  for (int j = 0; j < 2; ++j) {
    const cplx comm_j = apply_holo(F.l, F.n[j]) - apply_holo(F.n, F.l[j]);
    c += F.l[j].v * std::conj(comm_j);
  }
  F.c = 0.5 * c;
  return F;
}

// 2-jets of the two defining functions used in the cross checks.
inline Jet2 defining_ball(const JetVars& v) { return jet_r(v) - 1.0; }
inline Jet2 defining_quadratic(const JetVars& v) {
  return 0.5 * (jet_rsq(v) - 1.0);
}

// ---------------------------------------------------------------------------
// Levi form
// ---------------------------------------------------------------------------
//
// For a (0,1)-form with standard coefficients a at a boundary point z, the
// boundary energy density of the basic identity is
//
//     Levi(a; z) = 1/2 |a|^2 - 1/4 |sum_i a_i z_i-bar|^2,
//
// which is >= 1/4 |a|^2 on |z| = 1, and equals 1/2 |a|^2 for tangential
// forms (sum a_i z_i-bar = 0).

inline double levi_density(const C2& a, const C2& z) {
  const cplx radial = a[0] * std::conj(z[0]) + a[1] * std::conj(z[1]);
  return 0.5 * abs2(a) - 0.25 * std::norm(radial);
}

}  // namespace dbarbie
