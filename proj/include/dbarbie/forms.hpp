// SPDX-License-Identifier: MIT
//
// Frame calculus for (0,q)-forms on the ball in C^2.
//
// Representations: a (0,1)-form is carried by its frame coefficients
// (u1, u2) with respect to (omega_Lb, omega_Nb); a (0,2)-form by its single
// coefficient against omega_Lb ^ omega_Nb.  With c = (L, [L, N]) the frame
// operators are
//
//     dbar f            = (Lb f) omega_Lb + (Nb f) omega_Nb,
//     dbar (u1, u2)     = (Lb u2 - Nb u1 - 2 c u1) omega_Lb ^ omega_Nb,
//     dbar* (u1, u2)    = -2 (L u1 + N u2 + 2 cbar u2),
//     dbar* (s om ^ om) = (2 N s) omega_Lb - (2 L s) omega_Nb,
//
// and the (0,1) Laplacian dbar dbar* + dbar* dbar expands to
//
//     box (u1, u2) = 2 (Lb g + 2 N h) omega_Lb + 2 (Nb g - 2 L h) omega_Nb,
//     g = dbar* u,  h = coefficient of dbar u,
//
// which in standard coordinates equals minus the flat Laplacian acting on
// each component (tested to rounding).  The conormal operator whose trace
// closes the Green identity is
//
//     (B u)_1 = 2 (Nb u1 - Lb u2) + 4 c u1,
//     (B u)_2 = 2 (L u1 + N u2) + 4 cbar u2.
//
// Fields enter as jets; each operator consumes exactly the derivative
// order it needs, so composites like box never resort to finite
// differences.

#pragma once

#include <dbarbie/geometry.hpp>

namespace dbarbie {

using Form01Jet1 = std::array<Jet1, 2>;
using Form01Jet2 = std::array<Jet2, 2>;

// ---------------------------------------------------------------------------
// First-order pieces
// ---------------------------------------------------------------------------

inline Form01Jet1 dbar_scalar(const FrameJet& F, const Jet2& f) {
  return {apply_antiholo(F.l, f), apply_antiholo(F.n, f)};
}

inline cplx dbar_one(const FrameJet& F, const Form01Jet1& u) {
  return apply_antiholo(F.l, u[1]) - apply_antiholo(F.n, u[0]) - 2.0 * F.c.v * u[0].v;
}

inline Jet1 dbar_one_jet(const FrameJet& F, const Form01Jet2& u) {
  return apply_antiholo(F.l, u[1]) - apply_antiholo(F.n, u[0]) -
         2.0 * (F.c * jet1_of(u[0]));
}

inline cplx dbar_star_one(const FrameJet& F, const Form01Jet1& u) {
  return -2.0 * (apply_holo(F.l, u[0]) + apply_holo(F.n, u[1]) +
                 2.0 * std::conj(F.c.v) * u[1].v);
}

inline Jet1 dbar_star_one_jet(const FrameJet& F, const Form01Jet2& u) {
  return -2.0 * (apply_holo(F.l, u[0]) + apply_holo(F.n, u[1]) +
                 2.0 * (conj(F.c) * jet1_of(u[1])));
}

inline std::array<cplx, 2> dbar_star_two(const FrameJet& F, const Jet1& s) {
  return {2.0 * apply_holo(F.n, s), -2.0 * apply_holo(F.l, s)};
}

// ---------------------------------------------------------------------------
// Second-order: the (0,1) frame Laplacian
// ---------------------------------------------------------------------------

inline std::array<cplx, 2> box_one(const FrameJet& F, const Form01Jet2& u) {
  const Jet1 g = dbar_star_one_jet(F, u);
  const Jet1 h = dbar_one_jet(F, u);
  return {2.0 * apply_antiholo(F.l, g) + 4.0 * apply_holo(F.n, h),
          2.0 * apply_antiholo(F.n, g) - 4.0 * apply_holo(F.l, h)};
}

// ---------------------------------------------------------------------------
// Conormal operator
// ---------------------------------------------------------------------------

inline std::array<cplx, 2> conormal(const FrameJet& F, const Form01Jet1& u) {
  return {2.0 * (apply_antiholo(F.n, u[0]) - apply_antiholo(F.l, u[1])) +
              4.0 * F.c.v * u[0].v,
          2.0 * (apply_holo(F.l, u[0]) + apply_holo(F.n, u[1])) +
              4.0 * std::conj(F.c.v) * u[1].v};
}

inline std::array<cplx, 2> conormal(const FrameJet& F, const Form01Jet2& u) {
  return conormal(F, Form01Jet1{jet1_of(u[0]), jet1_of(u[1])});
}

// ---------------------------------------------------------------------------
// Coefficient conversion carried through jets
// ---------------------------------------------------------------------------

// Frame coefficients of a (0,1)-form given in standard coordinates:
// (u_f)_k = sum_i conj(M_ik) u_std_i with M = [l | n].
inline Form01Jet2 to_frame_jets(const FrameJet& F, const Form01Jet2& u_std) {
  return {conj(F.l[0]) * u_std[0] + conj(F.l[1]) * u_std[1],
          conj(F.n[0]) * u_std[0] + conj(F.n[1]) * u_std[1]};
}

// Value-level inverse: standard coefficients from frame values.
inline C2 frame_values_to_standard(const Frame& f, const C2& u_frame) {
  return {f.l[0] * u_frame[0] + f.n[0] * u_frame[1],
          f.l[1] * u_frame[0] + f.n[1] * u_frame[1]};
}

// Pointwise Hermitian norms induced by the metric:
// (0,1) forms: (u, u) = 2 (|u1|^2 + |u2|^2); (0,2): 4 |s|^2.
inline double norm01_sq(const C2& u) { return 2.0 * abs2(u); }
inline double norm02_sq(cplx s) { return 4.0 * std::norm(s); }

}  // namespace dbarbie
