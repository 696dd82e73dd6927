// SPDX-License-Identifier: MIT
//
// Wirtinger jets on C^2.
//
// Fields are treated as functions of the four formally independent
// variables (z1, z2, z1b, z2b).  A Jet2 carries the value, the four first
// derivatives, and the symmetric second-derivative block of a field at a
// point; a Jet1 carries value and first derivatives only.  Conjugation of
// a jet conjugates the coefficients and swaps holomorphic with
// antiholomorphic slots, so conj() is exact on jets of genuine functions
// of (z, zbar).
//
// This is all the automatic differentiation the frame calculus needs: the
// frame vector fields are first-order, and the complex Laplacian and the
// frame Laplacian consume exactly one Jet2.

#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace dbarbie {

using cplx = std::complex<double>;
using C2 = std::array<cplx, 2>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline C2 operator+(const C2& a, const C2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline C2 operator-(const C2& a, const C2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline C2 operator*(const cplx& s, const C2& a) { return {s * a[0], s * a[1]}; }
inline double abs2(const C2& a) { return std::norm(a[0]) + std::norm(a[1]); }

// Variable slots: 0 = z1, 1 = z2, 2 = conj(z1), 3 = conj(z2).
inline constexpr int kConjSlot[4] = {2, 3, 0, 1};

struct Jet1 {
  cplx v{};
  std::array<cplx, 4> d{};
};

struct Jet2 {
  cplx v{};
  std::array<cplx, 4> d{};
  std::array<std::array<cplx, 4>, 4> h{};
};

// ---------------------------------------------------------------------------
// Jet1 arithmetic
// ---------------------------------------------------------------------------

inline Jet1 jet1_const(cplx c) { return Jet1{c, {}}; }

inline Jet1 operator+(const Jet1& a, const Jet1& b) {
  Jet1 r{a.v + b.v, {}};
  for (int i = 0; i < 4; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}

inline Jet1 operator-(const Jet1& a, const Jet1& b) {
  Jet1 r{a.v - b.v, {}};
  for (int i = 0; i < 4; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}

inline Jet1 operator-(const Jet1& a) {
  Jet1 r{-a.v, {}};
  for (int i = 0; i < 4; ++i) r.d[i] = -a.d[i];
  return r;
}

inline Jet1 operator*(const Jet1& a, const Jet1& b) {
  Jet1 r{a.v * b.v, {}};
  for (int i = 0; i < 4; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}

inline Jet1 operator*(cplx s, const Jet1& a) {
  Jet1 r{s * a.v, {}};
  for (int i = 0; i < 4; ++i) r.d[i] = s * a.d[i];
  return r;
}

inline Jet1 operator*(const Jet1& a, cplx s) { return s * a; }
inline Jet1 operator+(const Jet1& a, cplx s) { Jet1 r = a; r.v += s; return r; }
inline Jet1 operator+(cplx s, const Jet1& a) { return a + s; }
inline Jet1 operator-(const Jet1& a, cplx s) { Jet1 r = a; r.v -= s; return r; }
inline Jet1 operator-(cplx s, const Jet1& a) { return -a + s; }

inline Jet1 conj(const Jet1& a) {
  Jet1 r{std::conj(a.v), {}};
  for (int i = 0; i < 4; ++i) r.d[i] = std::conj(a.d[kConjSlot[i]]);
  return r;
}

// Chain rule through a scalar function g with derivative g1 at a.v.
inline Jet1 compose(const Jet1& a, cplx g0, cplx g1) {
  Jet1 r{g0, {}};
  for (int i = 0; i < 4; ++i) r.d[i] = g1 * a.d[i];
  return r;
}

inline Jet1 inv(const Jet1& a) { return compose(a, 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet1 operator/(const Jet1& a, const Jet1& b) { return a * inv(b); }

inline Jet1 sqrt(const Jet1& a) {
  const cplx s = std::sqrt(a.v);
  return compose(a, s, 0.5 / s);
}

// ---------------------------------------------------------------------------
// Jet2 arithmetic
// ---------------------------------------------------------------------------

inline Jet2 jet2_const(cplx c) { return Jet2{c, {}, {}}; }

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r{a.v + b.v, {}, {}};
  for (int i = 0; i < 4; ++i) {
    r.d[i] = a.d[i] + b.d[i];
    for (int j = 0; j < 4; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
  }
  return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r{a.v - b.v, {}, {}};
  for (int i = 0; i < 4; ++i) {
    r.d[i] = a.d[i] - b.d[i];
    for (int j = 0; j < 4; ++j) r.h[i][j] = a.h[i][j] - b.h[i][j];
  }
  return r;
}

inline Jet2 operator-(const Jet2& a) {
  Jet2 r{-a.v, {}, {}};
  for (int i = 0; i < 4; ++i) {
    r.d[i] = -a.d[i];
    for (int j = 0; j < 4; ++j) r.h[i][j] = -a.h[i][j];
  }
  return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r{a.v * b.v, {}, {}};
  for (int i = 0; i < 4; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r.h[i][j] = a.h[i][j] * b.v + a.d[i] * b.d[j] + a.d[j] * b.d[i] + a.v * b.h[i][j];
  return r;
}

inline Jet2 operator*(cplx s, const Jet2& a) {
  Jet2 r{s * a.v, {}, {}};
  for (int i = 0; i < 4; ++i) {
    r.d[i] = s * a.d[i];
    for (int j = 0; j < 4; ++j) r.h[i][j] = s * a.h[i][j];
  }
  return r;
}

inline Jet2 operator*(const Jet2& a, cplx s) { return s * a; }
inline Jet2 operator+(const Jet2& a, cplx s) { Jet2 r = a; r.v += s; return r; }
inline Jet2 operator+(cplx s, const Jet2& a) { return a + s; }
inline Jet2 operator-(const Jet2& a, cplx s) { Jet2 r = a; r.v -= s; return r; }
inline Jet2 operator-(cplx s, const Jet2& a) { return -a + s; }

inline Jet2 conj(const Jet2& a) {
  Jet2 r{std::conj(a.v), {}, {}};
  for (int i = 0; i < 4; ++i) {
    r.d[i] = std::conj(a.d[kConjSlot[i]]);
    for (int j = 0; j < 4; ++j) r.h[i][j] = std::conj(a.h[kConjSlot[i]][kConjSlot[j]]);
  }
  return r;
}

// Chain rule through g with derivatives g1, g2 at a.v.
inline Jet2 compose(const Jet2& a, cplx g0, cplx g1, cplx g2) {
  Jet2 r{g0, {}, {}};
  for (int i = 0; i < 4; ++i) r.d[i] = g1 * a.d[i];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.h[i][j] = g2 * a.d[i] * a.d[j] + g1 * a.h[i][j];
  return r;
}

inline Jet2 inv(const Jet2& a) {
  const cplx w = 1.0 / a.v;
  return compose(a, w, -w * w, 2.0 * w * w * w);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }

inline Jet2 sqrt(const Jet2& a) {
  const cplx s = std::sqrt(a.v);
  return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet2 exp(const Jet2& a) {
  const cplx e = std::exp(a.v);
  return compose(a, e, e, e);
}

// ---------------------------------------------------------------------------
// Seeding and extraction
// ---------------------------------------------------------------------------

using JetVars = std::array<Jet2, 4>;

// Seed the four Wirtinger variables at the point z; the antiholomorphic
// slots carry the numerical conjugates.
inline JetVars jet_seed(const C2& z) {
  JetVars vars{};
  const cplx vals[4] = {z[0], z[1], std::conj(z[0]), std::conj(z[1])};
  for (int k = 0; k < 4; ++k) {
    vars[k].v = vals[k];
    vars[k].d[k] = 1.0;
  }
  return vars;
}

inline Jet1 jet1_of(const Jet2& a) { return Jet1{a.v, a.d}; }

// The k-th first derivative of a Jet2, itself carried to first order.
inline Jet1 d_slot(const Jet2& a, int k) { return Jet1{a.d[k], a.h[k]}; }

// |z|^2 and |z| as jets of the seeded variables.
inline Jet2 jet_rsq(const JetVars& v) { return v[0] * v[2] + v[1] * v[3]; }
inline Jet2 jet_r(const JetVars& v) { return sqrt(jet_rsq(v)); }

// Flat Laplacian (4 sum_i d^2/dz_i dz_i-bar) of a scalar carried as Jet2.
inline cplx laplacian(const Jet2& u) { return 4.0 * (u.h[0][2] + u.h[1][3]); }

}  // namespace dbarbie
