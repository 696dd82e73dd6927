// SPDX-License-Identifier: MIT
//
// Manufactured (0,1)-form fields on the ball.  Each field carries its
// standard coefficients as 2-jets; volume data f = componentwise Laplacian
// of the standard coefficients, boundary traces, and conormal traces are
// derived from the jets, so every catalog entry is usable in the Green
// representation u = G[f] + DL[gamma u] - SL[B u] without per-field
// hand-derived data.
//
// The boundary-compatible family
//
//     u = (conj(z2) q(|z|^2) h(z), -conj(z1) q(|z|^2) h(z)),   q(x) = 1 - 2x/3,
//
// is tangential for every h (the normal frame coefficient vanishes
// identically) and has conormal (4 - 4|z|^2) h e_1 + 2 q (conj(z2) d1 h -
// conj(z1) d2 h) e_2, so with holomorphic h both admissibility conditions
// hold on the sphere: the normal trace and the first conormal coefficient
// vanish there.  Its reduced-system densities are psi_1 = h/3 and
// phi_2 = (2/3)(conj(z2) d1 h - conj(z1) d2 h) on the sphere.

#pragma once

#include <dbarbie/forms.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbarbie {

struct ManufacturedField {
  std::string name;
  std::function<std::array<Jet2, 2>(const JetVars&)> u_std;
};

// Standard coefficients at a point.
inline C2 field_values(const ManufacturedField& f, const C2& x) {
  const auto u = f.u_std(jet_seed(x));
  return {u[0].v, u[1].v};
}

// Frame coefficients at a point away from the origin.
inline C2 field_frame_values(const ManufacturedField& f, const C2& x) {
  return to_frame(x, field_values(f, x));
}

// Volume data of the Green representation: f = componentwise standard
// Laplacian (the negative of the complex Laplacian of the form).
inline C2 field_laplacian(const ManufacturedField& f, const C2& x) {
  const auto u = f.u_std(jet_seed(x));
  return {laplacian(u[0]), laplacian(u[1])};
}

// Conormal trace in frame coefficients.
inline C2 field_conormal(const ManufacturedField& f, const C2& x) {
  const FrameJet F = ball_frame_jets(x);
  const auto u = f.u_std(jet_seed(x));
  const auto b = conormal(F, to_frame_jets(F, {u[0], u[1]}));
  return {b[0], b[1]};
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

// Boundary-compatible family member with h given as a jet expression.
inline ManufacturedField bc_field(std::string name,
                                  std::function<Jet2(const JetVars&)> h) {
  return {std::move(name), [h = std::move(h)](const JetVars& v) {
            const Jet2 q = 1.0 - (2.0 / 3.0) * jet_rsq(v);
            const Jet2 hv = h(v);
            return std::array<Jet2, 2>{v[3] * q * hv, -(v[2] * q * hv)};
          }};
}

inline ManufacturedField bc_field_constant() {
  return bc_field("bc-constant", [](const JetVars&) { return jet2_const(1.0); });
}

inline ManufacturedField bc_field_linear() {
  return bc_field("bc-linear", [](const JetVars& v) { return v[0]; });
}

inline ManufacturedField bc_field_transverse() {
  return bc_field("bc-transverse", [](const JetVars& v) { return v[1]; });
}

inline ManufacturedField bc_field_bilinear() {
  return bc_field("bc-bilinear", [](const JetVars& v) { return v[0] * v[1]; });
}

// Constant standard coefficients: f = 0 and the conormal vanishes
// identically, so the field equals the double layer of its own trace.
inline ManufacturedField constant_field(cplx c0, cplx c1) {
  return {"constant", [c0, c1](const JetVars&) {
            return std::array<Jet2, 2>{jet2_const(c0), jet2_const(c1)};
          }};
}

// Radially symmetric multiple of the first standard direction; its trace
// data favor no tangential direction, which makes it the control field of
// the rigidity probe.
inline ManufacturedField radial_first_direction() {
  return {"radial-e1", [](const JetVars& v) {
            const Jet2 r2 = jet_rsq(v);
            return std::array<Jet2, 2>{r2 * r2, jet2_const(0.0)};
          }};
}

// Multiple of the position field vanishing on the sphere; its normal frame
// coefficient is (|z|^2 - 1)|z|, so it lies in the domain of the adjoint.
inline ManufacturedField normal_vanishing_field() {
  return {"normal-vanishing", [](const JetVars& v) {
            const Jet2 s = jet_rsq(v) - 1.0;
            return std::array<Jet2, 2>{s * v[0], s * v[1]};
          }};
}

// Everywhere-tangential polynomial field outside the compatible family.
inline ManufacturedField tangential_field() {
  return {"tangential", [](const JetVars& v) {
            return std::array<Jet2, 2>{v[3] * v[0], -(v[2] * v[0])};
          }};
}

// Second tangential direction, quadratic in the other slot.
inline ManufacturedField tangential_second_field() {
  return {"tangential-2", [](const JetVars& v) {
            return std::array<Jet2, 2>{v[3] * v[1], -(v[2] * v[1])};
          }};
}

// Fields proportional to |z|^2 - 1: normal and tangential traces both
// vanish on the sphere, so they probe the interior terms of the basic
// estimate in each standard direction.
inline ManufacturedField defect_field_e1() {
  return {"defect-e1", [](const JetVars& v) {
            return std::array<Jet2, 2>{jet_rsq(v) - 1.0, jet2_const(0.0)};
          }};
}

inline ManufacturedField defect_field_e2() {
  return {"defect-e2", [](const JetVars& v) {
            return std::array<Jet2, 2>{jet2_const(0.0), jet_rsq(v) - 1.0};
          }};
}

inline ManufacturedField defect_field_mixed() {
  return {"defect-mixed", [](const JetVars& v) {
            const Jet2 s = jet_rsq(v) - 1.0;
            return std::array<Jet2, 2>{s * v[3], s * v[1]};
          }};
}

// Componentwise-harmonic holomorphic field: its volume data vanishes, so
// the Green representation reduces to the two layer terms.
inline ManufacturedField holo_field() {
  return {"holo:z1z2", [](const JetVars& v) {
            return std::array<Jet2, 2>{v[0] * v[1], jet2_const(0.0)};
          }};
}

// Generic mixed-degree field used as a smooth density source for the
// jump-relation checks; neither tangential nor compatible.
inline ManufacturedField mix_field() {
  return {"mix", [](const JetVars& v) {
            return std::array<Jet2, 2>{
                v[0] * v[3] + 0.3 * v[1],
                v[2] * v[2] + cplx(0.0, 0.5) * (v[1] * v[3])};
          }};
}

inline ManufacturedField zero_field() {
  return {"zero", [](const JetVars&) {
            return std::array<Jet2, 2>{jet2_const(0.0), jet2_const(0.0)};
          }};
}

// Non-polynomial field whose volume data is not captured by any local
// Taylor model, so it exercises the numerical part of the Newton
// potential.
inline ManufacturedField gaussian_field() {
  return {"gauss-e1", [](const JetVars& v) {
            return std::array<Jet2, 2>{exp(-jet_rsq(v)), jet2_const(0.0)};
          }};
}

// Fields exercising the Green representation: mixed harmonic and
// inhomogeneous polynomial coefficients alongside the catalog members.
inline std::vector<ManufacturedField> green_catalog() {
  std::vector<ManufacturedField> fields;
  fields.push_back(constant_field(1.0, cplx(0.5, -0.25)));
  fields.push_back({"poly-a", [](const JetVars& v) {
                      return std::array<Jet2, 2>{jet_rsq(v), v[0] * v[3]};
                    }});
  fields.push_back({"poly-b", [](const JetVars& v) {
                      return std::array<Jet2, 2>{v[0] * v[0] * v[2],
                                                 v[1] + cplx(0.0, 1.0) * v[2]};
                    }});
  fields.push_back(bc_field_constant());
  fields.push_back(bc_field_linear());
  fields.push_back(radial_first_direction());
  fields.push_back(gaussian_field());
  return fields;
}

// Tangential-on-the-boundary fields for the basic-estimate check: the
// compatible family, two generic tangential polynomials, and fields
// vanishing on the sphere.
inline std::vector<ManufacturedField> kmh_catalog() {
  std::vector<ManufacturedField> fields;
  fields.push_back(bc_field_constant());
  fields.push_back(bc_field_linear());
  fields.push_back(bc_field_transverse());
  fields.push_back(bc_field_bilinear());
  fields.push_back(normal_vanishing_field());
  fields.push_back(tangential_field());
  fields.push_back(tangential_second_field());
  fields.push_back(defect_field_e1());
  fields.push_back(defect_field_e2());
  fields.push_back(defect_field_mixed());
  return fields;
}

// ---------------------------------------------------------------------------
// Lookup by name
// ---------------------------------------------------------------------------

inline std::vector<ManufacturedField> full_catalog() {
  std::vector<ManufacturedField> fields = kmh_catalog();
  fields.push_back(constant_field(1.0, cplx(0.5, -0.25)));
  fields.push_back(radial_first_direction());
  fields.push_back(gaussian_field());
  fields.push_back(holo_field());
  fields.push_back(mix_field());
  fields.push_back(zero_field());
  for (auto& f : green_catalog()) {
    if (f.name == "poly-a" || f.name == "poly-b") fields.push_back(f);
  }
  return fields;
}

inline std::vector<std::string> field_names() {
  std::vector<std::string> names;
  for (const auto& f : full_catalog()) names.push_back(f.name);
  return names;
}

inline ManufacturedField field_by_name(const std::string& name) {
  for (auto& f : full_catalog()) {
    if (f.name == name) return f;
  }
  std::string msg = "unknown field '" + name + "'; catalog:";
  for (const auto& n : field_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

// ---------------------------------------------------------------------------
// Direct volume data
// ---------------------------------------------------------------------------

// Smooth bump supported in |z - c| < R, scaled to peak value 10.  The
// center sits off every coordinate axis, so the data is asymmetric under
// any sign flip or swap of the coordinates; the support stays inside the
// ball (|c| + R < 1) and away from the sphere, which makes the field it
// generates ideal for the rigidity probe: the Newton potential is the
// whole field, and its tangential trace at a boundary point is a genuine
// nonlocal average of the data.
inline double bump_scalar(const C2& z) {
  const double R = 0.45;
  const cplx d0 = z[0] - 0.2, d1 = z[1] - 0.3;
  const double q = (std::norm(d0) + std::norm(d1)) / (R * R);
  if (q >= 1.0) return 0.0;
  return 10.0 * std::exp(1.0 - 1.0 / (1.0 - q));
}

using VolumeData = std::function<C2(const C2&)>;

// Volume data by name: `bump:offcenter` is a pure source with no closed
// form field (second slot only, so its potential has a nonzero tangential
// trace); every manufactured field contributes its Laplacian.  The catalog
// members used in kernel-heavy loops get hand-expanded Laplacians (each is
// checked against the jet evaluation in the unit tests); everything else
// falls back to the jets.
inline VolumeData volume_data_by_name(const std::string& name) {
  if (name == "bump:offcenter")
    return [](const C2& z) { return C2{0.0, bump_scalar(z)}; };
  if (name == "zero" || name == "constant" || name == "holo:z1z2")
    return [](const C2&) { return C2{0.0, 0.0}; };
  if (name == "bc-constant")
    return [](const C2& z) {
      return C2{-8.0 * std::conj(z[1]), 8.0 * std::conj(z[0])};
    };
  if (name == "bc-linear")
    return [](const C2& z) {
      return C2{-(32.0 / 3.0) * z[0] * std::conj(z[1]),
                -4.0 + (40.0 / 3.0) * std::norm(z[0]) +
                    (8.0 / 3.0) * std::norm(z[1])};
    };
  if (name == "radial-e1")
    return [](const C2& z) { return C2{24.0 * abs2(z), 0.0}; };
  if (name == "gauss-e1")
    return [](const C2& z) {
      const double r2 = abs2(z);
      return C2{4.0 * std::exp(-r2) * (r2 - 2.0), 0.0};
    };
  if (name == "poly-a") return [](const C2&) { return C2{8.0, 0.0}; };
  if (name == "poly-b")
    return [](const C2& z) { return C2{8.0 * z[0], 0.0}; };
  if (name == "mix")
    return [](const C2&) { return C2{0.0, cplx(0.0, 2.0)}; };
  return [f = field_by_name(name)](const C2& z) {
    return field_laplacian(f, z);
  };
}

}  // namespace dbarbie
