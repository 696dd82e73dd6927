// SPDX-License-Identifier: MIT
//
// Quadrature grids on the unit sphere S^3 in C^2 and on the solid ball.
//
// The sphere is parametrized in Hopf coordinates
//
//     z = (e^{i xi1} cos eta, e^{i xi2} sin eta),   eta in (0, pi/2),
//
// with surface measure d sigma = cos(eta) sin(eta) d eta d xi1 d xi2.
// Substituting u = cos(2 eta) turns the eta integral into du/4 on (-1, 1),
// where Gauss-Legendre nodes apply; both xi directions use equispaced
// (trapezoidal) nodes, which are spectrally accurate for the periodic
// directions.  Total measure: 2 pi^2.
//
// The xi grids start at 0 and n_xi is kept even, so the node set is closed
// under the reflections z2 -> -z2, z1 -> conj z1 and z2 -> conj z2.  Those
// symmetries make odd kernel components cancel exactly in punctured sums,
// which the raw-sum parity check exercises.
//
// The distinguished point (1, 0) sits at a coordinate pole and cannot carry
// weight without breaking the product structure; it is appended as a
// zero-weight probe node.  It participates as a collocation target only,
// never as a quadrature source or unknown.

#pragma once

#include <dbarbie/geometry.hpp>

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace dbarbie {

// Gauss-Legendre rule on [-1, 1] by Newton iteration on the Legendre
// recurrence.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

struct BoundaryNode {
  C2 z;
  double w;  // quadrature weight (zero for the probe node)
  Frame frame;
};

struct BoundaryGrid {
  int n_eta = 0;
  int n_xi = 0;
  std::vector<BoundaryNode> nodes;  // weighted nodes first, probe last

  std::size_t probe_index() const { return nodes.size() - 1; }
  std::size_t quad_count() const { return nodes.size() - 1; }

  static BoundaryGrid hopf(int n_eta, int n_xi) {
    if (n_eta < 2 || n_xi < 4 || n_xi % 2 != 0)
      throw std::invalid_argument("hopf grid requires n_eta >= 2 and even n_xi >= 4");
    BoundaryGrid g;
    g.n_eta = n_eta;
    g.n_xi = n_xi;
    std::vector<double> u, wu;
    gauss_legendre(n_eta, u, wu);
    const double dxi = 2.0 * kPi / n_xi;
    g.nodes.reserve(static_cast<std::size_t>(n_eta) * n_xi * n_xi + 1);
    for (int iu = 0; iu < n_eta; ++iu) {
      const double ce = std::sqrt(0.5 * (1.0 + u[iu]));
      const double se = std::sqrt(0.5 * (1.0 - u[iu]));
      const double wnode = (wu[iu] / 4.0) * dxi * dxi;
      for (int k1 = 0; k1 < n_xi; ++k1) {
        const cplx e1 = std::polar(1.0, dxi * k1);
        for (int k2 = 0; k2 < n_xi; ++k2) {
          const cplx e2 = std::polar(1.0, dxi * k2);
          const C2 z{ce * e1, se * e2};
          g.nodes.push_back(BoundaryNode{z, wnode, ball_frame(z)});
        }
      }
    }
    const C2 probe{1.0, 0.0};
    g.nodes.push_back(BoundaryNode{probe, 0.0, ball_frame(probe)});
    return g;
  }

  // Largest nearest-neighbor chordal distance among weighted nodes; the
  // singular-quadrature exclusion radii are chosen relative to it.
  double max_neighbor_spacing() const {
    const std::size_t n = quad_count();
    double hmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = 1e300;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        best = std::min(best, rho(nodes[i].z, nodes[j].z));
      }
      hmax = std::max(hmax, best);
    }
    return std::sqrt(hmax);
  }
};

struct VolumeNode {
  C2 z;
  double w;
};

// Product rule on the ball: Gauss-Legendre in the radius against the
// measure r^3 dr, Hopf rule in the angles.  The origin is never a node.
struct VolumeGrid {
  int n_r = 0, n_eta = 0, n_xi = 0;
  std::vector<VolumeNode> nodes;

  static VolumeGrid ball(int n_r, int n_eta, int n_xi) {
    VolumeGrid g;
    g.n_r = n_r;
    g.n_eta = n_eta;
    g.n_xi = n_xi;
    const BoundaryGrid sph = BoundaryGrid::hopf(n_eta, n_xi);
    std::vector<double> xr, wr;
    gauss_legendre(n_r, xr, wr);
    g.nodes.reserve(static_cast<std::size_t>(n_r) * sph.quad_count());
    for (int ir = 0; ir < n_r; ++ir) {
      const double r = 0.5 * (xr[ir] + 1.0);
      const double wrad = 0.5 * wr[ir] * r * r * r;
      for (std::size_t j = 0; j < sph.quad_count(); ++j) {
        const BoundaryNode& s = sph.nodes[j];
        g.nodes.push_back(VolumeNode{{r * s.z[0], r * s.z[1]}, wrad * s.w});
      }
    }
    return g;
  }
};

// ---------------------------------------------------------------------------
// CSV export
// ---------------------------------------------------------------------------

inline void csv_number(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

inline void write_grid_csv(std::ostream& os, const BoundaryGrid& g) {
  os << "x1,y1,x2,y2,weight,l1_re,l1_im,l2_re,l2_im,n1_re,n1_im,n2_re,n2_im\n";
  for (const BoundaryNode& nd : g.nodes) {
    const double cols[13] = {
        nd.z[0].real(), nd.z[0].imag(), nd.z[1].real(), nd.z[1].imag(), nd.w,
        nd.frame.l[0].real(), nd.frame.l[0].imag(),
        nd.frame.l[1].real(), nd.frame.l[1].imag(),
        nd.frame.n[0].real(), nd.frame.n[0].imag(),
        nd.frame.n[1].real(), nd.frame.n[1].imag()};
    for (int c = 0; c < 13; ++c) {
      if (c) os << ',';
      csv_number(os, cols[c]);
    }
    os << '\n';
  }
}

}  // namespace dbarbie
