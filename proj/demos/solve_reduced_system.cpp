// SPDX-License-Identifier: MIT
//
// Full pipeline on one grid: extract gamma/B traces of the Newton potential
// of f = -box u at every quadrature node, assemble the reduced boundary
// system, solve for the densities (psi_1, phi_2), and compare against the
// exact answer for the compatible constant field (psi_1 = 1/3, phi_2 = 0).
//
// Runs in roughly half a minute; pass a different grid order as argv[1].

#include <dbarbie/bie.hpp>
#include <dbarbie/fields.hpp>
#include <dbarbie/potentials.hpp>

#include <cstdio>
#include <cstdlib>

using namespace dbarbie;

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 5;
  const ManufacturedField fld = bc_field_constant();
  const auto f = volume_data_by_name(fld.name);

  const BoundaryGrid g = BoundaryGrid::hopf(n, 2 * n);
  const EpsLevels lv = EpsLevels::for_grid(g);
  const std::size_t q = g.quad_count();
  std::printf("grid hopf(%d, %d): %zu quadrature nodes\n", n, 2 * n, q);

  // Newton traces in pure polar mode; the patch covers the whole ball.
  const VolumeGrid tiny = VolumeGrid::ball(2, 2, 4);
  const PatchRule rule{2 * n, n, 2 * n, 4.0};
  const TraceOptions opt{0.2 / n};
  Eigen::VectorXcd gamma_g(2 * q), conormal_g(2 * q);
  for (std::size_t j = 0; j < q; ++j) {
    const C2 gam = newton_gamma_trace(g.nodes[j].z, f, tiny, rule, opt);
    const C2 con = newton_conormal_trace(g.nodes[j].z, f, tiny, rule, opt);
    gamma_g(2 * j) = gam[0];
    gamma_g(2 * j + 1) = gam[1];
    conormal_g(2 * j) = con[0];
    conormal_g(2 * j + 1) = con[1];
  }
  std::printf("traces done\n");

  const ReducedSystem sys = build_reduced_system(g, lv, gamma_g, conormal_g);
  const SolveResult sol = solve_reduced(sys);
  std::printf("cond ~ %.1f, ridge %.1e, residual RMS per block "
              "[%.2e %.2e %.2e %.2e]\n",
              sol.cond, sol.ridge, sol.block_rms[0], sol.block_rms[1],
              sol.block_rms[2], sol.block_rms[3]);

  // Weighted L2 error against the exact densities.
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < q; ++j) {
    const double w = g.nodes[j].w;
    num += w * (std::norm(sol.x(2 * j) - 1.0 / 3.0) +
                std::norm(sol.x(2 * j + 1)));
    den += w * std::norm(cplx(1.0 / 3.0));
  }
  std::printf("density rel error %.3e (trace-bias prediction %.3e)\n",
              std::sqrt(num / den), 12.0 * std::pow(opt.h, 3));
  return 0;
}
