// Newton potential, trace extraction, and layer potentials against
// closed-form oracles on the unit ball.

#include <catch2/catch_amalgamated.hpp>
#include <dbarbie/fields.hpp>
#include <dbarbie/potentials.hpp>

using namespace dbarbie;

namespace {

double cdist(const C2& a, const C2& b) {
  return std::sqrt(abs2(C2{a[0] - b[0], a[1] - b[1]}));
}

C2 on_sphere(const C2& d) {
  const double n = std::sqrt(abs2(d));
  return {d[0] / n, d[1] / n};
}

}  // namespace

TEST_CASE("Newton potential of constant data", "[potentials]") {
  // For f == v on the ball, G[f](x) = (|x|^2/8 - 1/4) v: the radial profile
  // solves s'' + 3 s'/r = 1 and matches the free-space potential outside.
  const C2 v{cplx(0.7, -0.3), cplx(0.2, 0.5)};
  const auto f = [&](const C2&) { return v; };
  for (auto [nr, ne] : {std::pair{10, 6}, {14, 8}}) {
    const VolumeGrid vol = VolumeGrid::ball(nr, ne, 2 * ne);
    for (double r : {0.0, 0.35, 0.6, 0.8}) {
      const C2 x{cplx(r * 0.6, r * 0.48), cplx(-r * 0.512, r * 0.36)};
      const double s = abs2(x) / 8.0 - 0.25;
      REQUIRE(cdist(newton_potential(x, f, vol), C2{s * v[0], s * v[1]}) <
              1e-13);
    }
    // Boundary trace: s(1) = -1/8, mapped back to standard coordinates.
    const C2 z = on_sphere({cplx(0.6, 0.48), cplx(-0.512, 0.36)});
    const C2 tr =
        frame_values_to_standard(ball_frame(z), newton_gamma_trace(z, f, vol));
    REQUIRE(cdist(tr, C2{-0.125 * v[0], -0.125 * v[1]}) < 1e-13);
  }
}

TEST_CASE("Newton potential reproduces compatible fields", "[potentials]") {
  // The boundary-compatible constant field equals the Newton potential of
  // its own Laplacian; the first radial field has G[24 r^2 e1] = (r^4-3) e1,
  // where the constant is G[f](0) = -(24 / 4 pi^2) vol(B) = -3.
  const ManufacturedField bc = bc_field_constant();
  const ManufacturedField rad = radial_first_direction();
  const auto fb = [&](const C2& w) { return field_laplacian(bc, w); };
  const auto fr = [&](const C2& w) { return field_laplacian(rad, w); };
  for (auto [nr, ne] : {std::pair{10, 6}, {14, 8}}) {
    const VolumeGrid vol = VolumeGrid::ball(nr, ne, 2 * ne);
    for (double r : {0.2, 0.5, 0.75}) {
      const C2 x{cplx(-r * 0.36, r * 0.48), cplx(r * 0.6, r * 0.512)};
      REQUIRE(cdist(newton_potential(x, fb, vol), field_values(bc, x)) <
              1e-12);
      const double q = abs2(x);
      REQUIRE(cdist(newton_potential(x, fr, vol), C2{q * q - 3.0, 0.0}) <
              1e-12);
    }
  }
}

TEST_CASE("trace extrapolation bias on the compatible field", "[potentials]") {
  // In pure polar mode the gamma trace of G[lap bc-constant] carries the
  // quadratic-extrapolation bias exactly: trace_1 = 1/3 + 4 h^3, trace_2 = 0,
  // and the conormal trace vanishes to machine precision.
  const ManufacturedField bc = bc_field_constant();
  const auto f = [&](const C2& w) { return field_laplacian(bc, w); };
  const VolumeGrid tiny = VolumeGrid::ball(2, 2, 4);
  const PatchRule rule = PatchRule::polar();
  const TraceOptions opt{};
  const double bias = 4.0 * opt.h * opt.h * opt.h;
  for (auto d : {C2{cplx(0.28, -0.96), cplx(0.0, 0.0)},
                 C2{cplx(0.5, 0.1), cplx(-0.64, 0.576)},
                 C2{cplx(0.0, 0.0), cplx(0.6, -0.8)}}) {
    const C2 z = on_sphere(d);
    const C2 g = newton_gamma_trace(z, f, tiny, rule, opt);
    REQUIRE(std::abs(g[0] - (1.0 / 3.0 + bias)) < 1e-12);
    REQUIRE(std::abs(g[1]) < 1e-12);
    REQUIRE(std::sqrt(abs2(newton_conormal_trace(z, f, tiny, rule, opt))) <
            1e-12);
  }
}

TEST_CASE("conormal of the Newton potential", "[potentials]") {
  // bc-constant oracle: B G[f](x) = (4 - 4 |x|^2) e1 in frame coordinates.
  const ManufacturedField bc = bc_field_constant();
  const auto f = [&](const C2& w) { return field_laplacian(bc, w); };
  const VolumeGrid vol = VolumeGrid::ball(14, 8, 16);
  for (double r : {0.3, 0.6, 0.85}) {
    for (auto d : {C2{cplx(0.28, -0.96), cplx(0.0, 0.0)},
                   C2{cplx(0.1, 0.3), cplx(-0.6, 0.73)}}) {
      const C2 zd = on_sphere(d);
      const C2 x{r * zd[0], r * zd[1]};
      REQUIRE(cdist(newton_conormal(x, f, vol), C2{4.0 - 4.0 * r * r, 0.0}) <
              2e-2);
    }
  }
}

TEST_CASE("double layer reproduces constant fields", "[potentials]") {
  // The frame restriction of a constant standard field is an exact
  // eigenfunction: DL[to_frame(., v)](x) = to_frame(x, v) inside the ball.
  const C2 v{cplx(0.3, 0.7), cplx(-0.5, 0.2)};
  for (int n : {5, 8}) {
    const BoundaryGrid g = BoundaryGrid::hopf(n, 2 * n);
    std::vector<C2> dens(g.nodes.size());
    for (std::size_t j = 0; j < g.nodes.size(); ++j)
      dens[j] = to_frame(g.nodes[j].z, v);
    for (double r : {0.4, 0.65}) {
      const C2 x{cplx(0.1, r * 0.9), cplx(r * 0.42, -0.05)};
      REQUIRE(cdist(double_layer(x, g, dens), to_frame(x, v)) < 1e-13);
    }
  }
}

TEST_CASE("interior representation from volume data and traces",
          "[potentials]") {
  // u = G[f] + DL[gamma u] - SL[B u] at interior points, with the layer
  // densities taken from the exact field traces.
  const VolumeGrid vol = VolumeGrid::ball(12, 8, 16);
  const BoundaryGrid g = BoundaryGrid::hopf(8, 16);
  const C2 xs[3] = {{cplx(0.3, 0.1), cplx(-0.2, 0.15)},
                    {cplx(-0.1, 0.45), cplx(0.2, 0.3)},
                    {cplx(0.55, 0.0), cplx(0.0, -0.25)}};
  struct Case {
    ManufacturedField fld;
    double tol;
  };
  for (const Case& c : {Case{bc_field_constant(), 5e-4},
                        Case{bc_field_linear(), 5e-4},
                        Case{mix_field(), 5e-3}}) {
    const auto f = [&](const C2& w) { return field_laplacian(c.fld, w); };
    std::vector<C2> psi(g.nodes.size()), phi(g.nodes.size());
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      psi[j] = field_frame_values(c.fld, g.nodes[j].z);
      phi[j] = field_conormal(c.fld, g.nodes[j].z);
    }
    for (const C2& x : xs) {
      const C2 G = newton_potential(x, f, vol);
      const C2 dls =
          frame_values_to_standard(ball_frame(x), double_layer(x, g, psi));
      const C2 sls =
          frame_values_to_standard(ball_frame(x), single_layer(x, g, phi));
      const C2 got{G[0] + dls[0] - sls[0], G[1] + dls[1] - sls[1]};
      REQUIRE(cdist(got, field_values(c.fld, x)) < c.tol);
    }
  }
}

TEST_CASE("patch placement does not move the potential", "[potentials]") {
  // Gaussian data, two very different quadrature splits: a blend grid with
  // a small singular patch versus the all-polar rule.
  const auto f = volume_data_by_name("gauss-e1");
  const VolumeGrid blend = VolumeGrid::ball(14, 8, 16);
  const PatchRule small{12, 6, 12, 0.35};
  const VolumeGrid tiny = VolumeGrid::ball(2, 2, 4);
  const PatchRule polar = PatchRule::polar();
  for (double r : {0.3, 0.7}) {
    const C2 x{cplx(r * 0.8, 0.0), cplx(0.0, r * 0.6)};
    REQUIRE(cdist(newton_potential(x, f, blend, small),
                  newton_potential(x, f, tiny, polar)) < 1e-4);
  }
}

TEST_CASE("hand-expanded volume data matches the jet Laplacian",
          "[potentials][fields]") {
  const C2 pts[4] = {{cplx(0.1, -0.2), cplx(0.3, 0.15)},
                     {cplx(-0.45, 0.3), cplx(0.2, -0.5)},
                     {cplx(0.7, 0.1), cplx(-0.1, 0.4)},
                     {cplx(0.22, 0.31), cplx(0.05, -0.07)}};
  for (const std::string& name : field_names()) {
    const auto fast = volume_data_by_name(name);
    const ManufacturedField fld = field_by_name(name);
    for (const C2& x : pts)
      REQUIRE(cdist(fast(x), field_laplacian(fld, x)) < 1e-12);
  }
  REQUIRE_THROWS_AS(volume_data_by_name("no-such-field"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(field_by_name("no-such-field"), std::invalid_argument);
}

TEST_CASE("off-center bump properties", "[potentials][fields]") {
  const auto f = volume_data_by_name("bump:offcenter");
  // Peak height 10 at the center (0.2, 0.3), zero outside radius 0.45.
  REQUIRE(std::abs(f(C2{cplx(0.2, 0.0), cplx(0.3, 0.0)})[1] - 10.0) < 1e-14);
  REQUIRE(std::abs(f(C2{cplx(0.2, 0.0), cplx(0.3, 0.0)})[0]) == 0.0);
  REQUIRE(abs2(f(C2{cplx(0.7, 0.0), cplx(0.3, 0.0)})) == 0.0);
  REQUIRE(abs2(f(C2{cplx(-0.4, 0.2), cplx(0.1, -0.5)})) == 0.0);
  // Smooth decay inside the support.
  const double mid = f(C2{cplx(0.4, 0.0), cplx(0.3, 0.0)})[1].real();
  REQUIRE(mid > 0.0);
  REQUIRE(mid < 10.0);
  // Genuinely off-center: coordinate reflections change the data.
  const C2 p{cplx(0.25, 0.1), cplx(0.35, -0.05)};
  const C2 flip{-p[0], p[1]};
  REQUIRE(std::abs(f(p)[1] - f(flip)[1]) > 1e-3);
}
