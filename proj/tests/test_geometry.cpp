// Frame, pairing, and basis-change identities on the unit sphere in C^2.

#include <catch2/catch_amalgamated.hpp>
#include <dbarbie/geometry.hpp>

#include <random>

using namespace dbarbie;

namespace {

std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

C2 random_sphere(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  C2 z{cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
  const double r = std::sqrt(abs2(z));
  return {z[0] / r, z[1] / r};
}

C2 random_ball(std::mt19937_64& rng, double rmin = 0.2, double rmax = 0.95) {
  std::uniform_real_distribution<double> u(rmin, rmax);
  const C2 z = random_sphere(rng);
  const double r = u(rng);
  return {r * z[0], r * z[1]};
}

}  // namespace

TEST_CASE("frame orthonormality and bracket symmetry", "[geometry]") {
  auto rng = make_rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const C2 z = random_sphere(rng);
    const Frame f = ball_frame(z);
    REQUIRE(std::abs(pair_ff(f.l, f.l) - 0.5) < 1e-14);
    REQUIRE(std::abs(pair_ff(f.n, f.n) - 0.5) < 1e-14);
    REQUIRE(std::abs(pair_ff(f.l, f.n)) < 1e-14);

    const C2 w = random_sphere(rng);
    const Frame fw = ball_frame(w);
    // Conjugate symmetry of the frame-frame bracket.
    REQUIRE(std::abs(pair_ff(f.l, fw.n) - std::conj(pair_ff(fw.n, f.l))) < 1e-14);
  }
}

TEST_CASE("chordal Pythagoras identity on the sphere", "[geometry]") {
  auto rng = make_rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const C2 z = random_sphere(rng);
    const C2 w = random_sphere(rng);
    const double lhs = std::norm(bracket_N_disp(z, w)) + std::norm(bracket_L_disp(z, w));
    REQUIRE(std::abs(lhs - rho(z, w)) < 1e-12);
  }
}

TEST_CASE("closed displacement brackets match the pairings", "[geometry]") {
  auto rng = make_rng(55);
  for (int trial = 0; trial < 500; ++trial) {
    const C2 z = random_ball(rng);
    const C2 w = random_sphere(rng);
    const Frame f = ball_frame(z);
    const C2 disp = w - z;
    REQUIRE(std::abs(pair_fv(f.n, disp) - bracket_N_disp(z, w)) < 1e-13);
    REQUIRE(std::abs(pair_fv(f.l, disp) - bracket_L_disp(z, w)) < 1e-13);
  }
}

TEST_CASE("frame-frame brackets on the sphere have closed forms", "[geometry]") {
  auto rng = make_rng(56);
  for (int trial = 0; trial < 500; ++trial) {
    const C2 z = random_sphere(rng);
    const C2 w = random_sphere(rng);
    const Frame fz = ball_frame(z), fw = ball_frame(w);
    const cplx a = a_form(z, w);
    REQUIRE(std::abs(pair_ff(fw.l, fz.l) - 0.5 * a) < 1e-13);
    REQUIRE(std::abs(pair_ff(fw.n, fz.n) - 0.5 * std::conj(a)) < 1e-13);
    REQUIRE(std::abs(pair_ff(fw.n, fz.l) - 0.5 * (w[0] * z[1] - w[1] * z[0])) < 1e-13);
    // On the sphere rho = 2 - 2 Re a.
    REQUIRE(std::abs(rho(z, w) - (2.0 - 2.0 * a.real())) < 1e-13);
  }
}

TEST_CASE("basis change is unitary", "[geometry]") {
  auto rng = make_rng(99);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 1000; ++trial) {
    const C2 z = random_sphere(rng);
    const C2 u{cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
    const C2 fr = to_frame(z, u);
    const C2 back = to_standard(z, fr);
    REQUIRE(std::abs(back[0] - u[0]) < 1e-13);
    REQUIRE(std::abs(back[1] - u[1]) < 1e-13);
    REQUIRE(std::abs(abs2(fr) - abs2(u)) < 1e-12);
  }
  // At z = (1, 0): l = (0, -1), n = (1, 0), so (s, t) maps back to
  // u_std = (t, -s).
  const C2 e1{1.0, 0.0};
  const C2 st{cplx(0.3, 0.1), cplx(-0.2, 0.7)};
  const C2 u = to_standard(e1, st);
  REQUIRE(std::abs(u[0] - st[1]) < 1e-15);
  REQUIRE(std::abs(u[1] + st[0]) < 1e-15);
}

TEST_CASE("frames from a defining function agree with the closed frame", "[geometry]") {
  auto rng = make_rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const C2 z = random_ball(rng, 0.3, 1.4);
    const Frame f = ball_frame(z);
    const JetVars v = jet_seed(z);
    for (const Jet2& delta : {defining_ball(v), defining_quadratic(v)}) {
      const FrameLite gf = frame_from_defining(delta);
      for (int i = 0; i < 2; ++i) {
        REQUIRE(std::abs(gf.l[i].v - f.l[i]) < 1e-13);
        REQUIRE(std::abs(gf.n[i].v - f.n[i]) < 1e-13);
      }
      const double r = std::sqrt(abs2(z));
      REQUIRE(std::abs(gf.c - 0.75 / r) < 1e-12);
    }
  }
}

TEST_CASE("frame jets: commutator and connection scalar", "[geometry]") {
  auto rng = make_rng(70);
  for (int trial = 0; trial < 200; ++trial) {
    const C2 z = random_ball(rng, 0.3, 1.4);
    const double r = std::sqrt(abs2(z));
    const FrameJet F = ball_frame_jets(z);
    // [L, N] = (3 / (2r)) L on the ball.
    for (int j = 0; j < 2; ++j) {
      const Jet1 comm = apply_holo(F.l, F.n[j]) - apply_holo(F.n, F.l[j]);
      REQUIRE(std::abs(comm.v - 1.5 / r * F.l[j].v) < 1e-12);
    }
    REQUIRE(std::abs(F.c.v - 0.75 / r) < 1e-13);
    // grad c: c = 3/(4r) gives dc/dz_i = -3 conj(z_i) / (8 r^3).
    REQUIRE(std::abs(F.c.d[0] - (-3.0 * std::conj(z[0]) / (8.0 * r * r * r))) < 1e-12);
    REQUIRE(std::abs(F.c.d[3] - (-3.0 * z[1] / (8.0 * r * r * r))) < 1e-12);
  }
}

TEST_CASE("Levi density is positive and tangential forms saturate it", "[geometry]") {
  auto rng = make_rng(500);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 500; ++trial) {
    const C2 z = random_sphere(rng);
    const C2 a{cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
    const double lv = levi_density(a, z);
    REQUIRE(lv >= 0.25 * abs2(a) - 1e-13);
    // Tangential: a = s * l(z) has radial pairing zero.
    const Frame f = ball_frame(z);
    const cplx s(g(rng), g(rng));
    const C2 at{s * f.l[0], s * f.l[1]};
    REQUIRE(std::abs(levi_density(at, z) - 0.5 * abs2(at)) < 1e-13);
  }
}
