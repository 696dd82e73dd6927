// Exactness of the Wirtinger jet arithmetic against hand-computed
// derivatives of concrete fields.

#include <catch2/catch_amalgamated.hpp>
#include <dbarbie/jet.hpp>

#include <random>

using namespace dbarbie;

namespace {

C2 random_point(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  return {scale * cplx(g(rng), g(rng)), scale * cplx(g(rng), g(rng))};
}

}  // namespace

TEST_CASE("polynomial jets match hand derivatives", "[jet]") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    const C2 z = random_point(rng);
    const JetVars v = jet_seed(z);
    // f = z1^2 z2b + 3 z2 z1b
    const Jet2 f = v[0] * v[0] * v[3] + 3.0 * (v[1] * v[2]);
    const cplx z1 = z[0], z2 = z[1], z1b = std::conj(z[0]), z2b = std::conj(z[1]);
    REQUIRE(std::abs(f.v - (z1 * z1 * z2b + 3.0 * z2 * z1b)) < 1e-14);
    REQUIRE(std::abs(f.d[0] - 2.0 * z1 * z2b) < 1e-14);
    REQUIRE(std::abs(f.d[1] - 3.0 * z1b) < 1e-14);
    REQUIRE(std::abs(f.d[2] - 3.0 * z2) < 1e-14);
    REQUIRE(std::abs(f.d[3] - z1 * z1) < 1e-14);
    REQUIRE(std::abs(f.h[0][0] - 2.0 * z2b) < 1e-14);
    REQUIRE(std::abs(f.h[0][3] - 2.0 * z1) < 1e-14);
    REQUIRE(std::abs(f.h[1][2] - 3.0) < 1e-14);
    REQUIRE(std::abs(f.h[2][2]) < 1e-14);
    // Hessian symmetry
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) REQUIRE(std::abs(f.h[i][j] - f.h[j][i]) < 1e-14);
  }
}

TEST_CASE("conjugation swaps slots exactly", "[jet]") {
  std::mt19937_64 rng(777);
  const C2 z = random_point(rng);
  const JetVars v = jet_seed(z);
  const Jet2 f = v[0] * v[0] * v[3] + cplx(0.0, 2.0) * (v[1] * v[1]);
  const Jet2 g = conj(f);
  REQUIRE(std::abs(g.v - std::conj(f.v)) < 1e-15);
  REQUIRE(std::abs(g.d[2] - std::conj(f.d[0])) < 1e-15);
  REQUIRE(std::abs(g.d[1] - std::conj(f.d[3])) < 1e-15);
  REQUIRE(std::abs(g.h[2][3] - std::conj(f.h[0][1])) < 1e-15);
}

TEST_CASE("sqrt jet reproduces |z| derivatives", "[jet]") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const C2 z = random_point(rng);
    const double r = std::sqrt(abs2(z));
    const JetVars v = jet_seed(z);
    const Jet2 rj = jet_r(v);
    REQUIRE(std::abs(rj.v - r) < 1e-13 * r);
    // d r / d z_i = conj(z_i) / (2 r)
    REQUIRE(std::abs(rj.d[0] - std::conj(z[0]) / (2.0 * r)) < 1e-13);
    REQUIRE(std::abs(rj.d[3] - z[1] / (2.0 * r)) < 1e-13);
    // d^2 r / dz1 dz1b = 1/(2r) - |z1|^2/(4 r^3)
    const cplx expected = 0.5 / r - z[0] * std::conj(z[0]) / (4.0 * r * r * r);
    REQUIRE(std::abs(rj.h[0][2] - expected) < 1e-13);
    // d^2 r / dz1 dz2 = -z1b z2b / (4 r^3)
    const cplx expected12 = -std::conj(z[0]) * std::conj(z[1]) / (4.0 * r * r * r);
    REQUIRE(std::abs(rj.h[0][1] - expected12) < 1e-13);
  }
}

TEST_CASE("division and exp jets", "[jet]") {
  std::mt19937_64 rng(99);
  const C2 z = random_point(rng);
  const JetVars v = jet_seed(z);
  const Jet2 q = v[0] / (v[1] * v[3] + 2.0);  // z1 / (|z2|^2 + 2)
  const double s = std::norm(z[1]) + 2.0;
  REQUIRE(std::abs(q.v - z[0] / s) < 1e-14);
  REQUIRE(std::abs(q.d[1] - (-z[0] * std::conj(z[1]) / (s * s))) < 1e-13);

  const Jet2 e = exp(v[0] * v[1]);
  const cplx ev = std::exp(z[0] * z[1]);
  REQUIRE(std::abs(e.v - ev) < 1e-12 * std::abs(ev));
  REQUIRE(std::abs(e.d[0] - z[1] * ev) < 1e-12 * std::abs(ev) * (1.0 + std::abs(z[1])));
  REQUIRE(std::abs(e.h[0][1] - (1.0 + z[0] * z[1]) * ev) < 1e-11 * std::abs(ev));
}

TEST_CASE("flat Laplacian of radial powers", "[jet]") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const C2 z = random_point(rng);
    const JetVars v = jet_seed(z);
    const double s = abs2(z);
    REQUIRE(std::abs(laplacian(jet_rsq(v)) - 8.0) < 1e-12);
    // |z|^4 has Laplacian 24 |z|^2 in R^4.
    REQUIRE(std::abs(laplacian(jet_rsq(v) * jet_rsq(v)) - 24.0 * s) < 1e-11 * (1.0 + s));
    // Harmonic: Re(z1 z2) as (z1 z2 + z1b z2b)/2.
    const Jet2 harm = 0.5 * (v[0] * v[1] + v[2] * v[3]);
    REQUIRE(std::abs(laplacian(harm)) < 1e-13);
  }
}
