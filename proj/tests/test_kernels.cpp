// Layer kernels: closed boundary forms, generic frame-built variants, and
// finite-difference oracles for the jet-differentiated conormal kernels.

#include <catch2/catch_amalgamated.hpp>
#include <dbarbie/kernels.hpp>

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

C2 scaled(const C2& z, double r) { return {r * z[0], r * z[1]}; }

double mat_dist(const Mat2& a, const Mat2& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Frame frame_values(const FrameLite& f) {
  return Frame{{f.l[0].v, f.l[1].v}, {f.n[0].v, f.n[1].v}};
}

// Conormal of a matrix-valued kernel column by column, with the Wirtinger
// derivatives replaced by central finite differences.  Serves as an
// independent oracle for the jet-differentiated kernels.
template <class F>
Mat2 fd_conormal(F&& kernel, const C2& x, double h = 1e-5) {
  Mat2 dz[2], dzb[2];
  for (int i = 0; i < 2; ++i) {
    C2 xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const Mat2 d_re = (kernel(xp) - kernel(xm)) / (2.0 * h);
    xp = x;
    xm = x;
    xp[i] += cplx(0.0, h);
    xm[i] -= cplx(0.0, h);
    const Mat2 d_im = (kernel(xp) - kernel(xm)) / (2.0 * h);
    dz[i] = 0.5 * (d_re - cplx(0.0, 1.0) * d_im);
    dzb[i] = 0.5 * (d_re + cplx(0.0, 1.0) * d_im);
  }
  const Frame f = ball_frame(x);
  const double c = 0.75 / std::sqrt(abs2(x));
  const Mat2 k0 = kernel(x);
  const Mat2 barL = std::conj(f.l[0]) * dzb[0] + std::conj(f.l[1]) * dzb[1];
  const Mat2 barN = std::conj(f.n[0]) * dzb[0] + std::conj(f.n[1]) * dzb[1];
  const Mat2 L = f.l[0] * dz[0] + f.l[1] * dz[1];
  const Mat2 N = f.n[0] * dz[0] + f.n[1] * dz[1];
  Mat2 out;
  for (int j = 0; j < 2; ++j) {
    out(0, j) = 2.0 * (barN(0, j) - barL(1, j)) + 4.0 * c * k0(0, j);
    out(1, j) = 2.0 * (L(0, j) + N(1, j)) + 4.0 * c * k0(1, j);
  }
  return out;
}

}  // namespace

TEST_CASE("boundary kernel spot values", "[kernels]") {
  const C2 z{cplx(1.0, 0.0), cplx(0.0, 0.0)};
  const C2 w{cplx(0.0, 0.0), cplx(1.0, 0.0)};
  // rho = 2, a = 0 for this orthogonal pair.
  const double pi2 = kPi * kPi;
  REQUIRE(std::abs(kernel_S(z, w)(0, 1) - cplx(-1.0 / (8.0 * pi2))) < 1e-13);
  REQUIRE(std::abs(kernel_S(z, w)(0, 0)) < 1e-15);
  REQUIRE(std::abs(kernel_T(z, w)(0, 0) - cplx(1.0 / (4.0 * pi2))) < 1e-13);
  const C2 anti{cplx(-1.0, 0.0), cplx(0.0, 0.0)};
  REQUIRE(std::abs(kernel_R_printed(z, anti)(0, 0) - cplx(1.0 / (4.0 * pi2))) <
          1e-13);
  REQUIRE(std::abs(kernel_R_printed(z, anti)(0, 1)) < 1e-15);
}

TEST_CASE("adjoint kernel is the swapped transpose-conjugate", "[kernels]") {
  auto rng = make_rng(311);
  for (int trial = 0; trial < 200; ++trial) {
    const C2 z = random_sphere(rng);
    const C2 w = random_sphere(rng);
    if (rho(z, w) < 1e-3) continue;
    REQUIRE(mat_dist(kernel_Tstar(z, w), kernel_T(w, z).adjoint()) < 1e-12);
    // On the unit sphere the two kernels coincide entry by entry.
    REQUIRE(mat_dist(kernel_Tstar(z, w), kernel_T(z, w)) < 1e-12);
    // The weak kernel is Hermitian under the swap as well.
    REQUIRE(mat_dist(kernel_S(z, w), kernel_S(w, z).adjoint()) < 1e-12);
  }
}

TEST_CASE("generic frame-built kernels match the closed ball forms",
          "[kernels]") {
  auto rng = make_rng(977);
  for (int trial = 0; trial < 100; ++trial) {
    const C2 z = random_sphere(rng);
    const C2 w = random_sphere(rng);
    if (rho(z, w) < 1e-2) continue;
    for (int which = 0; which < 2; ++which) {
      const auto defining = [&](const C2& p) {
        const JetVars v = jet_seed(p);
        return which == 0 ? defining_ball(v) : defining_quadratic(v);
      };
      const Frame fz = frame_values(frame_from_defining(defining(z)));
      const Frame fw = frame_values(frame_from_defining(defining(w)));
      REQUIRE(mat_dist(kernel_S_from_frames(z, w, fz, fw), kernel_S(z, w)) <
              1e-12);
      REQUIRE(mat_dist(kernel_T_from_frames(z, w, fz), kernel_T(z, w)) < 1e-12);
      REQUIRE(mat_dist(kernel_Tstar_from_frames(z, w, fw), kernel_Tstar(z, w)) <
              1e-12);
    }
  }
}

TEST_CASE("single layer kernel restricts to minus the weak kernel",
          "[kernels]") {
  auto rng = make_rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const C2 x = random_sphere(rng);
    const C2 w = random_sphere(rng);
    if (rho(x, w) < 1e-3) continue;
    REQUIRE(mat_dist(kernel_single(x, w), -kernel_S(x, w)) < 1e-12);
  }
}

TEST_CASE("double layer kernel restricts to minus half the PV kernel",
          "[kernels]") {
  auto rng = make_rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const C2 x = random_sphere(rng);
    const C2 w = random_sphere(rng);
    if (rho(x, w) < 1e-3) continue;
    REQUIRE(mat_dist(kernel_double(x, w), -0.5 * kernel_T(x, w)) < 1e-12);
  }
}

TEST_CASE("conormal single layer kernel matches finite differences",
          "[kernels]") {
  auto rng = make_rng(4242);
  std::uniform_real_distribution<double> radius(0.55, 1.35);
  int tested = 0;
  while (tested < 25) {
    const C2 x = scaled(random_sphere(rng), radius(rng));
    const C2 w = random_sphere(rng);
    if (rho(x, w) < 0.4) continue;
    const Mat2 jet = kernel_single_conormal(x, w);
    const Mat2 fd =
        fd_conormal([&](const C2& p) { return kernel_single(p, w); }, x);
    REQUIRE(mat_dist(jet, fd) < 1e-6);
    ++tested;
  }
}

TEST_CASE("system hypersingular kernel matches finite differences",
          "[kernels]") {
  auto rng = make_rng(555);
  std::uniform_real_distribution<double> radius(0.55, 1.35);
  int tested = 0;
  while (tested < 25) {
    const C2 x = scaled(random_sphere(rng), radius(rng));
    const C2 w = random_sphere(rng);
    if (rho(x, w) < 0.4) continue;
    const Mat2 jet = kernel_system_R(x, w);
    const Mat2 fd =
        fd_conormal([&](const C2& p) { return kernel_double(p, w); }, x);
    REQUIRE(mat_dist(jet, fd) < 1e-6);
    ++tested;
  }
}

TEST_CASE("system hypersingular kernel vanishes inside the ball", "[kernels]") {
  auto rng = make_rng(909);
  std::uniform_real_distribution<double> radius(0.3, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const C2 x = scaled(random_sphere(rng), radius(rng));
    const C2 w = random_sphere(rng);
    REQUIRE(kernel_system_R(x, w).cwiseAbs().maxCoeff() < 1e-10);
  }
}
