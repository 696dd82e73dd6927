// End-to-end reduced-system solves driven by numerically extracted Newton
// traces.  These take tens of seconds per grid and live in their own binary.

#include <catch2/catch_amalgamated.hpp>
#include <dbarbie/harness.hpp>

#include <filesystem>
#include <fstream>

using namespace dbarbie;

namespace {

int count_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  return rows;
}

}  // namespace

TEST_CASE("density recovery hits the trace-bias prediction", "[system]") {
  // For the compatible constant field the only systematic error in the
  // right-hand side is the quadratic trace extrapolation: each gamma_1
  // entry is off by exactly 4 h^3 against the exact value 1/3, so the
  // recovered density error is 12 h^3 with h = 0.2 / n.
  HarnessConfig cfg;
  cfg.grid = 5;
  const auto tmp = std::filesystem::temp_directory_path();
  cfg.csv_grid = (tmp / "dbarbie_grid.csv").string();
  cfg.csv_densities = (tmp / "dbarbie_densities.csv").string();

  const Report rep = run_solve(cfg);
  REQUIRE(rep.pass());

  const double h = 0.2 / 5.0;
  const double predicted = 12.0 * h * h * h;
  const double rel = double(find_entry(rep, "density")->data["rel_error"]);
  REQUIRE(std::abs(rel - predicted) < 5e-5);

  const ReportEntry* solve = find_entry(rep, "solve");
  REQUIRE(double(solve->data["cond"]) < 100.0);
  REQUIRE(double(solve->data["ridge"]) == 0.0);
  REQUIRE(double(find_entry(rep, "reconstruction")->data["max_rel"]) < 5e-2);

  // Artifacts: header plus one row per node (the grid file includes the
  // zero-weight probe node; the density file covers quadrature nodes).
  REQUIRE(count_lines(cfg.csv_grid) == 502);
  REQUIRE(count_lines(cfg.csv_densities) == 501);
  std::filesystem::remove(cfg.csv_grid);
  std::filesystem::remove(cfg.csv_densities);
}

TEST_CASE("trace-fed solve tightens under refinement", "[system]") {
  // The linear compatible field has no closed-form density reference, but
  // the residual blocks that measure how well the recovered densities
  // reproduce the trace data must shrink as the grid refines.
  std::array<double, 4> prev{};
  for (int n : {5, 6}) {
    HarnessConfig cfg;
    cfg.grid = n;
    cfg.field = "bc-linear";
    Report sink;
    const SolveOutput out = solve_field(cfg, sink);
    REQUIRE(std::isfinite(out.sol.cond));
    REQUIRE(out.dens_rel >= 0.0);  // bc- fields carry an exact reference
    for (double b : out.sol.block_rms) REQUIRE(b < 0.2);
    if (n > 5) {
      REQUIRE(out.sol.block_rms[1] < prev[1]);
      REQUIRE(out.sol.block_rms[2] < prev[2]);
    }
    prev = out.sol.block_rms;
  }
}
