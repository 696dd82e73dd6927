// Report plumbing and the verification commands at their default
// configurations.  Each command returns a structured report whose entries
// carry the measured deviations; the suite asserts both the pass flags and
// the headline numbers.

#include <catch2/catch_amalgamated.hpp>
#include <dbarbie/harness.hpp>

#include <filesystem>
#include <fstream>

using namespace dbarbie;

TEST_CASE("report serialization and pass aggregation", "[harness]") {
  Report rep;
  rep.command = "demo";
  rep.config = {{"grid", 5}};
  rep.add("first", {{"value", 1.5}}, true);
  rep.add("second", {{"value", 2.5}}, true);
  rep.time("stage", 0.125);
  REQUIRE(rep.pass());

  const json j = rep.to_json();
  REQUIRE(j["schema"] == "dbar-bie-report/1");
  REQUIRE(j["command"] == "demo");
  REQUIRE(j["entries"].size() == 2);
  REQUIRE(j["entries"][0]["name"] == "first");
  REQUIRE(j["pass"] == true);
  REQUIRE(j["timings"]["stage"] == 0.125);

  REQUIRE(find_entry(rep, "second") != nullptr);
  REQUIRE(find_entry(rep, "second")->data["value"] == 2.5);
  REQUIRE(find_entry(rep, "missing") == nullptr);

  rep.add("bad", {{"value", 9.0}}, false);
  REQUIRE_FALSE(rep.pass());
  REQUIRE(rep.to_json()["pass"] == false);

  const auto path =
      (std::filesystem::temp_directory_path() / "dbarbie_report_test.json")
          .string();
  rep.write(path);
  std::ifstream in(path);
  json back;
  in >> back;
  REQUIRE(back["entries"].size() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("config round-trips through JSON", "[harness]") {
  HarnessConfig cfg;
  cfg.grid = 7;
  cfg.field = "mix";
  cfg.tol_profile = "strict";
  cfg.seed = 42;
  const json j = config_json(cfg);

  HarnessConfig out;
  config_from_json(j, out);
  REQUIRE(out.grid == 7);
  REQUIRE(out.field == "mix");
  REQUIRE(out.tol_profile == "strict");
  REQUIRE(out.seed == 42);

  // Partial configs override only the keys they carry.
  HarnessConfig part;
  config_from_json(json{{"grid", 9}}, part);
  REQUIRE(part.grid == 9);
  REQUIRE(part.field == HarnessConfig{}.field);
}

TEST_CASE("tolerance profiles", "[harness]") {
  const Tolerances base = tolerances("baseline");
  const Tolerances strict = tolerances("strict");
  REQUIRE(strict.identity < base.identity);
  REQUIRE(strict.green < base.green);
  REQUIRE(strict.density < base.density);
  REQUIRE_THROWS_AS(tolerances("loose"), std::invalid_argument);
}

TEST_CASE("identity verification command", "[harness]") {
  const Report rep = run_verify_identities(HarnessConfig{});
  REQUIRE(rep.pass());
  for (const char* name : {"frame-identities", "box-vs-laplacian",
                           "dbar-squared", "conormal-constants", "adjointness"})
    REQUIRE(find_entry(rep, name) != nullptr);
  // The pointwise identities hold to roundoff.
  REQUIRE(double(find_entry(rep, "frame-identities")->data["max_dev"]) < 1e-13);
}

TEST_CASE("kernel dump command writes the sample table", "[harness]") {
  HarnessConfig cfg;
  cfg.csv_kernels =
      (std::filesystem::temp_directory_path() / "dbarbie_kernels.csv").string();
  const Report rep = run_dump_kernels(cfg);
  REQUIRE(rep.pass());
  REQUIRE(double(find_entry(rep, "cross-validation")->data["max_generic_dev"]) <
          1e-12);

  std::ifstream in(cfg.csv_kernels);
  REQUIRE(in.good());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  REQUIRE(rows == 65);  // header plus 64 sampled pairs
  std::filesystem::remove(cfg.csv_kernels);
}

TEST_CASE("convergence study: surface quadrature", "[harness]") {
  HarnessConfig cfg;
  cfg.check = "surface";
  const Report rep = run_convergence_study(cfg);
  REQUIRE(rep.pass());
  REQUIRE(double(find_entry(rep, "monomial-exactness")->data["max_rel"]) <
          1e-12);
  REQUIRE(double(find_entry(rep, "smooth-selfconvergence")->data["slope"]) >
          4.0);
}

TEST_CASE("convergence study: operator constants", "[harness]") {
  HarnessConfig cfg;
  cfg.check = "identities";
  const Report rep = run_convergence_study(cfg);
  REQUIRE(rep.pass());
  REQUIRE(find_entry(rep, "constants-n5") != nullptr);
}

TEST_CASE("convergence study: jump relations", "[harness]") {
  HarnessConfig cfg;
  cfg.check = "jump";
  const Report rep = run_convergence_study(cfg);
  REQUIRE(rep.pass());
  const ReportEntry* mono = find_entry(rep, "jump-monotone");
  REQUIRE(mono != nullptr);
  REQUIRE(mono->pass);
}

TEST_CASE("convergence study rejects unknown checks", "[harness]") {
  HarnessConfig cfg;
  cfg.check = "bogus";
  REQUIRE_THROWS_AS(run_convergence_study(cfg), std::invalid_argument);
}

TEST_CASE("interior reconstruction ladder", "[harness]") {
  const Report rep = run_green_check(HarnessConfig{});
  REQUIRE(rep.pass());
  REQUIRE(find_entry(rep, "monotone")->pass);
  REQUIRE(double(find_entry(rep, "level-0")->data["catalog_max"]) < 1e-3);
}

TEST_CASE("rigidity command on compactly supported data", "[harness]") {
  HarnessConfig cfg;
  cfg.field = "bump:offcenter";
  const Report rep = run_rigidity(cfg);
  REQUIRE(rep.pass());
  REQUIRE(double(find_entry(rep, "odd-symmetry")->data["max_dev"]) < 1e-13);
  REQUIRE(double(find_entry(rep, "velocity-value")->data["stability_ratio"]) >
          100.0);
}

TEST_CASE("constant-velocity pin comparison", "[harness]") {
  const Report rep = run_constant_velocity(HarnessConfig{});
  REQUIRE(rep.pass());
  const ReportEntry* asym = find_entry(rep, "asymmetric-data");
  REQUIRE(asym != nullptr);
  REQUIRE(double(asym->data["ratio"]) > 1e3);
  REQUIRE(double(asym->data["velocity_dev"]) < 1e-8);
  const ReportEntry* ctrl = find_entry(rep, "control-data");
  REQUIRE(ctrl != nullptr);
  REQUIRE(double(ctrl->data["ratio"]) < 2.0);
}

TEST_CASE("basic-estimate constant across levels", "[harness]") {
  const Report rep = run_kmh_check(HarnessConfig{});
  REQUIRE(rep.pass());
  const double c0 = double(find_entry(rep, "level-0")->data["constant"]);
  const double c1 = double(find_entry(rep, "level-1")->data["constant"]);
  REQUIRE(std::abs(c0 - c1) < 1e-10);
  REQUIRE(std::abs(c0 - 0.2667638483965) < 1e-10);
  REQUIRE(find_entry(rep, "boundary-term-positivity")->pass);
}
