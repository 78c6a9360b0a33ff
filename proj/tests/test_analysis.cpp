#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corruga/verification.hpp"

#include "json.hpp"

#include <filesystem>
#include <sstream>

using namespace corruga;
using doctest::Approx;

TEST_CASE("corrugation analysis report") {
  AnalysisOptions o;
  o.resolution = {16, 16};
  const Analysis a = analyze(builtin_chart("corrugation"), o);
  CHECK_FALSE(a.ambiguous());
  CHECK(a.dims() == std::array<int, 2>{1, 2});
  CHECK(a.spaces->constant_dim == 3);
  CHECK(a.pairs.size() == 2);
  CHECK(a.max_pair_residual() < 1e-12);
  const auto r = nlohmann::json::parse(report_json(a));
  CHECK(r["dims"] == nlohmann::json::array({1, 2}));
  CHECK(r["grid"]["rows"] == a.system.rows());
  CHECK(r["sigma_spectrum_ref"] == "spectrum.csv");
  CHECK(r["oracle"].size() == 3);
  CHECK(r.contains("poisson"));
  CHECK(r.contains("timings"));
  std::ostringstream csv;
  write_spectrum_csv(csv, a);
  const std::string s = csv.str();
  CHECK(std::count(s.begin(), s.end(), '\n') == 13);
}

TEST_CASE("reports are deterministic apart from timings") {
  AnalysisOptions o;
  o.resolution = {16, 16};
  auto a = nlohmann::json::parse(report_json(analyze(builtin_chart("miura"), o)));
  auto b = nlohmann::json::parse(report_json(analyze(builtin_chart("miura"), o)));
  a.erase("timings");
  b.erase("timings");
  CHECK(a == b);
}

TEST_CASE("mode meshes") {
  AnalysisOptions o;
  o.resolution = {16, 16};
  const Analysis a = analyze(builtin_chart("eggbox"), o);
  const auto dir = std::filesystem::temp_directory_path() / "corruga_mesh_test";
  std::filesystem::remove_all(dir);
  const double amp = write_mode_meshes(a, dir.string());
  CHECK(amp == Approx(0.2 * std::sqrt(a.grid->area() / a.grid->cells().size())));
  CHECK(std::filesystem::exists(dir / "base.obj"));
  int meshes = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) meshes += e.path().extension() == ".obj";
  CHECK(meshes == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("fixed threshold policy") {
  AnalysisOptions o;
  o.resolution = {16, 16};
  o.policy = ThresholdPolicy::fixed(1e-4);
  const Analysis a = analyze(builtin_chart("eggbox"), o);
  CHECK(a.dims() == std::array<int, 2>{1, 2});
}

TEST_CASE("decay rule") {
  const std::vector<int> n{32, 64, 128};
  CHECK(check_decay({1e-4, 2.5e-5, 6.25e-6}, n, 1e-10).passed);
  CHECK(check_decay({1e-4, 2.5e-5, 6.25e-6}, n, 1e-10).order == Approx(2.0));
  CHECK_FALSE(check_decay({1e-4, 5e-5, 2.5e-5}, n, 1e-10).passed);
  CHECK_FALSE(check_decay({1e-4, 2e-4, 1e-6}, n, 1e-10).passed);
  CHECK(check_decay({1e-14, 3e-14, 2e-13}, n, 1e-10).passed);
}

TEST_CASE("untwisted bending element") {
  Mat2 dome = Mat2::Identity(), twist;
  twist << 0, 1, 1, 0;
  const auto c = untwisted_bending({dome + 0.5 * twist, twist - dome});
  REQUIRE(c);
  CHECK(((*c) - dome).norm() < 1e-14);
  CHECK_FALSE(untwisted_bending({dome}));
}
