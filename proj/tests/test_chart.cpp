#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corruga/chart.hpp"

#include <cstdio>

using namespace corruga;
using doctest::Approx;

namespace {

Vec3 fd_partial(const SurfaceChart& c, const Eigen::Vector2d& xi, int a, double h = 1e-6) {
  const Eigen::Vector2d e = h * Eigen::Vector2d::Unit(a);
  return (c.evaluate(xi + e) - c.evaluate(xi - e)) / (2 * h);
}

}  // namespace

TEST_CASE("charts are periodic up to their lattice vectors") {
  for (const std::string& name : builtin_chart_names()) {
    CAPTURE(name);
    const SurfaceChart c = builtin_chart(name);
    for (int a = 0; a < 2; ++a) {
      for (const Eigen::Vector2d xi : {Eigen::Vector2d(0.3, 1.1), Eigen::Vector2d(-2.0, 4.4)}) {
        const Eigen::Vector2d shifted = xi + c.period(a) * Eigen::Vector2d::Unit(a);
        CHECK((c.evaluate(shifted) - c.evaluate(xi) - c.lattice_vector(a)).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("analytic partials match finite differences away from creases") {
  for (const std::string& name : builtin_chart_names()) {
    CAPTURE(name);
    const SurfaceChart c = builtin_chart(name);
    const Eigen::Vector2d xi(0.41, 2.17);
    const auto d = c.partials(xi);
    for (int a = 0; a < 2; ++a) CHECK((d[a] - fd_partial(c, xi, a)).norm() < 1e-8);
  }
}

TEST_CASE("period geometry of the built-in surfaces") {
  const PeriodGeometry g = period_geometry(builtin_chart("eggbox"));
  CHECK((g.p1 - Vec3::UnitX()).norm() < 1e-14);
  CHECK((g.p2 - Vec3::UnitY()).norm() < 1e-14);
  CHECK((g.n - Vec3::UnitZ()).norm() < 1e-14);
  const PeriodGeometry s = period_geometry(builtin_chart("sheared-eggbox"));
  CHECK((s.p1 - Vec3(1, 1, 0)).norm() < 1e-14);
  const PeriodGeometry t = period_geometry(builtin_chart("translation"));
  CHECK((t.p2 - Vec3(0.4, 1, 0)).norm() < 1e-14);
}

TEST_CASE("crease lines follow the profile breakpoints") {
  CHECK(builtin_chart("plane").crease_lines().empty());
  CHECK(builtin_chart("corrugation").crease_lines().size() == 2);
  CHECK(builtin_chart("eggbox").crease_lines().size() == 4);
  CHECK(builtin_chart("eggbox-hybrid").crease_lines().size() == 2);
  const auto sheared = builtin_chart("sheared-eggbox");
  CHECK_FALSE(sheared.axis_aligned());
  CHECK_THROWS(sheared.axis_breaks(1));
  const AxisBreaks b = builtin_chart("eggbox-hybrid").axis_breaks(0);
  REQUIRE(b.points.size() == 2);
  CHECK_FALSE(b.crease[0]);
}

TEST_CASE("chart construction errors") {
  const Profile s = sgn_cos_profile();
  CHECK_THROWS(SurfaceChart::miura_like(s, triangle_slope_profile()));
  CHECK_THROWS(SurfaceChart::sheared_double_corrugation(s, s, 0.5));
  CHECK_THROWS(SurfaceChart::plane(-1.0, 1.0));
  const double T = SurfaceChart::kTwoPi;
  SpaceCurve a{s, Vec3(1, 0, 0), Vec3(0, 0, 1)};
  SpaceCurve b{s, Vec3(2, 0, 0), Vec3(0, 0, 1)};
  CHECK_THROWS(SurfaceChart::translation_surface(a, b, T, T));
  // alpha' = (1 - f', f', 0) becomes parallel to beta' = (0, 1, 0) where f' = 1.
  SpaceCurve tilted{s, Vec3(1, 0, 0), Vec3(-1, 1, 0)};
  SpaceCurve flat{std::nullopt, Vec3(0, 1, 0), Vec3(0, 0, 1)};
  const SurfaceChart folded = SurfaceChart::translation_surface(tilted, flat, T, T);
  CHECK_THROWS(folded.partials(Eigen::Vector2d(0.3, 0.2)));
  CHECK_NOTHROW(folded.partials(Eigen::Vector2d(2.0, 0.2)));
  CHECK_THROWS(builtin_chart("torus"));
  CHECK_THROWS(family_from_string("cylinder"));
  CHECK_THROWS(chart_from_json("{"));
  CHECK_THROWS(chart_from_json(R"({"profiles": []})"));
}

TEST_CASE("JSON round trip preserves the surface") {
  for (const std::string& name : builtin_chart_names()) {
    CAPTURE(name);
    const SurfaceChart c = builtin_chart(name);
    const SurfaceChart r = chart_from_json(chart_to_json(c));
    CHECK(r.family() == c.family());
    for (const Eigen::Vector2d xi : {Eigen::Vector2d(0.2, 0.9), Eigen::Vector2d(3.3, -1.7)}) {
      CHECK((r.evaluate(xi) - c.evaluate(xi)).norm() < 1e-12);
    }
  }
  const std::string path = "chart_roundtrip_test.json";
  save_chart(builtin_chart("miura"), path);
  CHECK(load_chart(path).family() == Family::miura_like);
  std::remove(path.c_str());
}
