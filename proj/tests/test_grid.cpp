#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corruga/grid.hpp"

#include <numeric>
#include <sstream>

using namespace corruga;
using doctest::Approx;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("axis layout of a creased zigzag duplicates crease nodes") {
  const SurfaceChart c = builtin_chart("corrugation");
  const AxisLayout L = make_axis_layout(c.period(0), c.axis_breaks(0), 32);
  CHECK(L.size() == 34);
  CHECK(L.creases.size() == 2);
  CHECK(L.panels.size() == 2);
  CHECK(std::accumulate(L.weights.begin(), L.weights.end(), 0.0) == Approx(c.period(0)));
  CHECK(L.max_spacing == Approx(kPi / 16));
  for (const AxisCrease& k : L.creases) {
    CHECK(L.coordinate({k.plus, k.shift}) == Approx(L.coords[k.minus]));
    CHECK(L.side[k.minus] == Side::minus);
    CHECK(L.side[k.plus] == Side::plus);
  }
}

TEST_CASE("axis layout without breakpoints is one cyclic panel") {
  const AxisLayout L = make_axis_layout(2.0, {}, 16);
  CHECK(L.size() == 16);
  CHECK(L.panels.size() == 1);
  CHECK(L.panels[0].cyclic);
  CHECK(L.edges.back().b == 0);
  CHECK(L.edges.back().shift == 1);
  CHECK_THROWS(make_axis_layout(2.0, {}, 7));
}

TEST_CASE("smooth breakpoints share a node") {
  const SurfaceChart c = builtin_chart("eggbox-hybrid");
  const AxisLayout L = make_axis_layout(c.period(0), c.axis_breaks(0), 32);
  CHECK(L.size() == 32);
  CHECK(L.creases.empty());
}

TEST_CASE("eggbox grid counts") {
  const PeriodicGrid g(builtin_chart("eggbox"), 32, 32);
  CHECK(g.size() == 34 * 34);
  CHECK(g.cells().size() == 32 * 32);
  CHECK(g.crease_pairs().size() == 136);
  CHECK(g.crease_edges().size() == 128);
  double area = 0;
  for (const GridCell& cell : g.cells()) area += cell.area;
  CHECK(area == Approx(g.area()));
  int corners = 0;
  for (const CreaseEdge& e : g.crease_edges()) corners += e.touches_corner;
  CHECK(corners == 16);
}

TEST_CASE("shifted references translate by the lattice") {
  const SurfaceChart c = builtin_chart("translation");
  const PeriodicGrid g(c, 16, 16);
  for (int id : {0, 7, 100}) {
    CHECK((g.position({id, 1, 0}) - g.position({id, 0, 0}) - c.lattice_vector(0)).norm() < 1e-12);
    CHECK((g.position({id, -1, 1}) - g.position({id, 0, 0}) + c.lattice_vector(0) -
           c.lattice_vector(1)).norm() < 1e-12);
  }
}

TEST_CASE("cell averages and derivatives") {
  const PeriodicGrid g(builtin_chart("corrugation"), 16, 16);
  std::vector<double> one(g.size(), 1.0), cosine(g.size());
  for (int k = 0; k < g.size(); ++k) cosine[k] = std::cos(g.coords({k, 0, 0})[1]);
  CHECK(cell_average(one, g) == Approx(1.0));
  CHECK(cell_average(cosine, g) == Approx(0.0).scale(1.0).epsilon(1e-14));

  const ScalarAccessor quad = [&](const NodeRef& r) {
    const auto x = g.coords(r);
    return x[0] * x[0] - 3 * x[0] * x[1];
  };
  const auto d1 = differentiate(quad, g, 0);
  const auto d2 = differentiate(quad, g, 1);
  for (int k = 0; k < g.size(); k += 7) {
    const auto x = g.coords({k, 0, 0});
    CHECK(d1[k] == Approx(2 * x[0] - 3 * x[1]));
    CHECK(d2[k] == Approx(-3 * x[0]));
  }
  CHECK_THROWS(differentiate(std::vector<double>(3), g, 0));
}

TEST_CASE("OBJ export writes two triangles per cell") {
  const PeriodicGrid g(SurfaceChart::plane(), 8, 8);
  std::ostringstream out;
  write_obj(out, g);
  const std::string s = out.str();
  CHECK(std::count(s.begin(), s.end(), 'v') == 81);
  CHECK(std::count(s.begin(), s.end(), 'f') == 128);
}

TEST_CASE("oblique creases are rejected") {
  CHECK_THROWS(PeriodicGrid(builtin_chart("sheared-eggbox"), 16, 16));
}
