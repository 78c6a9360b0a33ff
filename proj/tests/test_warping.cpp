#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corruga/warping.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

using namespace corruga;
using doctest::Approx;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("straight segment through the origin does not warp") {
  SectionCurve s;
  s.points = {{-1, 0}, {0.5, 0}, {2, 0}};
  const WarpingResult w = warping_function(s, 3.0);
  for (double v : w.w) CHECK(v == 0.0);
  CHECK(w.s.back() == Approx(3.0));
}

TEST_CASE("L-section: the vertical leg warps linearly") {
  const double a = 2.0, b = 1.0, alpha = 0.5;
  const WarpingResult w = warping_function(l_section(a, b, 5), alpha);
  for (int k = 0; k < 5; ++k) CHECK(w.w[k] == 0.0);
  for (int k = 5; k < 9; ++k) CHECK(w.w[k] == Approx(-alpha * a * b * (k - 4) / 4.0));
}

TEST_CASE("circular arc: w = -alpha r^2 theta") {
  const double r = 1.7, theta = 2.0, alpha = 0.3;
  const WarpingResult w = warping_function(circle_section(r, 4096, theta), alpha);
  CHECK(w.w.back() == Approx(-alpha * r * r * theta).epsilon(1e-6));
}

TEST_CASE("closed sections: dislocation = -2 alpha area") {
  CHECK(dislocation(circle_section(1.0, 1024), 1.0) == Approx(-2 * kPi).epsilon(1e-3));
  CHECK(std::abs(dislocation(square_section(1.0), 1.0) + 2.0) <= 2 * DBL_EPSILON);
  const SectionCurve poly{{{0, 0}, {3, 0.5}, {2.5, 2}, {-0.3, 1.2}, {0, 0}}, true};
  CHECK(dislocation(poly, 0.8) == Approx(-1.6 * shoelace_area(poly)).epsilon(1e-15));
  CHECK(dislocation(poly.reversed(), 0.8) == Approx(-dislocation(poly, 0.8)));
  const SectionCurve flat{{{0, 0}, {1, 1}, {2, 2}, {1, 1}, {0, 0}}, true};
  CHECK(dislocation(flat, 1.0) == 0.0);
}

TEST_CASE("densifying straight segments does not change warping") {
  const WarpingResult coarse = warping_function(l_section(1.0, 2.0, 2), 1.0);
  const WarpingResult fine = warping_function(l_section(1.0, 2.0, 17), 1.0);
  CHECK(fine.w.back() == Approx(coarse.w.back()).epsilon(1e-14));
}

TEST_CASE("section errors") {
  CHECK_THROWS(warping_function(square_section(1.0), 1.0));
  CHECK_THROWS(dislocation(l_section(1.0, 1.0), 1.0));
  SectionCurve dup{{{0, 0}, {0, 0}, {1, 0}}, false};
  CHECK_THROWS(warping_function(dup, 1.0));
  SectionCurve single{{{0, 0}}, false};
  CHECK_THROWS(warping_function(single, 1.0));
  SectionCurve unclosed{{{0, 0}, {1, 0}, {1, 1}}, true};
  CHECK_THROWS(dislocation(unclosed, 1.0));
}

TEST_CASE("CSV round trip") {
  std::istringstream in("x,y\n0,0\n1,0\n1,2\n");
  const SectionCurve s = read_section_csv(in);
  CHECK_FALSE(s.closed);
  CHECK(s.points.size() == 3);
  std::ostringstream out;
  write_warping_csv(out, warping_function(s, 1.0));
  CHECK(out.str().rfind("s,w\n", 0) == 0);
  std::istringstream closed("0 0\n1 0\n1 1\n0 0\n");
  CHECK(read_section_csv(closed).closed);
  std::istringstream bad("x,y\n0,0\nfoo\n");
  CHECK_THROWS(read_section_csv(bad));
}
