#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corruga/chart.hpp"

#include <cmath>
#include <functional>

using namespace corruga;
using doctest::Approx;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Composite 3-point Gauss-Legendre on [a, b]; never samples the endpoints,
// where one-sided values of f' differ.
double gauss(const std::function<double(double)>& f, double a, double b, int n = 400) {
  const double h = (b - a) / n, r = std::sqrt(0.6) / 2;
  double s = 0;
  for (int k = 0; k < n; ++k) {
    const double m = a + (k + 0.5) * h;
    s += 5 * f(m - r * h) + 8 * f(m) + 5 * f(m + r * h);
  }
  return s * h / 18;
}

double piecewise_gauss(const std::function<double(double)>& f, const std::vector<double>& cuts) {
  double s = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) s += gauss(f, cuts[k], cuts[k + 1]);
  return s;
}

}  // namespace

TEST_CASE("sgn zigzag has unit slopes, zero mean and peaks at the breakpoints") {
  const Profile f = sgn_cos_profile();
  CHECK(f.kind() == ProfileKind::piecewise_linear);
  CHECK(f.value(0.0) == Approx(0.0).epsilon(1e-14));
  CHECK(f.value(kPi / 2) == Approx(kPi / 2));
  CHECK(f.value(3 * kPi / 2) == Approx(-kPi / 2));
  CHECK(f.slope(1.0) == Approx(1.0));
  CHECK(f.slope(2.0) == Approx(-1.0));
  CHECK(f.slope(kPi / 2, Side::minus) == Approx(1.0));
  CHECK(f.slope(kPi / 2, Side::plus) == Approx(-1.0));
  CHECK(f.mean_slope_squared() == Approx(1.0));
  CHECK(f.min_abs_slope() == Approx(1.0));
  CHECK(f.has_creases());
  CHECK(f.value(0.3 + 2 * kPi) == Approx(f.value(0.3)));
  CHECK(f.value(0.3 - 4 * kPi) == Approx(f.value(0.3)));
}

TEST_CASE("triangle-slope profile: continuous slope, mean slope squared 1/3") {
  const Profile f = triangle_slope_profile();
  CHECK(f.kind() == ProfileKind::piecewise_quadratic);
  CHECK_FALSE(f.has_creases());
  CHECK(f.slope(0.0) == Approx(1.0));
  CHECK(f.slope(kPi) == Approx(-1.0));
  CHECK(f.slope(kPi, Side::minus) == Approx(f.slope(kPi, Side::plus)));
  CHECK(f.slope(kPi / 2) == Approx(0.0).epsilon(1e-14));
  CHECK(f.mean_slope_squared() == Approx(1.0 / 3.0));
  CHECK(f.min_abs_slope() == Approx(0.0));
  CHECK(f.curvature(1.0) == Approx(-2.0 / kPi));
}

TEST_CASE("closed-form integrals agree with quadrature") {
  const double T = SurfaceChart::kTwoPi;
  const std::vector<Profile> profiles{
      sgn_cos_profile(), triangle_slope_profile(),
      Profile::make(ProfileKind::piecewise_linear, 0.7, T, {0.4, 1.9, 3.0, 5.5}),
      Profile::make(ProfileKind::sinusoidal, 1.3, T)};
  for (const Profile& f : profiles) {
    std::vector<double> cuts{0.0};
    for (double b : f.breakpoints()) {
      if (b > 0) cuts.push_back(b);
    }
    cuts.push_back(T);
    CHECK(piecewise_gauss([&](double t) { return f.value(t); }, cuts) ==
          Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(piecewise_gauss([&](double t) { return f.slope(t) * f.slope(t); }, cuts) / T ==
          Approx(f.mean_slope_squared()).epsilon(1e-10));
    for (double t : {0.37, 2.2, 4.0, 7.5, -1.1}) {
      const double lo = std::min(0.0, t), hi = std::max(0.0, t);
      std::vector<double> c{lo};
      for (int k = -2; k <= 2; ++k) {
        for (double b : f.breakpoints()) {
          const double x = b + k * T;
          if (x > lo && x < hi) c.push_back(x);
        }
      }
      c.push_back(hi);
      std::sort(c.begin(), c.end());
      const double sgn = t >= 0 ? 1 : -1;
      CHECK(f.integral(t) ==
            Approx(sgn * piecewise_gauss([&](double s) { return f.value(s); }, c)).epsilon(1e-9));
      CHECK(f.slope_squared_integral(t) ==
            Approx(sgn * piecewise_gauss([&](double s) { return f.slope(s) * f.slope(s); }, c))
                .epsilon(1e-9));
      if (f.kind() == ProfileKind::piecewise_linear) {
        CHECK(f.inverse_slope_integral(t) ==
              Approx(sgn * piecewise_gauss([&](double s) { return 1.0 / f.slope(s); }, c))
                  .epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("profile construction errors") {
  const double T = SurfaceChart::kTwoPi;
  CHECK_THROWS(Profile::make(ProfileKind::piecewise_linear, 1.0, -1.0, {1.0, 2.0}));
  CHECK_THROWS(Profile::make(ProfileKind::piecewise_linear, 0.0, T, {1.0, 2.0}));
  CHECK_THROWS(Profile::make(ProfileKind::piecewise_linear, 1.0, T, {1.0}));
  CHECK_THROWS(Profile::make(ProfileKind::piecewise_linear, 1.0, T, {}));
  CHECK_THROWS(Profile::make(ProfileKind::piecewise_linear, 1.0, T, {2.0, 1.0}));
  CHECK_THROWS(Profile::make(ProfileKind::piecewise_linear, 1.0, T, {1.0, 7.0}));
  CHECK_THROWS(Profile::make(ProfileKind::sinusoidal, 1.0, T, {1.0, 2.0}));
  CHECK_THROWS(triangle_slope_profile().inverse_slope_integral(1.0));
  CHECK_THROWS(profile_kind_from_string("cubic"));
  CHECK(profile_kind_from_string("piecewise-quadratic") == ProfileKind::piecewise_quadratic);
}
