#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corruga/oracle.hpp"

using namespace corruga;
using doctest::Approx;

namespace {

Mat2 m2(double a, double b, double c, double d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

struct Case {
  std::string surface;
  ExampleId id;
};

const std::vector<Case> kCases{
    {"plane", ExampleId::plane_bend},
    {"corrugation", ExampleId::corrugation_membrane},
    {"corrugation", ExampleId::corrugation_bend},
    {"eggbox", ExampleId::eggbox_membrane},
    {"eggbox-hybrid", ExampleId::eggbox_membrane},
    {"miura", ExampleId::miura_membrane},
    {"miura-hybrid", ExampleId::miura_membrane},
    {"translation", ExampleId::translation_twist},
    {"eggbox", ExampleId::translation_twist},
    {"sheared-eggbox", ExampleId::sheared_membrane},
};

}  // namespace

TEST_CASE("closed-form deflections integrate the rotation fields") {
  // d xdot / d xi_a = w ^ x_a, checked by central differences inside panels.
  const std::vector<Eigen::Vector2d> probes{{0.31, 0.77}, {2.2, -1.3}, {-4.0, 5.1}, {8.9, 2.6}};
  for (const Case& c : kCases) {
    CAPTURE(c.surface);
    CAPTURE(to_string(c.id));
    const SurfaceChart chart = builtin_chart(c.surface);
    const AnalyticMode m = analytic_mode(c.id, chart);
    for (const auto& xi : probes) {
      const auto x = chart.partials(xi);
      const Vec3 w = m.rotation(xi, kPlusPlus);
      for (int a = 0; a < 2; ++a) {
        const double h = 1e-6;
        const Eigen::Vector2d e = h * Eigen::Vector2d::Unit(a);
        const Vec3 fd = (m.deflection(xi + e) - m.deflection(xi - e)) / (2 * h);
        CHECK((fd - w.cross(x[a])).norm() < 1e-6);
      }
    }
  }
}

TEST_CASE("rotation fields grow by W per unit parameter") {
  for (const Case& c : kCases) {
    CAPTURE(c.surface);
    CAPTURE(to_string(c.id));
    const SurfaceChart chart = builtin_chart(c.surface);
    const AnalyticMode m = analytic_mode(c.id, chart);
    const Eigen::Vector2d xi(0.4, 1.3);
    for (int a = 0; a < 2; ++a) {
      const Eigen::Vector2d s = chart.period(a) * Eigen::Vector2d::Unit(a);
      const Vec3 growth = (m.rotation(xi + s, kPlusPlus) - m.rotation(xi, kPlusPlus)) / chart.period(a);
      CHECK((growth - (a == 0 ? m.W1 : m.W2)).norm() < 1e-12);
    }
  }
}

TEST_CASE("predicted tensors") {
  const auto E2 = analytic_mode(ExampleId::corrugation_membrane, builtin_chart("corrugation")).E;
  CHECK((*E2 - m2(1, 0, 0, 0)).norm() < 1e-15);
  const auto E3 = analytic_mode(ExampleId::eggbox_membrane, builtin_chart("eggbox-hybrid")).E;
  CHECK((*E3 - m2(1.0 / 3.0, 0, 0, -1)).norm() < 1e-15);
  const auto E4 = analytic_mode(ExampleId::miura_membrane, builtin_chart("miura")).E;
  CHECK((*E4 - Mat2::Identity()).norm() < 1e-15);
  const auto chi5 = analytic_mode(ExampleId::translation_twist, builtin_chart("translation")).chi;
  CHECK((*chi5 - m2(0, 1, 1, 0)).norm() < 1e-15);
  const auto E6 = analytic_mode(ExampleId::sheared_membrane, builtin_chart("sheared-eggbox")).E;
  CHECK((*E6 - m2(0, -1, -1, -1)).norm() < 1e-15);
}

TEST_CASE("sheared eggbox with gamma = 1: E = [[0,-1],[-1,-1]]") {
  const ReparametrizationCheck r = reparametrization_check(sgn_cos_profile(), sgn_cos_profile(), 1.0);
  CHECK((r.E_congruence - m2(0, -1, -1, -1)).norm() < 1e-15);
  CHECK((r.E_direct - m2(0, -1, -1, -1)).norm() < 1e-12);
  for (std::size_t k = 0; k < r.chi_sheared.size(); ++k) {
    CHECK(std::abs(r.residual_sheared[k]) < 1e-12);
    CHECK(std::abs(r.residual_rearranged[k]) < 1e-12);
  }
  // The twist element separates the two signs of the gamma chi12 term.
  CHECK(std::abs(r.residual_printed_sign[1]) > 1.0);
}

TEST_CASE("zero shear reduces to the eggbox") {
  const ReparametrizationCheck r = reparametrization_check(triangle_slope_profile(), sgn_cos_profile(), 0.0);
  CHECK((r.E_congruence - m2(1.0 / 3.0, 0, 0, -1)).norm() < 1e-15);
  CHECK(r.congruence_error < 1e-12);
  for (std::size_t k = 0; k < r.chi_sheared.size(); ++k) {
    CHECK(r.residual_sheared[k] == Approx(r.residual_unsheared[k]).scale(1.0));
  }
}

TEST_CASE("scaling limit: first order for the corrugation, exact for the plane") {
  const std::vector<double> eps{0.25, 0.125, 0.0625, 0.03125};
  const SurfaceChart corr = builtin_chart("corrugation");
  const ScalingCheck c = scaling_limit_check(analytic_mode(ExampleId::corrugation_bend, corr),
                                             period_geometry(corr), eps);
  CHECK(c.monotone);
  CHECK(c.fitted_rate == Approx(1.0).epsilon(0.2));
  const SurfaceChart plane = builtin_chart("plane");
  const ScalingCheck p = scaling_limit_check(analytic_mode(ExampleId::plane_bend, plane),
                                             period_geometry(plane), eps);
  for (double e : p.error) CHECK(e < 1e-15);
  CHECK_THROWS(scaling_limit_check(analytic_mode(ExampleId::plane_bend, plane),
                                   period_geometry(plane), eps, 1));
}

TEST_CASE("examples reject the wrong family") {
  CHECK_THROWS(analytic_mode(ExampleId::eggbox_membrane, builtin_chart("miura")));
  CHECK_THROWS(analytic_mode(ExampleId::plane_bend, builtin_chart("corrugation")));
  CHECK_THROWS(example_from_string("ex9"));
  CHECK(example_from_string("miura-membrane") == ExampleId::miura_membrane);
}

TEST_CASE("sampled deflection is anchored at node 0") {
  const SurfaceChart c = builtin_chart("eggbox");
  const PeriodicGrid g(c, 16, 16);
  const DeflectionField d = sample_deflection(analytic_mode(ExampleId::eggbox_membrane, c), g);
  CHECK(d.at({0, 0, 0}).norm() == 0.0);
  CHECK(d.values.size() == 9 * static_cast<std::size_t>(g.size()));
}

TEST_CASE("trigonometric fields have exact partials") {
  std::mt19937_64 rng(7);
  const TrigField f = TrigField::random(rng, 5, {2.0, 3.0});
  CHECK(f.terms.size() == 5);
  const Eigen::Vector2d xi(0.3, -0.8);
  const auto d = f.partials(xi);
  for (int a = 0; a < 2; ++a) {
    const Eigen::Vector2d e = 1e-6 * Eigen::Vector2d::Unit(a);
    CHECK(((f.value(xi + e) - f.value(xi - e)) / 2e-6 - d[a]).norm() < 1e-6);
  }
  CHECK((f.value(xi + Eigen::Vector2d(2.0, 3.0)) - f.value(xi)).norm() < 1e-12);
}

TEST_CASE("symmetry lemma on the smooth corrugation") {
  const SurfaceChart c = builtin_chart("sinusoidal-corrugation");
  const PeriodicGrid g(c, 64, 64);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 3; ++k) {
    const TrigField om = TrigField::random(rng, 5, {c.period(0), c.period(1)});
    const TrigField w = TrigField::random(rng, 5, {c.period(0), c.period(1)});
    const LemmaCheck r = symmetry_lemma_check(g, om, w);
    CHECK(r.discrepancy() <= 1e-10 * r.scale);
  }
  const LemmaCheck cst = symmetry_lemma_check(g, Vec3(1, -2, 0.5), TrigField::random(rng, 5, {c.period(0), c.period(1)}));
  CHECK(std::abs(cst.lhs) <= 1e-10 * cst.scale);
  CHECK(cst.rhs == 0.0);
  const PeriodicGrid creased(builtin_chart("corrugation"), 16, 16);
  CHECK_THROWS(symmetry_lemma_check(creased, TrigField{}, TrigField{}));
}
