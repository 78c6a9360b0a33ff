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

}  // namespace

TEST_CASE("sym_vec preserves the Frobenius norm") {
  const Mat2 S = m2(1, 2, 2, -3);
  CHECK(sym_vec(S).norm() == Approx(S.norm()));
  CHECK((sym_mat(sym_vec(S)) - S).norm() < 1e-15);
}

TEST_CASE("membrane tensor symmetrizes <p, pdot>") {
  const std::array<Vec3, 2> p{Vec3::UnitX(), Vec3::UnitY()};
  const std::array<Vec3, 2> pd{Vec3(2, 1, 5), Vec3(3, -1, 0)};
  const Mat2 E = membrane_tensor(p, pd);
  CHECK((E - m2(2, 2, 2, -1)).norm() < 1e-15);
}

TEST_CASE("bending tensor of the plane mode returns the prescribed curvature") {
  const SurfaceChart plane = SurfaceChart::plane();
  const Mat2 chi = m2(0.7, -0.2, -0.2, 1.5);
  const AnalyticMode a = analytic_mode(ExampleId::plane_bend, plane, chi);
  const EffectiveBending b = bending_tensor(a.W1, a.W2, period_geometry(plane));
  CHECK((b.chi - chi).norm() < 1e-15);
}

TEST_CASE("orthogonality residual and its adjugate form") {
  const Mat2 E = m2(1, 0, 0, -1);
  CHECK(orthogonality_residual(E, Mat2::Identity()) == Approx(0.0));
  CHECK(orthogonality_residual(E, m2(0, 1, 1, 0)) == Approx(0.0));
  CHECK(orthogonality_residual(E, m2(1, 0, 0, 0)) == Approx(-1.0));
  const Mat2 A = m2(0.3, -1.1, -1.1, 2.0), C = m2(-0.4, 0.25, 0.25, 0.9);
  CHECK(orthogonality_residual(A, C) ==
        Approx(A(0, 0) * C(1, 1) - 2 * A(0, 1) * C(0, 1) + A(1, 1) * C(0, 0)));
  CHECK(orthogonality_residual_adjugate(A, C) == Approx(orthogonality_residual(A, C)));
  CHECK((adjugate(A) * A - A.determinant() * Mat2::Identity()).norm() < 1e-14);
}

TEST_CASE("eggbox Poisson ratios are equal and opposite") {
  const Mat2 E = m2(1, 0, 0, -1);
  const PoissonRatios p = poisson_ratios(E, std::vector<Mat2>{Mat2::Identity(), m2(0, 1, 1, 0)}, Mat2::Identity());
  REQUIRE(p.in_plane);
  REQUIRE(p.out_of_plane);
  CHECK(*p.in_plane == Approx(1.0));
  CHECK(*p.out_of_plane == Approx(-1.0));
  REQUIRE(p.identity_residual());
  CHECK(*p.identity_residual() == Approx(0.0).scale(1.0));
  CHECK_FALSE(p.degenerate);
}

TEST_CASE("hybrid eggbox Poisson ratios use the principal basis") {
  const Mat2 E = m2(1.0 / 3.0, 0, 0, -1);
  const Mat2 dome = m2(1, 0, 0, 3);
  const PoissonRatios p = poisson_ratios(E, dome, Mat2::Identity());
  REQUIRE(p.in_plane);
  REQUIRE(p.out_of_plane);
  // |E22| > |E11|: the second parameter direction comes first.
  CHECK(*p.in_plane == Approx(1.0 / 3.0));
  CHECK(*p.out_of_plane == Approx(-1.0 / 3.0));
  CHECK(std::abs(*p.identity_residual()) < 1e-12);
}

TEST_CASE("isotropic E keeps the parameter basis") {
  const PoissonRatios p = poisson_ratios(Mat2::Identity(), m2(1, 0, 0, -1), Mat2::Identity());
  CHECK(p.degenerate);
  REQUIRE(p.in_plane);
  CHECK(*p.in_plane == Approx(-1.0));
  CHECK(*p.out_of_plane == Approx(1.0));
}

TEST_CASE("analytic deflections are strain free") {
  for (const std::string name : {"corrugation", "eggbox", "miura", "translation"}) {
    CAPTURE(name);
    const SurfaceChart c = builtin_chart(name);
    const PeriodicGrid g(c, 16, 16);
    for (ExampleId id : {ExampleId::corrugation_membrane, ExampleId::eggbox_membrane,
                         ExampleId::miura_membrane, ExampleId::translation_twist}) {
      AnalyticMode a;
      try {
        a = analytic_mode(id, c);
      } catch (const std::invalid_argument&) {
        continue;
      }
      const DeflectionField d = sample_deflection(a, g);
      CHECK(max_edge_strain(d, g) < 1e-13);
      double worst = 0;
      for (const Mat2& e : membrane_strain_field(d, g)) worst = std::max(worst, e.norm());
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("edge strain of curved-panel deflections decays with refinement") {
  std::vector<double> e;
  for (int N : {16, 32, 64}) {
    const SurfaceChart c = builtin_chart("eggbox-hybrid");
    const PeriodicGrid g(c, N, N);
    e.push_back(max_edge_strain(sample_deflection(analytic_mode(ExampleId::eggbox_membrane, c), g), g));
  }
  CHECK(e[1] < e[0] / 3);
  CHECK(e[2] < e[1] / 3);
}

TEST_CASE("membrane strain needs a periodic rotation field") {
  const SurfaceChart c = builtin_chart("corrugation");
  const PeriodicGrid g(c, 16, 16);
  const ConstraintSystem s = assemble_system(g);
  const RotationMode bend = sample_rotation(analytic_mode(ExampleId::corrugation_bend, c), g);
  CHECK_THROWS(effective_membrane_strain(bend, s, g));
  const RotationMode stretch = sample_rotation(analytic_mode(ExampleId::corrugation_membrane, c), g);
  const Mat2 E = effective_membrane_strain(stretch, s, g).E;
  CHECK(E(0, 0) == Approx(1.0));
  CHECK(std::abs(E(0, 1)) < 1e-14);
  CHECK(std::abs(E(1, 1)) < 1e-14);
}
