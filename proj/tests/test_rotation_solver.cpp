#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corruga/analysis.hpp"

using namespace corruga;
using doctest::Approx;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) out[k++] = x;
  return out;
}

}  // namespace

TEST_CASE("automatic rank picks the largest significant gap") {
  const RankDecision d = decide_rank(vec({1, 0.9, 0.8, 1e-9, 1e-10}), 1.0, ThresholdPolicy::automatic());
  CHECK(d.rank == 3);
  CHECK_FALSE(d.ambiguous);
  CHECK(d.gap_ratio == Approx(0.8e9));
}

TEST_CASE("automatic rank is ambiguous without a gap") {
  const RankDecision d = decide_rank(vec({1, 0.3, 0.1, 0.03, 0.01, 3e-3, 1e-3, 3e-4, 1e-4}), 1.0, ThresholdPolicy::automatic());
  CHECK(d.ambiguous);
}

TEST_CASE("nothing significant gives rank zero") {
  const RankDecision d = decide_rank(vec({1e-5, 1e-7}), 1.0, ThresholdPolicy::automatic());
  CHECK(d.rank == 0);
  CHECK_FALSE(d.ambiguous);
}

TEST_CASE("fixed policy counts values above the cut") {
  const RankDecision d = decide_rank(vec({1, 1e-2, 1e-4}), 1.0, ThresholdPolicy::fixed(1e-3));
  CHECK(d.rank == 2);
  CHECK_FALSE(d.ambiguous);
}

TEST_CASE("row counts: one box row triple per cell and per crease edge") {
  const PeriodicGrid g(builtin_chart("corrugation"), 16, 16);
  const ConstraintSystem s = assemble_system(g);
  CHECK(s.unknowns() == 3 * 18 * 16 + 6);
  CHECK(s.interior_rows() == 3 * 16 * 16);
  CHECK(s.crease_rows() == 3 * 2 * 16);
  CHECK(s.rows() == s.interior_rows() + s.crease_rows());
}

TEST_CASE("unknown vector round trip") {
  const PeriodicGrid g(builtin_chart("eggbox"), 16, 16);
  RotationMode m;
  m.w = Eigen::VectorXd::LinSpaced(3 * g.size(), -1, 1);
  m.W1 = Vec3(0.1, 0.2, 0.3);
  m.W2 = Vec3(-0.5, 0, 2);
  const RotationMode r = from_unknowns(to_unknowns(m, g), g);
  CHECK((r.w - m.w).norm() < 1e-14);
  CHECK((r.W1 - m.W1).norm() < 1e-14);
  CHECK((r.W2 - m.W2).norm() < 1e-14);
}

TEST_CASE("analytic modes are exact kernel vectors of the discrete system") {
  for (const std::string name : {"plane", "corrugation", "eggbox", "eggbox-hybrid", "miura",
                                 "miura-hybrid", "translation"}) {
    const SurfaceChart c = builtin_chart(name);
    const PeriodicGrid g(c, 16, 16);
    const ConstraintSystem s = assemble_system(g);
    const Eigen::VectorXd cst = to_unknowns(constant_mode(Vec3(0.3, -1, 2), g), g);
    CHECK((s.matrix * cst).norm() / cst.norm() < 1e-13);
    for (ExampleId id : examples_for(c)) {
      CAPTURE(name);
      CAPTURE(to_string(id));
      const Eigen::VectorXd u = to_unknowns(sample_rotation(analytic_mode(id, c), g), g);
      CHECK((s.matrix * u).norm() / u.norm() < 1e-13);
    }
  }
}

TEST_CASE("plane null space: three constants and three bending directions") {
  const PeriodicGrid g(SurfaceChart::plane(), 16, 16);
  const ConstraintSystem s = assemble_system(g);
  const NullspaceResult r = nullspace(s, g);
  CHECK_FALSE(r.decision.ambiguous);
  CHECK(r.decision.rank == 6);
  CHECK(r.modes.size() == 6);
  CHECK(r.spectrum.size() == 12);
  CHECK(r.spectrum[0] == Approx(1.0));
  for (const RotationMode& m : r.modes) CHECK(m.sigma < 1e-10);
}

TEST_CASE("filter residual separates kernel vectors from the rest") {
  const PeriodicGrid g(builtin_chart("eggbox"), 16, 16);
  const ConstraintSystem s = assemble_system(g);
  const NullspaceFilter f(s);
  const Eigen::VectorXd k = to_unknowns(constant_mode(Vec3(1, 2, 3), g), g);
  CHECK(f.projection_residual(k) < 1e-12);
  Eigen::VectorXd rough = Eigen::VectorXd::Zero(s.unknowns());
  for (int i = 0; i < 3 * g.size(); ++i) rough[i] = (i % 5) - 2.0;
  CHECK(f.projection_residual(rough) > 0.5);
  CHECK_THROWS(NullspaceFilter(s, FilterOptions{-1.0, 4, 1}));
}

TEST_CASE("recovered deflection reproduces the analytic one") {
  for (const std::string name : {"corrugation", "eggbox", "miura", "translation"}) {
    CAPTURE(name);
    const SurfaceChart c = builtin_chart(name);
    const PeriodicGrid g(c, 16, 16);
    for (ExampleId id : examples_for(c)) {
      const AnalyticMode a = analytic_mode(id, c);
      const DeflectionField exact = sample_deflection(a, g);
      for (TreeOrder order : {TreeOrder::breadth_first, TreeOrder::depth_first}) {
        const DeflectionField rec = recover_deflection(sample_rotation(a, g), g, order);
        double err = 0, scale = 0;
        for (std::size_t k = 0; k < exact.values.size(); ++k) {
          err = std::max(err, (rec.values[k] - exact.values[k]).norm());
          scale = std::max(scale, exact.values[k].norm());
        }
        CHECK(err < 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("recovered deflection converges on curved panels") {
  std::vector<double> errs;
  for (int N : {16, 32, 64}) {
    const SurfaceChart c = builtin_chart("eggbox-hybrid");
    const PeriodicGrid g(c, N, N);
    const AnalyticMode a = analytic_mode(ExampleId::eggbox_membrane, c);
    const DeflectionField exact = sample_deflection(a, g);
    const DeflectionField rec = recover_deflection(sample_rotation(a, g), g);
    double err = 0;
    for (std::size_t k = 0; k < exact.values.size(); ++k) {
      err = std::max(err, (rec.values[k] - exact.values[k]).norm());
    }
    errs.push_back(err);
  }
  for (std::size_t k = 1; k < errs.size(); ++k) {
    CHECK(errs[k] <= std::max(errs[k - 1] / 3.0, 1e-12));
  }
}
