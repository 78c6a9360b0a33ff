#pragma once

#include "corruga/strains.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace corruga {

enum class ExampleId {
  plane_bend,
  corrugation_membrane,
  eggbox_membrane,
  miura_membrane,
  translation_twist,
  sheared_membrane,
  corrugation_bend,  // w = (0, -xi1, 0) on a simple corrugation
};

std::string to_string(ExampleId id);
ExampleId example_from_string(const std::string& name);

/// Closed-form infinitesimal isometry: rotation field w (one-sided at
/// creases), deflection xdot with xdot_a = w ^ x_a, growth W_a per unit
/// parameter and the predicted effective tensors.
struct AnalyticMode {
  ExampleId id{};
  std::function<Vec3(const Eigen::Vector2d&, SidePair)> rotation;
  std::function<Vec3(const Eigen::Vector2d&)> deflection;
  Vec3 W1 = Vec3::Zero(), W2 = Vec3::Zero();
  std::optional<Mat2> E;
  std::optional<Mat2> chi;
};

/// `chi` only matters for ex1 (the plane mode with prescribed curvature).
AnalyticMode analytic_mode(ExampleId id, const SurfaceChart& chart,
                           const Mat2& chi = Mat2::Identity());

RotationMode sample_rotation(const AnalyticMode& mode, const PeriodicGrid& grid);
/// Deflection on the 3 x 3 period block, shifted so that node 0 maps to 0.
DeflectionField sample_deflection(const AnalyticMode& mode, const PeriodicGrid& grid);

/// Truncated trigonometric series sum a cos(theta) + b sin(theta) with
/// theta = 2 pi (k1 xi1 / T1 + k2 xi2 / T2).
struct TrigField {
  struct Term {
    int k1 = 0, k2 = 0;
    Vec3 a = Vec3::Zero(), b = Vec3::Zero();
  };
  std::vector<Term> terms;
  std::array<double, 2> period{SurfaceChart::kTwoPi, SurfaceChart::kTwoPi};

  Vec3 value(const Eigen::Vector2d& xi) const;
  std::array<Vec3, 2> partials(const Eigen::Vector2d& xi) const;
  static TrigField random(std::mt19937_64& rng, int harmonics, std::array<double, 2> period,
                          int max_wavenumber = 3);
};

struct LemmaCheck {
  double lhs = 0;    // mean <omega, D_x w>
  double rhs = 0;    // mean <w, D_x omega>
  double scale = 0;  // mean |omega||D_x w| + mean |w||D_x omega|
  double discrepancy() const { return std::abs(lhs - rhs); }
};

/// D_x w = w_2 ^ x_1 - w_1 ^ x_2 with analytic field derivatives, averaged
/// by the grid quadrature. The chart must be smooth.
LemmaCheck symmetry_lemma_check(const PeriodicGrid& grid, const TrigField& omega, const TrigField& w);
LemmaCheck symmetry_lemma_check(const PeriodicGrid& grid, const Vec3& omega, const TrigField& w);

struct ScalingCheck {
  std::vector<double> eps;
  std::vector<double> error;  // max over probes of |eps^2 xdot(xi/eps) - limit(xi)|
  double fitted_rate = 0;     // least-squares slope of log error vs log eps
  bool monotone = false;
};

/// Probes: a uniform (probes_per_side)^2 lattice on [-1, 1]^2.
ScalingCheck scaling_limit_check(const AnalyticMode& mode, const PeriodGeometry& geometry,
                                 const std::vector<double>& eps, int probes_per_side = 41);

struct ReparametrizationCheck {
  double gamma = 0;
  Mat2 shear = Mat2::Identity();  // S = d(eta)/d(xi) = [[1, 0], [gamma, 1]]
  Mat2 E_direct = Mat2::Zero();   // from the sheared closed-form deflection
  Mat2 E_congruence = Mat2::Zero();  // S^T diag(F, -G) S
  double congruence_error = 0;
  std::vector<Mat2> chi_unsheared;
  std::vector<Mat2> chi_sheared;  // S^T chi S
  std::vector<double> residual_unsheared;  // E11 chi22 - 2 E12 chi12 + E22 chi11
  std::vector<double> residual_sheared;
  /// F chi22 - G (gamma^2 chi22 - 2 gamma chi12 + chi11)
  std::vector<double> residual_rearranged;
  /// The same with +2 gamma chi12, as sometimes printed.
  std::vector<double> residual_printed_sign;
};

ReparametrizationCheck reparametrization_check(const Profile& f, const Profile& g, double gamma);

}  // namespace corruga
