#pragma once

#include "corruga/rotation_solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace corruga {

struct EffectiveStrain {
  Mat2 E = Mat2::Zero();
};

struct EffectiveBending {
  Mat2 chi = Mat2::Zero();
  Vec3 normal_used = Vec3::UnitZ();
};

/// (S11, sqrt2 S12, S22): the Euclidean norm equals the Frobenius norm.
Eigen::Vector3d sym_vec(const Mat2& S);
Mat2 sym_mat(const Eigen::Vector3d& v);

/// E_mn = (<p_m, pdot_n> + <p_n, pdot_m>) / 2.
Mat2 membrane_tensor(const std::array<Vec3, 2>& p, const std::array<Vec3, 2>& pdot);
/// chi_mn = <W_n ^ p_m + W_m ^ p_n, n> / 2.
EffectiveBending bending_tensor(const Vec3& W1, const Vec3& W2, const PeriodGeometry& geometry);

/// pdot_a: cell average of w ^ x_a, exact for fields linear along edges.
std::array<Vec3, 2> mean_rotation_moments(const RotationMode& mode, const ConstraintSystem& system,
                                          const PeriodicGrid& grid);

/// Requires a periodic rotation field (|W| below tol relative to the mode).
EffectiveStrain effective_membrane_strain(const RotationMode& mode, const ConstraintSystem& system,
                                          const PeriodicGrid& grid, double tol = 1e-6);
EffectiveBending effective_bending_strain(const RotationMode& mode, const PeriodGeometry& geometry);

/// Per-node infinitesimal strain of a deflection, via panel-wise derivatives.
std::vector<Mat2> membrane_strain_field(const DeflectionField& deflection, const PeriodicGrid& grid);
/// max over grid edges of |<d xdot, d x>| / |d x|^2.
double max_edge_strain(const DeflectionField& deflection, const PeriodicGrid& grid);

/// E11 chi22 - 2 E12 chi12 + E22 chi11.
double orthogonality_residual(const Mat2& E, const Mat2& chi);
/// tr(adj(E) chi), the index-free form of the same quantity.
double orthogonality_residual_adjugate(const Mat2& E, const Mat2& chi);
Mat2 adjugate(const Mat2& m);

Mat2 parameter_metric(const PeriodGeometry& geometry);

struct PoissonRatios {
  Mat2 basis = Mat2::Identity();  // columns: principal directions (metric-orthonormal)
  Mat2 E_principal = Mat2::Zero();
  Mat2 chi_principal = Mat2::Zero();
  std::optional<double> in_plane;      // -E'22 / E'11
  std::optional<double> out_of_plane;  // -chi'22 / chi'11
  bool degenerate = false;             // E isotropic: parameter basis kept
  std::string note;

  /// E'22 / E'11 + chi'22 / chi'11; zero when the ratios are equal and opposite.
  std::optional<double> identity_residual() const;
};

PoissonRatios poisson_ratios(const Mat2& E, const Mat2& chi, const Mat2& metric, double tol = 1e-9);
/// Picks the element of a bending space with chi'12 = 0 in the principal basis.
PoissonRatios poisson_ratios(const Mat2& E, const std::vector<Mat2>& bending, const Mat2& metric,
                             double tol = 1e-9);

struct ClassifiedMode {
  RotationMode mode;
  /// For bending modes this is the window average of w ^ x_a paired with p;
  /// it depends on where the period window sits and is informative only.
  Mat2 E = Mat2::Zero();
  Mat2 chi = Mat2::Zero();
  std::string label;  // constant, membrane, bending
};

struct StrainSpaces {
  std::array<int, 2> dims{0, 0};
  std::vector<Mat2> E_basis;    // orthonormal in sym_vec coordinates
  std::vector<Mat2> chi_basis;
  Eigen::VectorXd E_singular, chi_singular, W_singular;
  RankDecision W_decision, E_decision, chi_decision;
  int null_dim = 0;
  int constant_dim = 0;   // membrane directions with E = 0
  int flat_bending = 0;   // growth directions with chi = 0
  std::vector<ClassifiedMode> modes;

  bool dimension_bound_holds() const { return dims[0] + dims[1] <= 3; }
  bool ambiguous() const {
    return W_decision.ambiguous || E_decision.ambiguous || chi_decision.ambiguous;
  }
  std::vector<Mat2> membrane_strains() const;
  std::vector<Mat2> bending_strains() const;
};

/// Splits the span of `modes` into constants, membrane modes (W = 0, E != 0)
/// and bending modes (W != 0), and measures dim{E} and dim{chi}.
StrainSpaces strain_space_dims(const std::vector<RotationMode>& modes,
                               const ConstraintSystem& system, const PeriodicGrid& grid,
                               const PeriodGeometry& geometry,
                               const ThresholdPolicy& policy = ThresholdPolicy::automatic());

}  // namespace corruga
