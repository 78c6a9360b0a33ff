#pragma once

#include "corruga/grid.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <memory>
#include <string>
#include <vector>

namespace corruga {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class RowKind { interior_pde, crease_admissibility };

/// Discrete D_x w = 0 with crease admissibility.
///
/// Unknowns: w at every node (3 each), then the per-period growth vectors
/// What_1, What_2 (3 each). A shifted node reference reads
/// w + s1 What_1 + s2 What_2, so wrap conditions never appear as rows.
///
/// Interior rows: for every cell, the circulation sum over its four edges of
/// the exact edge integral of w ^ dx (w linear along the edge), divided by the
/// cell area. Crease rows: the same edge integral of the jump [w] along each
/// crease edge, divided by the squared edge length.
struct ConstraintSystem {
  SparseMatrix matrix;
  std::vector<RowKind> row_kind;      // one per scalar row
  std::vector<bool> row_at_corner;    // crease rows touching a crease crossing
  /// Effective functional: rows 0-5 give pdot_1, pdot_2 (cell averages of
  /// w ^ x_a); rows 6-11 give W_1, W_2 (per unit parameter).
  Eigen::MatrixXd effective;
  std::array<Vec3, 2> p;  // quadrature mean tangents
  int node_count = 0;

  int unknowns() const { return static_cast<int>(matrix.cols()); }
  int rows() const { return static_cast<int>(matrix.rows()); }
  int interior_rows() const;
  int crease_rows() const;
  int growth_offset() const { return 3 * node_count; }
};

ConstraintSystem assemble_system(const PeriodicGrid& grid);

struct RotationMode {
  Eigen::VectorXd w;  // 3 * nodes
  Vec3 W1 = Vec3::Zero(), W2 = Vec3::Zero();  // growth per unit parameter
  double sigma = 0;   // |A u| / |u| over the unknown vector
  std::string label;

  Vec3 at(int node) const { return w.segment<3>(3 * node); }
  Vec3 at(const NodeRef& r, const PeriodicGrid& grid) const;
};

Eigen::VectorXd to_unknowns(const RotationMode& mode, const PeriodicGrid& grid);
RotationMode from_unknowns(const Eigen::VectorXd& u, const PeriodicGrid& grid);
/// w = c at every node, no growth.
RotationMode constant_mode(const Vec3& c, const PeriodicGrid& grid);

/// How a descending list of singular values is split into kept / dropped.
///
/// automatic: the cut sits at the largest ratio s_k / s_(k+1) among values
/// with s_k / scale >= significance; a ratio below min_gap is ambiguous.
/// fixed: keep every value with s_k / scale >= cut.
struct ThresholdPolicy {
  enum class Mode { automatic, fixed } mode = Mode::automatic;
  double cut = 1e-3;
  double significance = 1e-3;
  double min_gap = 10.0;

  static ThresholdPolicy automatic() { return {}; }
  static ThresholdPolicy fixed(double cut) { return {Mode::fixed, cut, 1e-3, 10.0}; }
  std::string describe() const;
};

struct RankDecision {
  int rank = 0;
  double gap_ratio = 0;  // s_rank / s_(rank+1); infinity when nothing follows
  double cut = 0;        // value between kept and dropped, relative to scale
  bool ambiguous = false;
};

RankDecision decide_rank(const Eigen::VectorXd& descending, double scale,
                         const ThresholdPolicy& policy);

/// Parameters of the null-space filter F = lambda (A^T A + lambda I)^-1,
/// lambda = tau^2, applied `passes` times.
struct FilterOptions {
  double tau = 1e-3;
  int passes = 4;
  int refinement_steps = 1;
};

class NullspaceFilter {
 public:
  NullspaceFilter(const ConstraintSystem& system, FilterOptions options = {});
  ~NullspaceFilter();
  NullspaceFilter(NullspaceFilter&&) noexcept;
  NullspaceFilter& operator=(NullspaceFilter&&) noexcept;

  /// (A^T A + lambda I)^-1 with iterative refinement.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
  /// F^passes applied to each column.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& rhs) const;
  /// |u - F^passes u| / |u|: distance of u from the numerical null space.
  double projection_residual(const Eigen::VectorXd& u) const;
  const FilterOptions& options() const { return options_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  FilterOptions options_;
};

struct NullspaceResult {
  std::vector<RotationMode> modes;  // sorted by sigma ascending
  /// Effective spectrum: sqrt(mu_k / mu_max) for the eigenvalues of
  /// G F^k G^T, descending (12 values).
  Eigen::VectorXd spectrum;
  Eigen::VectorXd eigenvalues;
  RankDecision decision;
  ThresholdPolicy policy;
  FilterOptions filter;
};

/// Numerical null space seen through the effective functional: the image of
/// the discrete kernel under (pdot_1, pdot_2, W_1, W_2). Returns one mode per
/// kept direction of that image. When the automatic policy finds no gap the
/// decision is flagged ambiguous and no modes are returned.
NullspaceResult nullspace(const ConstraintSystem& system, const PeriodicGrid& grid,
                          const ThresholdPolicy& policy = ThresholdPolicy::automatic(),
                          const FilterOptions& filter = {});
/// Same, reusing an existing filter factorization.
NullspaceResult nullspace(const ConstraintSystem& system, const PeriodicGrid& grid,
                          const NullspaceFilter& filter,
                          const ThresholdPolicy& policy = ThresholdPolicy::automatic());

/// Full singular values of the assembled matrix (dense; small grids only).
Eigen::VectorXd system_singular_values(const ConstraintSystem& system);

/// Deflection on the 3 x 3 block of periods around the base period.
struct DeflectionField {
  std::vector<Vec3> values;  // (id, s1, s2) with s in {-1, 0, 1}
  int node_count = 0;

  const Vec3& at(const NodeRef& r) const;
  Vec3& at(const NodeRef& r);
  std::vector<Vec3> base() const;
};

enum class TreeOrder { breadth_first, depth_first };

/// Integrates xdot increments int w ^ dx over a spanning tree of grid edges,
/// anchored at xdot(node 0) = 0.
DeflectionField recover_deflection(const RotationMode& mode, const PeriodicGrid& grid,
                                   TreeOrder order = TreeOrder::breadth_first);

}  // namespace corruga
