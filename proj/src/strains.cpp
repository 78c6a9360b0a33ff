#include "corruga/strains.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace corruga {

Eigen::Vector3d sym_vec(const Mat2& S) {
  return {S(0, 0), std::sqrt(2.0) * 0.5 * (S(0, 1) + S(1, 0)), S(1, 1)};
}

Mat2 sym_mat(const Eigen::Vector3d& v) {
  Mat2 S;
  const double off = v[1] / std::sqrt(2.0);
  S << v[0], off, off, v[2];
  return S;
}

Mat2 membrane_tensor(const std::array<Vec3, 2>& p, const std::array<Vec3, 2>& pdot) {
  Mat2 E;
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) E(m, n) = 0.5 * (p[m].dot(pdot[n]) + p[n].dot(pdot[m]));
  }
  return E;
}

EffectiveBending bending_tensor(const Vec3& W1, const Vec3& W2, const PeriodGeometry& g) {
  const std::array<Vec3, 2> W{W1, W2};
  const std::array<Vec3, 2> p{g.p1, g.p2};
  EffectiveBending b;
  b.normal_used = g.n;
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      b.chi(m, n) = 0.5 * (W[n].cross(p[m]) + W[m].cross(p[n])).dot(g.n);
    }
  }
  return b;
}

std::array<Vec3, 2> mean_rotation_moments(const RotationMode& mode, const ConstraintSystem& system,
                                          const PeriodicGrid& grid) {
  const Eigen::VectorXd v = system.effective.topRows(6) * to_unknowns(mode, grid);
  return {Vec3(v.segment<3>(0)), Vec3(v.segment<3>(3))};
}

EffectiveStrain effective_membrane_strain(const RotationMode& mode, const ConstraintSystem& system,
                                          const PeriodicGrid& grid, double tol) {
  const double scale = std::max(mode.w.cwiseAbs().maxCoeff(), 1e-300) /
                       std::max(grid.axis(0).period, grid.axis(1).period);
  if (mode.W1.norm() > tol * scale || mode.W2.norm() > tol * scale) {
    throw std::invalid_argument("rotation field is not periodic (W != 0): not a membrane mode");
  }
  const PeriodGeometry g = period_geometry(grid.chart());
  return {membrane_tensor({g.p1, g.p2}, mean_rotation_moments(mode, system, grid))};
}

EffectiveBending effective_bending_strain(const RotationMode& mode, const PeriodGeometry& geometry) {
  return bending_tensor(mode.W1, mode.W2, geometry);
}

std::vector<Mat2> membrane_strain_field(const DeflectionField& deflection, const PeriodicGrid& grid) {
  const VectorAccessor value = [&](const NodeRef& r) { return deflection.at(r); };
  const std::array<std::vector<Vec3>, 2> d = {differentiate(value, grid, 0),
                                              differentiate(value, grid, 1)};
  std::vector<Mat2> eps(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const auto& x = grid.partials(k);
    for (int m = 0; m < 2; ++m) {
      for (int n = 0; n < 2; ++n) eps[k](m, n) = 0.5 * (d[m][k].dot(x[n]) + d[n][k].dot(x[m]));
    }
  }
  return eps;
}

double max_edge_strain(const DeflectionField& deflection, const PeriodicGrid& grid) {
  double worst = 0;
  for (int a = 0; a < 2; ++a) {
    const AxisLayout& A = grid.axis(a);
    for (const AxisEdge& e : A.edges) {
      for (int k = 0; k < grid.n(1 - a); ++k) {
        const NodeRef ra = a == 0 ? NodeRef{grid.id(e.a, k), 0, 0} : NodeRef{grid.id(k, e.a), 0, 0};
        const NodeRef rb = a == 0 ? NodeRef{grid.id(e.b, k), e.shift, 0}
                                  : NodeRef{grid.id(k, e.b), 0, e.shift};
        const Vec3 dx = grid.position(rb) - grid.position(ra);
        const Vec3 dv = deflection.at(rb) - deflection.at(ra);
        worst = std::max(worst, std::abs(dv.dot(dx)) / dx.squaredNorm());
      }
    }
  }
  return worst;
}

double orthogonality_residual(const Mat2& E, const Mat2& chi) {
  return E(0, 0) * chi(1, 1) - 2 * E(0, 1) * chi(0, 1) + E(1, 1) * chi(0, 0);
}

Mat2 adjugate(const Mat2& m) {
  Mat2 a;
  a << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return a;
}

double orthogonality_residual_adjugate(const Mat2& E, const Mat2& chi) {
  return (adjugate(E) * chi).trace();
}

Mat2 parameter_metric(const PeriodGeometry& g) {
  Mat2 m;
  m << g.p1.dot(g.p1), g.p1.dot(g.p2), g.p2.dot(g.p1), g.p2.dot(g.p2);
  return m;
}

std::optional<double> PoissonRatios::identity_residual() const {
  if (!in_plane || !out_of_plane) return std::nullopt;
  return -*in_plane - *out_of_plane;
}

namespace {

Mat2 principal_basis(const Mat2& E, const Mat2& metric, double tol, bool& degenerate) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat2> ges(E, metric);
  Eigen::Vector2d lam = ges.eigenvalues();
  Mat2 V = ges.eigenvectors();
  const double big = std::max(std::abs(lam[0]), std::abs(lam[1]));
  degenerate = std::abs(lam[0] - lam[1]) <= std::max(tol, 1e-6) * big;
  if (degenerate) {
    // Metric Gram-Schmidt of the parameter basis.
    Eigen::Vector2d e1(1, 0), e2(0, 1);
    e1 /= std::sqrt(e1.dot(metric * e1));
    e2 -= e1.dot(metric * e2) * e1;
    e2 /= std::sqrt(e2.dot(metric * e2));
    V.col(0) = e1;
    V.col(1) = e2;
    return V;
  }
  if (std::abs(lam[1]) > std::abs(lam[0])) V.col(0).swap(V.col(1));
  for (int c = 0; c < 2; ++c) {
    // Deterministic orientation: largest component positive.
    Eigen::Index k;
    V.col(c).cwiseAbs().maxCoeff(&k);
    if (V(k, c) < 0) V.col(c) = -V.col(c);
  }
  return V;
}

}  // namespace

PoissonRatios poisson_ratios(const Mat2& E, const Mat2& chi, const Mat2& metric, double tol) {
  return poisson_ratios(E, std::vector<Mat2>{chi}, metric, tol);
}

PoissonRatios poisson_ratios(const Mat2& E, const std::vector<Mat2>& bending, const Mat2& metric,
                             double tol) {
  if (E.norm() <= tol) throw std::invalid_argument("Poisson ratios need a nonzero membrane strain");
  PoissonRatios out;
  out.basis = principal_basis(E, metric, tol, out.degenerate);
  const Mat2& J = out.basis;
  out.E_principal = J.transpose() * E * J;

  Mat2 chi = Mat2::Zero();
  if (bending.size() == 1) {
    chi = bending[0];
  } else if (bending.size() >= 2) {
    const Mat2 a = J.transpose() * bending[0] * J;
    const Mat2 b = J.transpose() * bending[1] * J;
    if (std::abs(a(0, 1)) <= tol * a.norm()) {
      chi = bending[0];
    } else {
      chi = b(0, 1) * bending[0] - a(0, 1) * bending[1];
    }
  }
  out.chi_principal = J.transpose() * chi * J;

  const Mat2& Ep = out.E_principal;
  const Mat2& Cp = out.chi_principal;
  if (std::abs(Ep(0, 0)) > tol * Ep.norm()) {
    out.in_plane = -Ep(1, 1) / Ep(0, 0);
  } else {
    out.note += "in-plane ratio undefined (E'11 ~ 0); ";
  }
  if (Cp.norm() > 0 && std::abs(Cp(0, 0)) > tol * Cp.norm()) {
    out.out_of_plane = -Cp(1, 1) / Cp(0, 0);
  } else {
    out.note += "out-of-plane ratio undefined (chi'11 ~ 0); ";
  }
  if (out.degenerate) out.note += "E isotropic in the metric: parameter basis kept; ";
  return out;
}

std::vector<Mat2> StrainSpaces::membrane_strains() const {
  std::vector<Mat2> out;
  for (const auto& m : modes) {
    if (m.label == "membrane") out.push_back(m.E);
  }
  return out;
}

std::vector<Mat2> StrainSpaces::bending_strains() const {
  std::vector<Mat2> out;
  for (const auto& m : modes) {
    if (m.label == "bending") out.push_back(m.chi);
  }
  return out;
}

StrainSpaces strain_space_dims(const std::vector<RotationMode>& modes,
                               const ConstraintSystem& system, const PeriodicGrid& grid,
                               const PeriodGeometry& geometry, const ThresholdPolicy& policy) {
  StrainSpaces out;
  const int k = static_cast<int>(modes.size());
  const int n = system.unknowns();
  const double pscale = std::sqrt(geometry.p1.squaredNorm() + geometry.p2.squaredNorm());
  const std::array<Vec3, 2> p{geometry.p1, geometry.p2};

  for (int c = 0; c < 3; ++c) {
    ClassifiedMode cm;
    cm.mode = constant_mode(Vec3::Unit(c), grid);
    cm.label = "constant";
    out.modes.push_back(cm);
  }
  if (k == 0) return out;

  Eigen::MatrixXd U(n, k);
  for (int c = 0; c < k; ++c) U.col(c) = to_unknowns(modes[c], grid);
  const Eigen::MatrixXd P = system.effective * U;
  Eigen::JacobiSVD<Eigen::MatrixXd> psvd(P, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd ps = psvd.singularValues();
  int r = 0;
  while (r < ps.size() && ps[r] > 1e-10 * ps[0]) ++r;
  out.null_dim = r;
  const Eigen::MatrixXd Q = psvd.matrixU().leftCols(r);
  const Eigen::MatrixXd basis =
      U * psvd.matrixV().leftCols(r) * ps.head(r).cwiseInverse().asDiagonal();

  // Growth block.
  const Eigen::MatrixXd Wb = Q.bottomRows(6);
  Eigen::JacobiSVD<Eigen::MatrixXd> wsvd(Wb, Eigen::ComputeFullV);
  out.W_singular = wsvd.singularValues();
  out.W_decision = decide_rank(out.W_singular, 1.0, policy);
  const int rW = out.W_decision.rank;
  const Eigen::MatrixXd Vw = wsvd.matrixV();

  auto finish = [&](const Eigen::VectorXd& coeff) {
    Eigen::VectorXd u = basis * coeff;
    u.normalize();
    RotationMode m = from_unknowns(u, grid);
    m.sigma = (system.matrix * u).norm();
    return m;
  };

  // Membrane: W = 0.
  const int mdim = r - rW;
  if (mdim > 0) {
    const Eigen::MatrixXd Z = Vw.rightCols(mdim);
    const Eigen::MatrixXd pd = Q.topRows(6) * Z;
    Eigen::MatrixXd Em(3, mdim);
    for (int c = 0; c < mdim; ++c) {
      Em.col(c) = sym_vec(membrane_tensor(p, {Vec3(pd.col(c).segment<3>(0)), Vec3(pd.col(c).segment<3>(3))}));
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> esvd(Em, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.E_singular = esvd.singularValues();
    out.E_decision = decide_rank(out.E_singular, pscale, policy);
    out.dims[0] = out.E_decision.rank;
    out.constant_dim = mdim - out.dims[0];
    for (int c = 0; c < out.dims[0]; ++c) {
      out.E_basis.push_back(sym_mat(esvd.matrixU().col(c)));
      ClassifiedMode cm;
      cm.mode = finish(Z * esvd.matrixV().col(c));
      cm.mode.label = cm.label = "membrane";
      cm.E = membrane_tensor(p, mean_rotation_moments(cm.mode, system, grid));
      out.modes.push_back(cm);
    }
  }

  // Bending: W != 0.
  if (rW > 0) {
    const Eigen::MatrixXd Vb = Vw.leftCols(rW) * out.W_singular.head(rW).cwiseInverse().asDiagonal();
    const Eigen::MatrixXd Wimg = Q.bottomRows(6) * Vb;
    Eigen::MatrixXd Cm(3, rW);
    for (int c = 0; c < rW; ++c) {
      Cm.col(c) = sym_vec(bending_tensor(Wimg.col(c).segment<3>(0), Wimg.col(c).segment<3>(3), geometry).chi);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> csvd(Cm, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.chi_singular = csvd.singularValues();
    out.chi_decision = decide_rank(out.chi_singular, pscale, policy);
    out.dims[1] = out.chi_decision.rank;
    out.flat_bending = rW - out.dims[1];

    for (int c = 0; c < out.dims[1]; ++c) {
      out.chi_basis.push_back(sym_mat(csvd.matrixU().col(c)));
      ClassifiedMode cm;
      cm.mode = finish(Vb * csvd.matrixV().col(c));
      cm.chi = effective_bending_strain(cm.mode, geometry).chi;
      cm.E = membrane_tensor(p, mean_rotation_moments(cm.mode, system, grid));
      cm.label = "bending";
      cm.mode.label = cm.label;
      out.modes.push_back(cm);
    }
  }
  return out;
}

}  // namespace corruga
