#include "corruga/rotation_solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace corruga {

namespace {

/// M such that M w = w ^ v.
Eigen::Matrix3d cross_matrix(const Vec3& v) {
  Eigen::Matrix3d m;
  m << 0, v.z(), -v.y(), -v.z(), 0, v.x(), v.y(), -v.x(), 0;
  return m;
}

class TripletSink {
 public:
  explicit TripletSink(int nodes) : offset_(3 * nodes) {}

  void put(int row, const NodeRef& r, const Eigen::Matrix3d& m) {
    for (int a = 0; a < 3; ++a) {
      for (int c = 0; c < 3; ++c) {
        const double v = m(a, c);
        if (v == 0) continue;
        t_.emplace_back(row + a, 3 * r.id + c, v);
        if (r.s1) t_.emplace_back(row + a, offset_ + c, r.s1 * v);
        if (r.s2) t_.emplace_back(row + a, offset_ + 3 + c, r.s2 * v);
      }
    }
  }
  std::vector<Eigen::Triplet<double>>& triplets() { return t_; }

 private:
  int offset_;
  std::vector<Eigen::Triplet<double>> t_;
};

void add_dense(Eigen::MatrixXd& G, int row, int offset, const NodeRef& r,
               const Eigen::Matrix3d& m) {
  G.block<3, 3>(row, 3 * r.id) += m;
  if (r.s1) G.block<3, 3>(row, offset) += r.s1 * m;
  if (r.s2) G.block<3, 3>(row, offset + 3) += r.s2 * m;
}

}  // namespace

int ConstraintSystem::interior_rows() const {
  return static_cast<int>(std::count(row_kind.begin(), row_kind.end(), RowKind::interior_pde));
}

int ConstraintSystem::crease_rows() const {
  return static_cast<int>(
      std::count(row_kind.begin(), row_kind.end(), RowKind::crease_admissibility));
}

ConstraintSystem assemble_system(const PeriodicGrid& grid) {
  ConstraintSystem S;
  S.node_count = grid.size();
  const int nu = 3 * grid.size() + 6;
  TripletSink sink(grid.size());
  int row = 0;

  for (const GridCell& c : grid.cells()) {
    const AxisEdge& E1 = grid.axis(0).edges[c.edges[0]];
    const AxisEdge& E2 = grid.axis(1).edges[c.edges[1]];
    const double s = 1.0 / c.area;
    const EdgeMoment& bottom = grid.moment(0, c.edges[0], E2.a);
    const EdgeMoment& right = grid.moment(1, c.edges[1], E1.b);
    const EdgeMoment& top = grid.moment(0, c.edges[0], E2.b);
    const EdgeMoment& left = grid.moment(1, c.edges[1], E1.a);
    sink.put(row, c.corners[0], s * cross_matrix(bottom.da));
    sink.put(row, c.corners[1], s * cross_matrix(bottom.db));
    sink.put(row, c.corners[1], s * cross_matrix(right.da));
    sink.put(row, c.corners[2], s * cross_matrix(right.db));
    sink.put(row, c.corners[3], -s * cross_matrix(top.da));
    sink.put(row, c.corners[2], -s * cross_matrix(top.db));
    sink.put(row, c.corners[0], -s * cross_matrix(left.da));
    sink.put(row, c.corners[3], -s * cross_matrix(left.db));
    for (int k = 0; k < 3; ++k) {
      S.row_kind.push_back(RowKind::interior_pde);
      S.row_at_corner.push_back(false);
    }
    row += 3;
  }

  for (const CreaseEdge& e : grid.crease_edges()) {
    const double len = e.moment.chord.norm();
    if (len == 0) throw std::domain_error("degenerate crease tangent");
    const double s = 1.0 / (len * len);
    const Eigen::Matrix3d Ma = s * cross_matrix(e.moment.da);
    const Eigen::Matrix3d Mb = s * cross_matrix(e.moment.db);
    sink.put(row, e.plus[0], Ma);
    sink.put(row, e.plus[1], Mb);
    sink.put(row, e.minus[0], -Ma);
    sink.put(row, e.minus[1], -Mb);
    for (int k = 0; k < 3; ++k) {
      S.row_kind.push_back(RowKind::crease_admissibility);
      S.row_at_corner.push_back(e.touches_corner);
    }
    row += 3;
  }

  S.matrix.resize(row, nu);
  S.matrix.setFromTriplets(sink.triplets().begin(), sink.triplets().end());
  S.matrix.makeCompressed();

  // Effective functional.
  const int off = 3 * grid.size();
  const double area = grid.area();
  S.effective = Eigen::MatrixXd::Zero(12, nu);
  S.p = {Vec3::Zero(), Vec3::Zero()};
  for (int a = 0; a < 2; ++a) {
    const AxisLayout& A = grid.axis(a);
    const AxisLayout& B = grid.axis(1 - a);
    for (std::size_t ei = 0; ei < A.edges.size(); ++ei) {
      const AxisEdge& e = A.edges[ei];
      for (int k = 0; k < B.size(); ++k) {
        const double wt = B.weights[k] / area;
        const EdgeMoment& m = grid.moment(a, static_cast<int>(ei), k);
        const NodeRef ra = a == 0 ? NodeRef{grid.id(e.a, k), 0, 0} : NodeRef{grid.id(k, e.a), 0, 0};
        const NodeRef rb = a == 0 ? NodeRef{grid.id(e.b, k), e.shift, 0}
                                  : NodeRef{grid.id(k, e.b), 0, e.shift};
        add_dense(S.effective, 3 * a, off, ra, wt * cross_matrix(m.da));
        add_dense(S.effective, 3 * a, off, rb, wt * cross_matrix(m.db));
        S.p[a] += wt * m.chord;
      }
    }
    for (int c = 0; c < 3; ++c) S.effective(6 + 3 * a + c, off + 3 * a + c) = 1.0 / A.period;
  }
  return S;
}

// ---------------------------------------------------------------- modes

Vec3 RotationMode::at(const NodeRef& r, const PeriodicGrid& grid) const {
  return at(r.id) + r.s1 * grid.axis(0).period * W1 + r.s2 * grid.axis(1).period * W2;
}

Eigen::VectorXd to_unknowns(const RotationMode& mode, const PeriodicGrid& grid) {
  const int n = 3 * grid.size();
  if (mode.w.size() != n) throw std::invalid_argument("mode does not match the grid");
  Eigen::VectorXd u(n + 6);
  u.head(n) = mode.w;
  u.segment<3>(n) = grid.axis(0).period * mode.W1;
  u.segment<3>(n + 3) = grid.axis(1).period * mode.W2;
  return u;
}

RotationMode from_unknowns(const Eigen::VectorXd& u, const PeriodicGrid& grid) {
  const int n = 3 * grid.size();
  if (u.size() != n + 6) throw std::invalid_argument("unknown vector does not match the grid");
  RotationMode m;
  m.w = u.head(n);
  m.W1 = u.segment<3>(n) / grid.axis(0).period;
  m.W2 = u.segment<3>(n + 3) / grid.axis(1).period;
  return m;
}

RotationMode constant_mode(const Vec3& c, const PeriodicGrid& grid) {
  RotationMode m;
  m.w.resize(3 * grid.size());
  for (int k = 0; k < grid.size(); ++k) m.w.segment<3>(3 * k) = c;
  m.label = "constant";
  return m;
}

// ---------------------------------------------------------------- ranks

std::string ThresholdPolicy::describe() const {
  std::ostringstream os;
  if (mode == Mode::automatic) {
    os << "auto(gap>=" << min_gap << ", significance=" << significance << ")";
  } else {
    os << "fixed(" << cut << ")";
  }
  return os.str();
}

RankDecision decide_rank(const Eigen::VectorXd& s, double scale, const ThresholdPolicy& policy) {
  RankDecision d;
  const int n = static_cast<int>(s.size());
  if (!(scale > 0)) throw std::invalid_argument("rank scale must be positive");
  const double floor = 1e-16 * scale;
  auto next = [&](int r) { return r < n ? std::max(std::abs(s[r]), floor) : floor; };

  if (policy.mode == ThresholdPolicy::Mode::fixed) {
    while (d.rank < n && std::abs(s[d.rank]) / scale >= policy.cut) ++d.rank;
    d.cut = policy.cut;
    d.gap_ratio = d.rank > 0 ? std::abs(s[d.rank - 1]) / next(d.rank)
                             : std::numeric_limits<double>::infinity();
    return d;
  }

  double best = 0;
  int best_rank = 0;
  for (int r = 1; r <= n; ++r) {
    if (std::abs(s[r - 1]) / scale < policy.significance) break;
    const double ratio = std::abs(s[r - 1]) / next(r);
    if (ratio > best) {
      best = ratio;
      best_rank = r;
    }
  }
  if (best_rank == 0) {
    d.rank = 0;
    d.gap_ratio = std::numeric_limits<double>::infinity();
    d.cut = policy.significance;
    return d;
  }
  d.rank = best_rank;
  d.gap_ratio = best;
  d.cut = std::sqrt(std::abs(s[best_rank - 1]) * next(best_rank)) / scale;
  d.ambiguous = best < policy.min_gap;
  return d;
}

// ---------------------------------------------------------------- filter

struct NullspaceFilter::Impl {
  SparseMatrix A;
  SparseMatrix K;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
  double lambda = 0;
};

NullspaceFilter::NullspaceFilter(const ConstraintSystem& system, FilterOptions options)
    : impl_(std::make_unique<Impl>()), options_(options) {
  if (options_.tau <= 0 || options_.passes < 1) throw std::invalid_argument("bad filter options");
  impl_->lambda = options_.tau * options_.tau;
  const int n = system.unknowns();
  impl_->A = system.matrix;
  SparseMatrix I(n, n);
  I.setIdentity();
  impl_->K = SparseMatrix(system.matrix.transpose()) * system.matrix + impl_->lambda * I;
  impl_->ldlt.compute(impl_->K);
  if (impl_->ldlt.info() != Eigen::Success) {
    throw std::runtime_error("null-space filter factorization failed");
  }
}

NullspaceFilter::~NullspaceFilter() = default;
NullspaceFilter::NullspaceFilter(NullspaceFilter&&) noexcept = default;
NullspaceFilter& NullspaceFilter::operator=(NullspaceFilter&&) noexcept = default;

Eigen::MatrixXd NullspaceFilter::solve(const Eigen::MatrixXd& rhs) const {
  Eigen::MatrixXd Z = impl_->ldlt.solve(rhs);
  for (int r = 0; r < options_.refinement_steps; ++r) {
    const Eigen::MatrixXd R = rhs - impl_->K * Z;
    Z += impl_->ldlt.solve(R);
  }
  return Z;
}

Eigen::MatrixXd NullspaceFilter::apply(const Eigen::MatrixXd& rhs) const {
  Eigen::MatrixXd Y = rhs;
  for (int pass = 0; pass < options_.passes; ++pass) Y = impl_->lambda * solve(Y);
  return Y;
}

double NullspaceFilter::projection_residual(const Eigen::VectorXd& u) const {
  const double nu = u.norm();
  if (nu == 0) return 0;
  // u - F^k u = (F^0 + ... + F^(k-1)) (I - F) u with (I - F) u = K^-1 A^T A u.
  const Eigen::VectorXd Au = impl_->A * u;
  Eigen::VectorXd term = solve(impl_->A.transpose() * Au);
  Eigen::VectorXd sum = term;
  for (int pass = 1; pass < options_.passes; ++pass) {
    term = impl_->lambda * solve(term);
    sum += term;
  }
  return sum.norm() / nu;
}

// ---------------------------------------------------------------- null space

NullspaceResult nullspace(const ConstraintSystem& system, const PeriodicGrid& grid,
                          const NullspaceFilter& filter, const ThresholdPolicy& policy) {
  NullspaceResult out;
  out.policy = policy;
  out.filter = filter.options();

  const Eigen::MatrixXd Y = filter.apply(system.effective.transpose());
  Eigen::MatrixXd M = system.effective * Y;
  M = 0.5 * (M + M.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  const int m = static_cast<int>(M.rows());
  out.eigenvalues = eig.eigenvalues().reverse();
  const Eigen::MatrixXd V = eig.eigenvectors().rowwise().reverse();
  const double top = std::max(out.eigenvalues[0], std::numeric_limits<double>::min());
  out.spectrum.resize(m);
  for (int k = 0; k < m; ++k) out.spectrum[k] = std::sqrt(std::max(out.eigenvalues[k], 0.0) / top);

  out.decision = decide_rank(out.spectrum, 1.0, policy);
  if (out.decision.ambiguous) return out;

  for (int k = 0; k < out.decision.rank; ++k) {
    Eigen::VectorXd u = Y * V.col(k) / out.eigenvalues[k];
    u.normalize();
    RotationMode mode = from_unknowns(u, grid);
    mode.sigma = (system.matrix * u).norm();
    out.modes.push_back(std::move(mode));
  }
  std::stable_sort(out.modes.begin(), out.modes.end(),
                   [](const RotationMode& a, const RotationMode& b) { return a.sigma < b.sigma; });
  return out;
}

NullspaceResult nullspace(const ConstraintSystem& system, const PeriodicGrid& grid,
                          const ThresholdPolicy& policy, const FilterOptions& filter) {
  const NullspaceFilter F(system, filter);
  return nullspace(system, grid, F, policy);
}

Eigen::VectorXd system_singular_values(const ConstraintSystem& system) {
  if (static_cast<long>(system.unknowns()) * system.rows() > 40'000'000L) {
    throw std::invalid_argument("system too large for a dense singular value decomposition");
  }
  const Eigen::MatrixXd A(system.matrix);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
  return svd.singularValues();
}

// ---------------------------------------------------------------- deflection

namespace {

int tile_index(const NodeRef& r, int nodes) {
  if (r.s1 < -1 || r.s1 > 1 || r.s2 < -1 || r.s2 > 1) {
    throw std::out_of_range("deflection requested outside the 3 x 3 period block");
  }
  return r.id + nodes * ((r.s1 + 1) + 3 * (r.s2 + 1));
}

struct Link {
  int other;      // axis node index
  int shift;      // lattice shift added when moving to `other`
  int edge;       // axis edge index, -1 for crease links
  bool forward;   // traversal along the edge orientation
};

std::vector<std::vector<Link>> axis_links(const AxisLayout& A) {
  std::vector<std::vector<Link>> links(A.size());
  for (std::size_t k = 0; k < A.edges.size(); ++k) {
    const AxisEdge& e = A.edges[k];
    links[e.a].push_back({e.b, e.shift, static_cast<int>(k), true});
    links[e.b].push_back({e.a, -e.shift, static_cast<int>(k), false});
  }
  for (const AxisCrease& c : A.creases) {
    links[c.minus].push_back({c.plus, c.shift, -1, true});
    links[c.plus].push_back({c.minus, -c.shift, -1, true});
  }
  return links;
}

}  // namespace

const Vec3& DeflectionField::at(const NodeRef& r) const { return values[tile_index(r, node_count)]; }
Vec3& DeflectionField::at(const NodeRef& r) { return values[tile_index(r, node_count)]; }

std::vector<Vec3> DeflectionField::base() const {
  return {values.begin() + 4 * node_count, values.begin() + 5 * node_count};
}

DeflectionField recover_deflection(const RotationMode& mode, const PeriodicGrid& grid,
                                   TreeOrder order) {
  const int nn = grid.size();
  DeflectionField D;
  D.node_count = nn;
  D.values.assign(9 * static_cast<std::size_t>(nn), Vec3::Zero());
  std::vector<char> seen(D.values.size(), 0);
  const std::array<std::vector<std::vector<Link>>, 2> links = {axis_links(grid.axis(0)),
                                                               axis_links(grid.axis(1))};

  auto increment = [&](int dir, const NodeRef& from, const Link& l, const NodeRef& to) -> Vec3 {
    if (l.edge < 0) return Vec3::Zero();
    const int other = grid.index(from.id, 1 - dir);
    const EdgeMoment& m = grid.moment(dir, l.edge, other);
    const NodeRef& a = l.forward ? from : to;
    const NodeRef& b = l.forward ? to : from;
    const Vec3 d = mode.at(a, grid).cross(m.da) + mode.at(b, grid).cross(m.db);
    return l.forward ? d : Vec3(-d);
  };

  std::deque<NodeRef> frontier;
  const NodeRef root{0, 0, 0};
  seen[tile_index(root, nn)] = 1;
  frontier.push_back(root);
  while (!frontier.empty()) {
    NodeRef cur;
    if (order == TreeOrder::breadth_first) {
      cur = frontier.front();
      frontier.pop_front();
    } else {
      cur = frontier.back();
      frontier.pop_back();
    }
    const Vec3 base = D.at(cur);
    for (int dir = 0; dir < 2; ++dir) {
      const int i = grid.index(cur.id, dir);
      for (const Link& l : links[dir][i]) {
        NodeRef nb = cur;
        if (dir == 0) {
          nb.id = grid.id(l.other, grid.index(cur.id, 1));
          nb.s1 += l.shift;
        } else {
          nb.id = grid.id(grid.index(cur.id, 0), l.other);
          nb.s2 += l.shift;
        }
        if (nb.s1 < -1 || nb.s1 > 1 || nb.s2 < -1 || nb.s2 > 1) continue;
        const int t = tile_index(nb, nn);
        if (seen[t]) continue;
        seen[t] = 1;
        D.values[t] = base + increment(dir, cur, l, nb);
        frontier.push_back(nb);
      }
    }
  }
  return D;
}

}  // namespace corruga
