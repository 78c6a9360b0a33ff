#include "corruga/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <tuple>

namespace corruga {

AxisLayout make_axis_layout(double period, const AxisBreaks& breaks, int resolution) {
  if (resolution < PeriodicGrid::kMinResolution) {
    throw std::invalid_argument("resolution must be at least " +
                                std::to_string(PeriodicGrid::kMinResolution));
  }
  AxisLayout L;
  L.period = period;

  auto add_node = [&](double t, Side side, int panel) {
    L.coords.push_back(t);
    L.side.push_back(side);
    L.panel.push_back(panel);
    return static_cast<int>(L.coords.size()) - 1;
  };

  const auto& b = breaks.points;
  const std::size_t m = b.size();
  if (m == 0) {
    const double h = period / resolution;
    AxisPanel P;
    P.spacing = h;
    P.cyclic = true;
    for (int i = 0; i < resolution; ++i) {
      add_node(i * h, Side::plus, 0);
      P.nodes.push_back({i, 0});
    }
    for (int i = 0; i < resolution; ++i) {
      const bool last = i + 1 == resolution;
      L.edges.push_back({i, last ? 0 : i + 1, last ? 1 : 0, h});
    }
    L.panels.push_back(std::move(P));
  } else {
    AxisRef prev_end{-1, 0};
    for (std::size_t j = 0; j < m; ++j) {
      const double start = b[j];
      const double end = (j + 1 < m) ? b[j + 1] : b[0] + period;
      const double len = end - start;
      const int n = std::max(2, static_cast<int>(std::lround(resolution * len / period)));
      const double h = len / n;
      const int pid = static_cast<int>(j);

      AxisPanel P;
      P.spacing = h;
      if (j == 0) {
        P.nodes.push_back({add_node(start, Side::plus, pid), 0});
      } else if (breaks.crease[j]) {
        const int plus = add_node(start, Side::plus, pid);
        L.creases.push_back({prev_end.index, plus, 0});
        P.nodes.push_back({plus, 0});
      } else {
        P.nodes.push_back(prev_end);
      }
      for (int i = 1; i < n; ++i) P.nodes.push_back({add_node(start + i * h, Side::plus, pid), 0});

      if (j + 1 < m) {
        const Side s = breaks.crease[j + 1] ? Side::minus : Side::plus;
        P.nodes.push_back({add_node(end, s, pid), 0});
      } else if (breaks.crease[0]) {
        const int minus = add_node(end, Side::minus, pid);
        L.creases.push_back({minus, 0, 1});
        P.nodes.push_back({minus, 0});
      } else {
        P.nodes.push_back({0, 1});
      }
      for (std::size_t k = 0; k + 1 < P.nodes.size(); ++k) {
        L.edges.push_back({P.nodes[k].index, P.nodes[k + 1].index, P.nodes[k + 1].shift, h});
      }
      prev_end = P.nodes.back();
      L.panels.push_back(std::move(P));
    }
  }

  L.weights.assign(L.coords.size(), 0.0);
  for (const AxisEdge& e : L.edges) {
    L.weights[e.a] += e.length / 2;
    L.weights[e.b] += e.length / 2;
    L.max_spacing = std::max(L.max_spacing, e.length);
  }
  return L;
}

namespace {

constexpr double kGaussNodes[3] = {0.5 - 0.38729833462074168852, 0.5, 0.5 + 0.38729833462074168852};
constexpr double kGaussWeights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

EdgeMoment make_moment(const SurfaceChart& chart, const Eigen::Vector2d& qa,
                       const Eigen::Vector2d& qb) {
  const Vec3 xa = chart.evaluate(qa);
  const Vec3 xb = chart.evaluate(qb);
  Vec3 mean = Vec3::Zero();
  for (int g = 0; g < 3; ++g) mean += kGaussWeights[g] * chart.evaluate(qa + kGaussNodes[g] * (qb - qa));
  return {mean - xa, xb - mean, xb - xa};
}

}  // namespace

PeriodicGrid::PeriodicGrid(const SurfaceChart& chart, int resolution1, int resolution2)
    : chart_(chart), resolution_{resolution1, resolution2} {
  if (!chart.axis_aligned()) {
    throw std::invalid_argument("grid requires axis-aligned crease lines; sheared charts are evaluated analytically only");
  }
  for (int a = 0; a < 2; ++a) {
    axes_[a] = make_axis_layout(chart.period(a), chart.axis_breaks(a), resolution_[a]);
    lattice_[a] = chart.lattice_vector(a);
  }
  n1_ = axes_[0].size();
  n2_ = axes_[1].size();

  positions_.resize(size());
  partials_.resize(size());
  for (int i = 0; i < n1_; ++i) {
    for (int j = 0; j < n2_; ++j) {
      const NodeRef r{id(i, j), 0, 0};
      positions_[r.id] = chart_.evaluate(coords(r));
      partials_[r.id] = chart_.partials(coords(r), sides(r.id));
    }
  }

  // Edge moments: direction-1 edges on every xi2 grid line and vice versa.
  for (int a = 0; a < 2; ++a) {
    const AxisLayout& A = axes_[a];
    const AxisLayout& B = axes_[1 - a];
    moments_[a].reserve(A.edges.size() * B.coords.size());
    for (const AxisEdge& e : A.edges) {
      for (int k = 0; k < B.size(); ++k) {
        Eigen::Vector2d qa, qb;
        qa[a] = A.coords[e.a];
        qb[a] = A.coords[e.b] + e.shift * A.period;
        qa[1 - a] = qb[1 - a] = B.coords[k];
        moments_[a].push_back(make_moment(chart_, qa, qb));
      }
    }
  }

  for (std::size_t e1 = 0; e1 < axes_[0].edges.size(); ++e1) {
    const AxisEdge& E1 = axes_[0].edges[e1];
    for (std::size_t e2 = 0; e2 < axes_[1].edges.size(); ++e2) {
      const AxisEdge& E2 = axes_[1].edges[e2];
      GridCell c;
      c.corners = {NodeRef{id(E1.a, E2.a), 0, 0}, NodeRef{id(E1.b, E2.a), E1.shift, 0},
                   NodeRef{id(E1.b, E2.b), E1.shift, E2.shift},
                   NodeRef{id(E1.a, E2.b), 0, E2.shift}};
      c.edges = {static_cast<int>(e1), static_cast<int>(e2)};
      c.base = {E1.a, E2.a};
      c.area = E1.length * E2.length;
      cells_.push_back(c);
    }
  }

  auto on_crease = [&](int direction, int index) {
    for (const AxisCrease& c : axes_[direction].creases) {
      if (c.minus == index || c.plus == index) return true;
    }
    return false;
  };

  for (int a = 0; a < 2; ++a) {
    const int o = 1 - a;
    for (const AxisCrease& c : axes_[a].creases) {
      for (int k = 0; k < axes_[o].size(); ++k) {
        const int minus = a == 0 ? id(c.minus, k) : id(k, c.minus);
        NodeRef plus{a == 0 ? id(c.plus, k) : id(k, c.plus), a == 0 ? c.shift : 0,
                     a == 0 ? 0 : c.shift};
        crease_pairs_.push_back({plus, minus, partials_[minus][o], a});
      }
      for (std::size_t ei = 0; ei < axes_[o].edges.size(); ++ei) {
        const AxisEdge& e = axes_[o].edges[ei];
        CreaseEdge ce;
        ce.moment = moment(o, static_cast<int>(ei), c.minus);
        ce.direction = a;
        if (a == 0) {
          ce.plus = {NodeRef{id(c.plus, e.a), c.shift, 0}, NodeRef{id(c.plus, e.b), c.shift, e.shift}};
          ce.minus = {NodeRef{id(c.minus, e.a), 0, 0}, NodeRef{id(c.minus, e.b), 0, e.shift}};
        } else {
          ce.plus = {NodeRef{id(e.a, c.plus), 0, c.shift}, NodeRef{id(e.b, c.plus), e.shift, c.shift}};
          ce.minus = {NodeRef{id(e.a, c.minus), 0, 0}, NodeRef{id(e.b, c.minus), e.shift, 0}};
        }
        ce.touches_corner = on_crease(o, e.a) || on_crease(o, e.b);
        crease_edges_.push_back(ce);
      }
    }
  }
}

Eigen::Vector2d PeriodicGrid::coords(const NodeRef& r) const {
  return {axes_[0].coords[index(r.id, 0)] + r.s1 * axes_[0].period,
          axes_[1].coords[index(r.id, 1)] + r.s2 * axes_[1].period};
}

Vec3 PeriodicGrid::position(const NodeRef& r) const {
  return positions_[r.id] + r.s1 * lattice_[0] + r.s2 * lattice_[1];
}

SidePair PeriodicGrid::sides(int node) const {
  return {axes_[0].side[index(node, 0)], axes_[1].side[index(node, 1)]};
}

double PeriodicGrid::weight(int node) const {
  return axes_[0].weights[index(node, 0)] * axes_[1].weights[index(node, 1)] / area();
}

const EdgeMoment& PeriodicGrid::moment(int direction, int edge, int other) const {
  return moments_[direction][static_cast<std::size_t>(edge) * axes_[1 - direction].size() + other];
}

PeriodicGrid build_grid(const SurfaceChart& chart, int resolution1, int resolution2) {
  return PeriodicGrid(chart, resolution1, resolution2);
}

namespace {

template <class T>
T weighted_sum(const std::vector<T>& field, const PeriodicGrid& grid, T zero) {
  if (static_cast<int>(field.size()) != grid.size()) {
    throw std::invalid_argument("field size does not match the grid");
  }
  T acc = zero;
  for (int k = 0; k < grid.size(); ++k) acc += grid.weight(k) * field[k];
  return acc;
}

template <class T>
std::vector<T> differentiate_impl(const std::function<T(const NodeRef&)>& value,
                                  const PeriodicGrid& grid, int direction, T zero) {
  if (direction < 0 || direction > 1) throw std::invalid_argument("direction must be 0 or 1");
  const AxisLayout& A = grid.axis(direction);
  const int other_n = grid.n(1 - direction);
  std::vector<T> out(grid.size(), zero);

  auto ref = [&](AxisRef r, int k) {
    return direction == 0 ? NodeRef{grid.id(r.index, k), r.shift, 0}
                          : NodeRef{grid.id(k, r.index), 0, r.shift};
  };

  for (const AxisPanel& P : A.panels) {
    const int n = static_cast<int>(P.nodes.size()) - (P.cyclic ? 0 : 1);
    if (n < 2) throw std::domain_error("panel narrower than the derivative stencil");
    const double h = P.spacing;
    for (int k = 0; k < other_n; ++k) {
      if (P.cyclic) {
        for (int i = 0; i < n; ++i) {
          AxisRef fw = i + 1 < n ? AxisRef{i + 1, 0} : AxisRef{0, 1};
          AxisRef bw = i > 0 ? AxisRef{i - 1, 0} : AxisRef{n - 1, -1};
          out[ref({i, 0}, k).id] = (value(ref(fw, k)) - value(ref(bw, k))) / (2 * h);
        }
        continue;
      }
      for (int i = 0; i <= n; ++i) {
        const AxisRef r = P.nodes[i];
        if (r.shift != 0) continue;  // wrapped copy of a node owned by panel 0
        if (i == n && A.side[r.index] == Side::plus) continue;  // owned by the next panel
        T d;
        if (i == 0) {
          d = (-3.0 * value(ref(P.nodes[0], k)) + 4.0 * value(ref(P.nodes[1], k)) -
               value(ref(P.nodes[2], k))) / (2 * h);
        } else if (i == n) {
          d = (3.0 * value(ref(P.nodes[n], k)) - 4.0 * value(ref(P.nodes[n - 1], k)) +
               value(ref(P.nodes[n - 2], k))) / (2 * h);
        } else {
          d = (value(ref(P.nodes[i + 1], k)) - value(ref(P.nodes[i - 1], k))) / (2 * h);
        }
        out[ref(r, k).id] = d;
      }
    }
  }
  return out;
}

}  // namespace

double cell_average(const std::vector<double>& field, const PeriodicGrid& grid) {
  return weighted_sum(field, grid, 0.0);
}

Vec3 cell_average(const std::vector<Vec3>& field, const PeriodicGrid& grid) {
  return weighted_sum<Vec3>(field, grid, Vec3::Zero());
}

std::vector<double> differentiate(const ScalarAccessor& field, const PeriodicGrid& grid,
                                  int direction) {
  return differentiate_impl<double>(field, grid, direction, 0.0);
}

std::vector<Vec3> differentiate(const VectorAccessor& field, const PeriodicGrid& grid,
                                int direction) {
  return differentiate_impl<Vec3>(field, grid, direction, Vec3::Zero());
}

std::vector<double> differentiate(const std::vector<double>& field, const PeriodicGrid& grid,
                                  int direction) {
  if (static_cast<int>(field.size()) != grid.size()) {
    throw std::invalid_argument("field size does not match the grid");
  }
  return differentiate(ScalarAccessor([&](const NodeRef& r) { return field[r.id]; }), grid,
                       direction);
}

std::vector<Vec3> differentiate(const std::vector<Vec3>& field, const PeriodicGrid& grid,
                                int direction, const std::array<Vec3, 2>& growth) {
  if (static_cast<int>(field.size()) != grid.size()) {
    throw std::invalid_argument("field size does not match the grid");
  }
  return differentiate(
      VectorAccessor([&](const NodeRef& r) -> Vec3 {
        return field[r.id] + r.s1 * growth[0] + r.s2 * growth[1];
      }),
      grid, direction);
}

void write_obj(std::ostream& out, const PeriodicGrid& grid, const VectorAccessor& offset,
               double amplitude) {
  std::map<std::tuple<int, int, int>, int> vertex;
  auto vid = [&](const NodeRef& r) {
    auto key = std::make_tuple(r.id, r.s1, r.s2);
    auto it = vertex.find(key);
    if (it != vertex.end()) return it->second;
    Vec3 x = grid.position(r);
    if (offset) x += amplitude * offset(r);
    out << "v " << x.x() << ' ' << x.y() << ' ' << x.z() << '\n';
    const int k = static_cast<int>(vertex.size()) + 1;
    vertex.emplace(key, k);
    return k;
  };
  out.precision(12);
  std::vector<std::array<int, 4>> quads;
  quads.reserve(grid.cells().size());
  for (const GridCell& c : grid.cells()) {
    quads.push_back({vid(c.corners[0]), vid(c.corners[1]), vid(c.corners[2]), vid(c.corners[3])});
  }
  for (const auto& q : quads) {
    out << "f " << q[0] << ' ' << q[1] << ' ' << q[2] << '\n';
    out << "f " << q[0] << ' ' << q[2] << ' ' << q[3] << '\n';
  }
}

}  // namespace corruga
