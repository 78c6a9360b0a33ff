#pragma once

#include "corruga/chart.hpp"

#include <functional>
#include <iosfwd>
#include <vector>

namespace corruga {

/// Node index along one axis plus the number of whole periods to add.
struct AxisRef {
  int index = 0;
  int shift = 0;
};

struct AxisEdge {
  int a = 0, b = 0;
  int shift = 0;  // b sits at coords[b] + shift * period
  double length = 0;
};

/// Duplicated nodes on both sides of a crease: coords[plus] + shift * period
/// coincides with coords[minus].
struct AxisCrease {
  int minus = 0, plus = 0;
  int shift = 0;
};

/// Consecutive nodes of one smooth panel with uniform spacing.
struct AxisPanel {
  std::vector<AxisRef> nodes;
  double spacing = 0;
  bool cyclic = false;  // no breakpoints at all: the panel closes on itself
};

struct AxisLayout {
  double period = 0;
  std::vector<double> coords;
  std::vector<Side> side;
  std::vector<int> panel;
  std::vector<AxisEdge> edges;
  std::vector<AxisCrease> creases;
  std::vector<AxisPanel> panels;
  std::vector<double> weights;  // trapezoid, summing to period
  double max_spacing = 0;

  double coordinate(AxisRef r) const { return coords[r.index] + r.shift * period; }
  int size() const { return static_cast<int>(coords.size()); }
};

/// Panels between consecutive breakpoints get round(N * length / period)
/// intervals (at least two). Crease breakpoints get a node on each side.
AxisLayout make_axis_layout(double period, const AxisBreaks& breaks, int resolution);

/// Grid node id plus lattice shifts: the point xi(id) + (s1 T1, s2 T2).
struct NodeRef {
  int id = 0;
  int s1 = 0, s2 = 0;
};

struct GridCell {
  std::array<NodeRef, 4> corners;  // counter-clockwise in parameter space
  std::array<int, 2> edges;        // axis edge index in direction 1 and 2
  std::array<int, 2> base;         // axis node index of corner 0
  double area = 0;
};

/// Exact data for integrating a field that is linear along a straight
/// parameter edge: int w ^ dx = w_a ^ da + w_b ^ db.
struct EdgeMoment {
  Vec3 da;  // mean(x) - x_a
  Vec3 db;  // x_b - mean(x)
  Vec3 chord;
};

/// Duplicated node pair across a crease line.
struct CreasePair {
  NodeRef plus;
  int minus = 0;
  Vec3 tangent;
  int direction = 0;  // parameter direction normal to the crease line
};

/// Grid edge lying on a crease line, seen from both panels.
struct CreaseEdge {
  std::array<NodeRef, 2> plus, minus;
  int direction = 0;
  bool touches_corner = false;
  EdgeMoment moment;
};

class PeriodicGrid {
 public:
  static constexpr int kMinResolution = 8;

  PeriodicGrid(const SurfaceChart& chart, int resolution1, int resolution2);

  const SurfaceChart& chart() const { return chart_; }
  const AxisLayout& axis(int direction) const { return axes_[direction]; }
  int size() const { return n1_ * n2_; }
  int n(int direction) const { return direction == 0 ? n1_ : n2_; }
  int id(int i, int j) const { return i * n2_ + j; }
  int index(int id, int direction) const { return direction == 0 ? id / n2_ : id % n2_; }
  std::array<int, 2> resolution() const { return resolution_; }
  double max_spacing() const { return std::max(axes_[0].max_spacing, axes_[1].max_spacing); }
  double area() const { return axes_[0].period * axes_[1].period; }

  Eigen::Vector2d coords(const NodeRef& r) const;
  Vec3 position(const NodeRef& r) const;
  const std::array<Vec3, 2>& partials(int id) const { return partials_[id]; }
  SidePair sides(int id) const;
  /// Trapezoid weight of a node divided by the period area.
  double weight(int id) const;

  const std::vector<GridCell>& cells() const { return cells_; }
  const std::vector<CreasePair>& crease_pairs() const { return crease_pairs_; }
  const std::vector<CreaseEdge>& crease_edges() const { return crease_edges_; }

  /// Moment of axis edge `edge` in `direction`, on the grid line through
  /// axis node `other` of the other direction.
  const EdgeMoment& moment(int direction, int edge, int other) const;

 private:
  SurfaceChart chart_;
  std::array<int, 2> resolution_;
  std::array<AxisLayout, 2> axes_;
  int n1_ = 0, n2_ = 0;
  std::array<Vec3, 2> lattice_;
  std::vector<Vec3> positions_;
  std::vector<std::array<Vec3, 2>> partials_;
  std::vector<GridCell> cells_;
  std::vector<CreasePair> crease_pairs_;
  std::vector<CreaseEdge> crease_edges_;
  std::array<std::vector<EdgeMoment>, 2> moments_;
};

PeriodicGrid build_grid(const SurfaceChart& chart, int resolution1, int resolution2);

/// (1 / area) int_R field, panel-wise trapezoid.
double cell_average(const std::vector<double>& field, const PeriodicGrid& grid);
Vec3 cell_average(const std::vector<Vec3>& field, const PeriodicGrid& grid);

/// Reads a field at a possibly shifted node.
using ScalarAccessor = std::function<double(const NodeRef&)>;
using VectorAccessor = std::function<Vec3(const NodeRef&)>;

/// Second-order panel-wise derivative; centered inside panels, one-sided at
/// panel ends, never across a crease.
std::vector<double> differentiate(const ScalarAccessor& field, const PeriodicGrid& grid,
                                  int direction);
std::vector<Vec3> differentiate(const VectorAccessor& field, const PeriodicGrid& grid,
                                int direction);
std::vector<double> differentiate(const std::vector<double>& field, const PeriodicGrid& grid,
                                  int direction);
/// Vector field whose value grows by growth[a] per period in direction a.
std::vector<Vec3> differentiate(const std::vector<Vec3>& field, const PeriodicGrid& grid,
                                int direction, const std::array<Vec3, 2>& growth = {Vec3::Zero(), Vec3::Zero()});

/// Triangulated period (two triangles per cell, split along the diagonal
/// toward increasing xi1 + xi2). `offset` displaces vertices when given.
void write_obj(std::ostream& out, const PeriodicGrid& grid, const VectorAccessor& offset = {},
               double amplitude = 0.0);

}  // namespace corruga
