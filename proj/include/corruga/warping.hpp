#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace corruga {

/// Polyline section of a prismatic bar. A closed section repeats its first
/// sample at the end.
struct SectionCurve {
  std::vector<Eigen::Vector2d> points;
  bool closed = false;

  /// Cumulative arclength at each sample.
  std::vector<double> arclength() const;
  /// Throws on fewer than two samples, repeated consecutive samples, or a
  /// closed flag that does not match the endpoints.
  void validate() const;
  SectionCurve reversed() const;
};

struct WarpingResult {
  double alpha = 0;
  std::vector<double> s;
  std::vector<double> w;  // w(s_0) = 0
  std::optional<double> dislocation;
};

/// w(s) = alpha int_0^s (x' y - x y'), exact per segment: x_b y_a - x_a y_b.
/// Counterclockwise sections come out with a negative loop integral.
WarpingResult warping_function(const SectionCurve& section, double alpha);
/// alpha times the loop integral of x' y - x y'; equals -2 alpha times the
/// signed area.
double dislocation(const SectionCurve& section, double alpha);
double shoelace_area(const SectionCurve& section);

SectionCurve circle_section(double radius, int segments, double arc = 2 * 3.14159265358979323846);
SectionCurve square_section(double side);
/// Horizontal leg from (0, 0) to (a, 0), then vertical leg up to (a, b),
/// with `samples` points per leg.
SectionCurve l_section(double a, double b, int samples = 2);

/// CSV with an optional header and columns x,y; closed when the last row
/// repeats the first.
SectionCurve read_section_csv(std::istream& in);
SectionCurve load_section_csv(const std::string& path);
void write_warping_csv(std::ostream& out, const WarpingResult& result);

}  // namespace corruga
