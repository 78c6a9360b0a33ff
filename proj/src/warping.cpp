#include "corruga/warping.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace corruga {

namespace {

double segment_integral(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return b.x() * a.y() - a.x() * b.y();
}

double loop_integral(const SectionCurve& section) {
  double sum = 0;
  for (std::size_t k = 0; k + 1 < section.points.size(); ++k) {
    sum += segment_integral(section.points[k], section.points[k + 1]);
  }
  return sum;
}

}  // namespace

std::vector<double> SectionCurve::arclength() const {
  std::vector<double> s(points.size(), 0.0);
  for (std::size_t k = 1; k < points.size(); ++k) s[k] = s[k - 1] + (points[k] - points[k - 1]).norm();
  return s;
}

void SectionCurve::validate() const {
  if (points.size() < 2) throw std::invalid_argument("section needs at least two samples");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!points[k].allFinite()) throw std::invalid_argument("section samples must be finite");
    if (k > 0 && points[k] == points[k - 1]) {
      throw std::invalid_argument("consecutive section samples coincide at index " + std::to_string(k));
    }
  }
  const bool ends_meet = points.front() == points.back();
  if (closed && !ends_meet) throw std::invalid_argument("closed section must end at its first sample");
  if (!closed && ends_meet) throw std::invalid_argument("open section ends at its first sample");
}

SectionCurve SectionCurve::reversed() const {
  SectionCurve r = *this;
  std::reverse(r.points.begin(), r.points.end());
  return r;
}

WarpingResult warping_function(const SectionCurve& section, double alpha) {
  section.validate();
  if (section.closed) {
    throw std::invalid_argument("closed section has no single-valued warping; use dislocation");
  }
  WarpingResult out;
  out.alpha = alpha;
  out.s = section.arclength();
  out.w.assign(section.points.size(), 0.0);
  double acc = 0;
  for (std::size_t k = 1; k < section.points.size(); ++k) {
    acc += segment_integral(section.points[k - 1], section.points[k]);
    out.w[k] = alpha * acc;
  }
  return out;
}

double dislocation(const SectionCurve& section, double alpha) {
  section.validate();
  if (!section.closed) throw std::invalid_argument("dislocation needs a closed section");
  return alpha * loop_integral(section);
}

double shoelace_area(const SectionCurve& section) {
  section.validate();
  if (!section.closed) throw std::invalid_argument("area needs a closed section");
  double sum = 0;
  for (std::size_t k = 0; k + 1 < section.points.size(); ++k) {
    const auto& a = section.points[k];
    const auto& b = section.points[k + 1];
    sum += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * sum;
}

SectionCurve circle_section(double radius, int segments, double arc) {
  if (segments < 3 || radius <= 0) throw std::invalid_argument("circle needs radius > 0 and >= 3 segments");
  constexpr double kTwoPi = 2 * 3.14159265358979323846;
  const bool full = std::abs(arc - kTwoPi) < 1e-14;
  SectionCurve c;
  c.closed = full;
  for (int k = 0; k <= segments; ++k) {
    const double t = arc * k / segments;
    c.points.emplace_back(radius * std::cos(t), radius * std::sin(t));
  }
  if (full) c.points.back() = c.points.front();
  return c;
}

SectionCurve square_section(double side) {
  SectionCurve c;
  c.closed = true;
  c.points = {{0, 0}, {side, 0}, {side, side}, {0, side}, {0, 0}};
  return c;
}

SectionCurve l_section(double a, double b, int samples) {
  if (samples < 2) throw std::invalid_argument("each leg needs at least two samples");
  SectionCurve c;
  for (int k = 0; k < samples; ++k) c.points.emplace_back(a * k / (samples - 1), 0.0);
  for (int k = 1; k < samples; ++k) c.points.emplace_back(a, b * k / (samples - 1));
  return c;
}

SectionCurve read_section_csv(std::istream& in) {
  SectionCurve c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line) {
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    }
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y)) {
      if (c.points.empty()) continue;  // header
      throw std::invalid_argument("malformed section row at line " + std::to_string(lineno));
    }
    c.points.emplace_back(x, y);
  }
  c.closed = c.points.size() > 2 && c.points.front() == c.points.back();
  c.validate();
  return c;
}

SectionCurve load_section_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open section file '" + path + "'");
  return read_section_csv(in);
}

void write_warping_csv(std::ostream& out, const WarpingResult& result) {
  out << "s,w\n" << std::setprecision(17);
  for (std::size_t k = 0; k < result.w.size(); ++k) out << result.s[k] << ',' << result.w[k] << '\n';
}

}  // namespace corruga
