#pragma once

#include "corruga/profile.hpp"
#include "corruga/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corruga {

enum class Family {
  plane,
  simple_corrugation,
  double_corrugation,
  translation_surface,
  miura_like,
  sheared_double_corrugation,
};

std::string to_string(Family family);
Family family_from_string(std::string_view name);

/// Space curve t -> t * axis + f(t) * direction. Without a profile the curve
/// is the straight line t * axis.
struct SpaceCurve {
  std::optional<Profile> profile;
  Vec3 axis = Vec3::UnitX();
  Vec3 direction = Vec3::UnitZ();

  Vec3 value(double t) const;
  Vec3 derivative(double t, Side side = Side::plus) const;
};

/// Locus normal . xi == value in parameter space.
struct CreaseLine {
  Eigen::Vector2d normal;
  double value = 0;
};

/// Breakpoints of one parameter direction, with a flag telling whether the
/// tangent plane jumps there.
struct AxisBreaks {
  std::vector<double> points;
  std::vector<bool> crease;
};

struct PeriodGeometry {
  Vec3 p1, p2, n;
};

/// A periodic parametric surface x(xi1, xi2).
///
/// Every family except the sheared one is a translation surface
/// x = alpha(xi1) + beta(xi2); the sheared family is the double corrugation
/// composed with (xi1, xi2) -> (xi1, xi2 + gamma xi1).
class SurfaceChart {
 public:
  static SurfaceChart plane(double T1 = kTwoPi, double T2 = kTwoPi);
  static SurfaceChart simple_corrugation(const Profile& f, double T2 = kTwoPi);
  static SurfaceChart double_corrugation(const Profile& f, const Profile& g);
  static SurfaceChart miura_like(const Profile& f, const Profile& g);
  static SurfaceChart translation_surface(const SpaceCurve& alpha, const SpaceCurve& beta,
                                          double T1, double T2);
  static SurfaceChart sheared_double_corrugation(const Profile& f, const Profile& g,
                                                 double gamma);

  Family family() const { return family_; }
  double period(int direction) const { return period_[direction]; }
  double gamma() const { return gamma_; }
  const SpaceCurve& curve(int direction) const { return curves_[direction]; }
  /// Profiles in config order (f, then g).
  std::vector<Profile> profiles() const;

  Vec3 evaluate(const Eigen::Vector2d& xi) const;
  std::array<Vec3, 2> partials(const Eigen::Vector2d& xi, SidePair sides = kPlusPlus) const;

  std::vector<CreaseLine> crease_lines() const;
  bool axis_aligned() const { return family_ != Family::sheared_double_corrugation || gamma_ == 0; }
  AxisBreaks axis_breaks(int direction) const;

  /// Lattice translation x(xi + T_a e_a) - x(xi).
  Vec3 lattice_vector(int direction) const;

  static constexpr double kTwoPi = 6.283185307179586476925286766559;

 private:
  Family family_ = Family::plane;
  std::array<double, 2> period_{kTwoPi, kTwoPi};
  std::array<SpaceCurve, 2> curves_;
  double gamma_ = 0;
};

Vec3 evaluate_chart(const SurfaceChart& chart, const Eigen::Vector2d& xi);
std::array<Vec3, 2> chart_partials(const SurfaceChart& chart, const Eigen::Vector2d& xi,
                                   SidePair sides = kPlusPlus);
PeriodGeometry period_geometry(const SurfaceChart& chart);

std::string chart_to_json(const SurfaceChart& chart);
SurfaceChart chart_from_json(const std::string& text);
SurfaceChart load_chart(const std::string& path);
void save_chart(const SurfaceChart& chart, const std::string& path);

/// Named surfaces used by the examples and the verification suites:
/// plane, corrugation, sinusoidal-corrugation, eggbox, eggbox-hybrid, miura,
/// miura-hybrid, translation, sheared-eggbox.
SurfaceChart builtin_chart(std::string_view name);
std::vector<std::string> builtin_chart_names();

/// Triangle wave with f' = sgn(cos t), period 2 pi.
Profile sgn_cos_profile();
/// Continuous triangle-wave slope f' with values +-1, period 2 pi.
Profile triangle_slope_profile();

}  // namespace corruga
