#pragma once

#include "corruga/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace corruga {

enum class ProfileKind { piecewise_linear, piecewise_quadratic, sinusoidal };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(std::string_view name);

/// A continuous, periodic, non-constant scalar profile f(t) with zero mean.
///
/// Piecewise kinds are stored as one polynomial of degree <= 2 per panel
/// between consecutive breakpoints, so every integral the oracles need has a
/// closed form.
///
///  - piecewise-linear: zigzag whose slope alternates sign from panel to panel,
///    the first panel (starting at breakpoints[0]) descending. On equal panels
///    the slope magnitude equals `amplitude`; on unequal panels the rise per
///    panel is amplitude * period / panel_count.
///  - piecewise-quadratic: f' is a continuous zigzag taking the value
///    +amplitude at even breakpoints and -amplitude at odd ones. f is C^1, so
///    its breakpoints are not creases.
///  - sinusoidal: amplitude * cos(2 pi t / period), no breakpoints.
class Profile {
 public:
  static Profile make(ProfileKind kind, double amplitude, double period,
                      std::vector<double> breakpoints = {});

  ProfileKind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  double period() const { return period_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  double value(double t) const;
  /// One-sided derivative; `side` only matters exactly on a breakpoint.
  double slope(double t, Side side = Side::plus) const;
  /// Second derivative (one-sided at breakpoints).
  double curvature(double t, Side side = Side::plus) const;

  /// True when f' jumps at breakpoints()[k], i.e. the chart creases there.
  bool creases_at(std::size_t k) const;
  bool has_creases() const;

  /// Mean of f'^2 over one period, exact.
  double mean_slope_squared() const;
  /// Smallest |f'| over the period; zero for kinds whose slope vanishes.
  double min_abs_slope() const;

  /// int_0^t f, exact.
  double integral(double t) const;
  /// int_0^t f'^2, exact.
  double slope_squared_integral(double t) const;
  /// int_0^t 1/f', exact. Requires a piecewise-linear profile.
  double inverse_slope_integral(double t) const;

 private:
  struct Piece {
    double start = 0;  // offset from breakpoints_[0]
    double length = 0;
    double c0 = 0, c1 = 0, c2 = 0;  // f = c0 + c1 u + c2 u^2, u local
  };
  struct Location {
    std::size_t piece;
    double u;
  };

  Location locate(double t, Side side) const;
  double reduce(double t, long& turns) const;
  template <class F>
  double accumulate(double t, F&& piece_integral) const;

  ProfileKind kind_ = ProfileKind::sinusoidal;
  double amplitude_ = 1.0;
  double period_ = 1.0;
  std::vector<double> breakpoints_;
  std::vector<Piece> pieces_;
};

}  // namespace corruga
