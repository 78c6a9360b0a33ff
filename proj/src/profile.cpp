#include "corruga/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace corruga {

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::piecewise_linear:
      return "piecewise-linear";
    case ProfileKind::piecewise_quadratic:
      return "piecewise-quadratic";
    case ProfileKind::sinusoidal:
      return "sinusoidal";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(std::string_view name) {
  if (name == "piecewise-linear") return ProfileKind::piecewise_linear;
  if (name == "piecewise-quadratic") return ProfileKind::piecewise_quadratic;
  if (name == "sinusoidal") return ProfileKind::sinusoidal;
  throw std::invalid_argument("unknown profile kind '" + std::string(name) + "'");
}

Profile Profile::make(ProfileKind kind, double amplitude, double period,
                      std::vector<double> breakpoints) {
  if (!(period > 0) || !std::isfinite(period)) {
    throw std::invalid_argument("profile period must be positive");
  }
  if (amplitude == 0 || !std::isfinite(amplitude)) {
    throw std::invalid_argument("profile amplitude must be nonzero (profile would be constant)");
  }
  Profile p;
  p.kind_ = kind;
  p.amplitude_ = amplitude;
  p.period_ = period;

  if (kind == ProfileKind::sinusoidal) {
    if (!breakpoints.empty()) {
      throw std::invalid_argument("sinusoidal profile takes no breakpoints");
    }
    return p;
  }

  if (breakpoints.empty()) {
    throw std::invalid_argument("piecewise profile needs breakpoints");
  }
  if (breakpoints.size() % 2 != 0) {
    throw std::invalid_argument("piecewise profile needs an even number of breakpoints to close");
  }
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    if (breakpoints[k] < 0 || breakpoints[k] >= period) {
      throw std::invalid_argument("breakpoints must lie in [0, period)");
    }
    if (k > 0 && !(breakpoints[k] > breakpoints[k - 1])) {
      throw std::invalid_argument("breakpoints must be strictly increasing");
    }
  }
  p.breakpoints_ = std::move(breakpoints);

  const std::size_t m = p.breakpoints_.size();
  const double b0 = p.breakpoints_.front();
  const double mean_length = period / static_cast<double>(m);
  p.pieces_.resize(m);
  double value = 0;
  for (std::size_t k = 0; k < m; ++k) {
    Piece& piece = p.pieces_[k];
    const double end = (k + 1 < m) ? p.breakpoints_[k + 1] : b0 + period;
    piece.start = p.breakpoints_[k] - b0;
    piece.length = end - p.breakpoints_[k];
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    piece.c0 = value;
    if (kind == ProfileKind::piecewise_linear) {
      piece.c1 = -sign * amplitude * mean_length / piece.length;
      piece.c2 = 0;
    } else {
      // f' runs linearly from +-amplitude to -+amplitude across the panel.
      piece.c1 = sign * amplitude;
      piece.c2 = -sign * amplitude / piece.length;
    }
    value += piece.c1 * piece.length + piece.c2 * piece.length * piece.length;
  }

  // Shift to zero mean.
  double area = 0;
  for (const Piece& piece : p.pieces_) {
    const double L = piece.length;
    area += piece.c0 * L + piece.c1 * L * L / 2 + piece.c2 * L * L * L / 3;
  }
  const double mean = area / period;
  for (Piece& piece : p.pieces_) piece.c0 -= mean;
  return p;
}

double Profile::reduce(double t, long& turns) const {
  const double origin = breakpoints_.empty() ? 0.0 : breakpoints_.front();
  const double shifted = t - origin;
  turns = static_cast<long>(std::floor(shifted / period_));
  double r = shifted - static_cast<double>(turns) * period_;
  if (r < 0) r = 0;
  if (r >= period_) r = std::nextafter(period_, 0.0);
  return r;
}

Profile::Location Profile::locate(double t, Side side) const {
  long turns = 0;
  const double r = reduce(t, turns);
  const double tol = 1e-12 * period_;
  const std::size_t m = pieces_.size();

  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), r,
                             [](double v, const Piece& piece) { return v < piece.start; });
  std::size_t k = static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
  double u = r - pieces_[k].start;

  if (u <= tol) {
    if (side == Side::minus) {
      k = (k + m - 1) % m;
      return {k, pieces_[k].length};
    }
    return {k, 0.0};
  }
  if (pieces_[k].length - u <= tol) {
    if (side == Side::plus) return {(k + 1) % m, 0.0};
    return {k, pieces_[k].length};
  }
  return {k, u};
}

double Profile::value(double t) const {
  if (kind_ == ProfileKind::sinusoidal) {
    return amplitude_ * std::cos(2 * std::numbers::pi * t / period_);
  }
  const auto [k, u] = locate(t, Side::plus);
  const Piece& piece = pieces_[k];
  return piece.c0 + u * (piece.c1 + u * piece.c2);
}

double Profile::slope(double t, Side side) const {
  if (kind_ == ProfileKind::sinusoidal) {
    const double w = 2 * std::numbers::pi / period_;
    return -amplitude_ * w * std::sin(w * t);
  }
  const auto [k, u] = locate(t, side);
  const Piece& piece = pieces_[k];
  return piece.c1 + 2 * piece.c2 * u;
}

double Profile::curvature(double t, Side side) const {
  if (kind_ == ProfileKind::sinusoidal) {
    const double w = 2 * std::numbers::pi / period_;
    return -amplitude_ * w * w * std::cos(w * t);
  }
  return 2 * pieces_[locate(t, side).piece].c2;
}

bool Profile::creases_at(std::size_t k) const {
  if (k >= breakpoints_.size()) return false;
  return kind_ == ProfileKind::piecewise_linear;
}

bool Profile::has_creases() const {
  return kind_ == ProfileKind::piecewise_linear && !breakpoints_.empty();
}

double Profile::mean_slope_squared() const {
  if (kind_ == ProfileKind::sinusoidal) {
    const double w = 2 * std::numbers::pi / period_;
    return amplitude_ * amplitude_ * w * w / 2;
  }
  return slope_squared_integral(breakpoints_.front() + period_) / period_ -
         slope_squared_integral(breakpoints_.front()) / period_;
}

double Profile::min_abs_slope() const {
  if (kind_ != ProfileKind::piecewise_linear) return 0.0;
  double lo = std::abs(pieces_.front().c1);
  for (const Piece& piece : pieces_) lo = std::min(lo, std::abs(piece.c1));
  return lo;
}

template <class F>
double Profile::accumulate(double t, F&& piece_integral) const {
  // Antiderivative measured from breakpoints_[0]; callers difference it.
  auto from_origin = [&](double s) {
    long turns = 0;
    const double r = reduce(s, turns);
    double full = 0;
    double partial = 0;
    for (const Piece& piece : pieces_) {
      full += piece_integral(piece, piece.length);
      if (r >= piece.start + piece.length) {
        partial += piece_integral(piece, piece.length);
      } else if (r > piece.start) {
        partial += piece_integral(piece, r - piece.start);
      }
    }
    return static_cast<double>(turns) * full + partial;
  };
  return from_origin(t) - from_origin(0.0);
}

double Profile::integral(double t) const {
  if (kind_ == ProfileKind::sinusoidal) {
    const double w = 2 * std::numbers::pi / period_;
    return amplitude_ * std::sin(w * t) / w;
  }
  return accumulate(t, [](const Piece& p, double u) {
    return p.c0 * u + p.c1 * u * u / 2 + p.c2 * u * u * u / 3;
  });
}

double Profile::slope_squared_integral(double t) const {
  if (kind_ == ProfileKind::sinusoidal) {
    const double w = 2 * std::numbers::pi / period_;
    return amplitude_ * amplitude_ * w * w * (t / 2 - std::sin(2 * w * t) / (4 * w));
  }
  return accumulate(t, [](const Piece& p, double u) {
    return p.c1 * p.c1 * u + 2 * p.c1 * p.c2 * u * u + 4.0 / 3.0 * p.c2 * p.c2 * u * u * u;
  });
}

double Profile::inverse_slope_integral(double t) const {
  if (kind_ != ProfileKind::piecewise_linear) {
    throw std::domain_error("1/f' is integrable in closed form only for piecewise-linear profiles");
  }
  return accumulate(t, [](const Piece& p, double u) { return u / p.c1; });
}

}  // namespace corruga
