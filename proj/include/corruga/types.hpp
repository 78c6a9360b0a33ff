#pragma once

#include <Eigen/Dense>

#include <array>

namespace corruga {

using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

/// Which one-sided limit to take when a parameter sits exactly on a breakpoint.
enum class Side { minus, plus };

/// Per-direction side selector for chart derivatives.
using SidePair = std::array<Side, 2>;

inline constexpr SidePair kPlusPlus{Side::plus, Side::plus};

inline Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }

}  // namespace corruga
