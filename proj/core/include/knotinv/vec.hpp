#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <optional>

namespace knotinv {

using Vec3 = Eigen::Vector3d;

/// A point of R^3 or the point at infinity (std::nullopt).
using PointOrInfinity = std::optional<Vec3>;

inline constexpr std::nullopt_t kInfinity = std::nullopt;

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

inline bool is_finite(const Vec3& v) { return v.allFinite(); }

}  // namespace knotinv
