#pragma once

#include "knotinv/curve.hpp"

#include <cstddef>
#include <vector>

namespace knotinv {

/// Unit normal field e2 along a curve: either the Frenet principal normal or
/// an explicit field sampled at uniform parameter values.
class Framing {
 public:
  static Framing principal(const ClosedCurve& curve);

  /// normals[j] is e2 at u_j = period * j / N. Each must be unit and
  /// orthogonal to f'(u_j) within 1e-10.
  static Framing from_samples(const ClosedCurve& curve, std::vector<Vec3> normals);

  /// The principal normal rotated about the tangent by 2*pi*turns*u/period.
  static Framing rotated_principal(const ClosedCurve& curve, int turns, std::size_t samples = 1024);

  const ClosedCurve& curve() const { return curve_; }
  bool is_principal() const { return normals_.empty(); }

  /// e2(u). Explicit fields are interpolated trigonometrically, then projected
  /// back onto the unit normal circle of f'(u).
  Vec3 normal(double u) const;

  /// e2 at u_j = period * j / n.
  std::vector<Vec3> normals(std::size_t n) const;

 private:
  Framing(ClosedCurve curve, std::vector<Vec3> normals);

  ClosedCurve curve_;
  std::vector<Vec3> normals_;
  TrigSeries interp_;
};

}  // namespace knotinv
