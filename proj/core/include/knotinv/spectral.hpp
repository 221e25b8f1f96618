#pragma once

#include "knotinv/vec.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace knotinv {

/// Position and first three parameter derivatives of a curve at one point.
struct Jet {
  Vec3 p = Vec3::Zero();
  Vec3 d1 = Vec3::Zero();
  Vec3 d2 = Vec3::Zero();
  Vec3 d3 = Vec3::Zero();
};

/// Real trigonometric polynomial with vector coefficients on the period 2*pi:
///   f(u) = sum_k cos_coef[k] cos(k u) + sin_coef[k] sin(k u).
/// Index k is the frequency; sin_coef[0] is ignored.
class TrigSeries {
 public:
  TrigSeries() = default;
  TrigSeries(std::vector<Vec3> cos_coef, std::vector<Vec3> sin_coef);

  /// Coefficients of the trigonometric interpolant of uniform periodic samples
  /// taken at u_j = 2*pi*j/N.
  static TrigSeries interpolate(std::span<const Vec3> samples);

  std::size_t max_frequency() const { return cos_.empty() ? 0 : cos_.size() - 1; }
  const std::vector<Vec3>& cos_coef() const { return cos_; }
  const std::vector<Vec3>& sin_coef() const { return sin_; }

  Jet jet(double u) const;
  Vec3 value(double u) const;

  /// Jets at u_j = 2*pi*j/n. Exact evaluation (no aliasing).
  std::vector<Jet> grid(std::size_t n) const;

  TrigSeries derivative() const;

 private:
  std::vector<Vec3> cos_;
  std::vector<Vec3> sin_;
};

/// Scalar version used for arc-length functions and similar.
std::vector<double> periodic_derivative(std::span<const double> samples);

/// Spectral derivative d/du of uniform periodic samples on [0, 2*pi).
std::vector<Vec3> periodic_derivative(std::span<const Vec3> samples);

}  // namespace knotinv
