#pragma once

#include "knotinv/curve.hpp"
#include "knotinv/quadrature.hpp"

#include <cstddef>
#include <vector>

namespace knotinv {

/// Point of S^2 with the curve parameters it came from.
struct SphericalSample {
  Vec3 point;
  double s = 0.0;
  double t = 0.0;
};

/// Closed spherical polyline; the closing segment runs from the last sample
/// back to the first.
struct IndicatrixCurve {
  int sign = 1;
  std::vector<SphericalSample> samples;

  /// Smallest great-circle distance between consecutive samples.
  double min_spacing() const;
};

/// (f(s) - f(t)) / |f(s) - f(t)|. Throws DiagonalPoint when s = t mod period.
SphericalSample gauss_map(const ClosedCurve& curve, double s, double t);

/// sign * v at n samples uniform in arc length, s increasing; s and t of each
/// sample hold the arc-length position.
IndicatrixCurve tangent_indicatrix(const ClosedCurve& curve, int sign, std::size_t n);

/// phi . (phi_s x phi_t) of the chord map at raw parameters (s, t), s != t.
double chord_area_density(const ClosedCurve& curve, double s, double t);

/// Signed area of the chord-map image of {s < t < s + period}. The domain is
/// oriented by (t, s), which makes the area 4 pi Wr. The refinement tolerance
/// is applied in units of 4 pi, the area of the sphere; the same holds for
/// swept_area.
InvariantReport writhe_surface_area(const ClosedCurve& curve, const QuadratureConfig& q = {});

/// w(u, t) = cos t e1(u) + sin t e2(u).
Vec3 swept_point(const ClosedCurve& curve, double u, double t);

/// Signed area of the surface swept by the half great circles from v to -v
/// through e2. The reduced integrand -tau sin t gives the value; the raw
/// determinant w . (w_s x w_t) is integrated alongside, and their difference
/// enters estimated_error. Throws CurvatureVanishes.
InvariantReport swept_area(const ClosedCurve& curve, const QuadratureConfig& q = {});

/// max |w . (w_s x w_t) + tau sin t| over a grid x grid set of (u, t) samples.
double swept_integrand_residual(const ClosedCurve& curve, std::size_t grid = 64);

struct CycleArea {
  long k = 0;
  double residual = 0.0;  ///< distance of (Area(S) - Area(S')) / 4 pi to k
  InvariantReport chord_area;
  InvariantReport swept;
};

/// Area of S minus area of S' in units of 4 pi. Throws ToleranceNotMet when
/// the residual exceeds 0.1.
CycleArea cycle_area_check(const ClosedCurve& curve, const QuadratureConfig& q = {});

}  // namespace knotinv
