#pragma once

#include "knotinv/curve.hpp"

#include <cstddef>
#include <vector>

namespace knotinv {

/// Curvature below kKappaScale / length() counts as vanishing.
inline constexpr double kKappaScale = 1e-8;

struct FrenetFrame {
  Vec3 e1;  ///< unit tangent
  Vec3 e2;  ///< unit principal normal
  Vec3 e3;  ///< unit binormal
  double kappa = 0.0;
  double tau = 0.0;
};

double kappa_threshold(const ClosedCurve& curve, double kappa_scale = kKappaScale);

/// Frame from raw derivatives; throws CurvatureVanishes when kappa <= threshold.
FrenetFrame frenet_from_jet(const Jet& jet, double threshold, double u = 0.0);

FrenetFrame frenet_at(const ClosedCurve& curve, double u, double kappa_scale = kKappaScale);

/// Curvature alone; defined everywhere on a regular curve.
double curvature_from_jet(const Jet& jet);

struct CurvatureProfile {
  std::vector<double> u;
  std::vector<double> s;
  std::vector<double> kappa;
  std::vector<double> tau;  ///< NaN where kappa is below threshold
  double min_kappa = 0.0;
  double min_kappa_location = 0.0;
  double threshold = 0.0;

  bool nowhere_vanishing() const { return min_kappa > threshold; }
};

/// Curvature and torsion at n samples uniform in arc length.
CurvatureProfile frenet_scan(const ClosedCurve& curve, std::size_t n, double kappa_scale = kKappaScale);

/// Shorthand for frenet_scan(curve, n).nowhere_vanishing().
bool nowhere_vanishing_curvature(const ClosedCurve& curve, std::size_t n = 1024, double kappa_scale = kKappaScale);

}  // namespace knotinv
