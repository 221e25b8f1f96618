#include "knotinv/framing.hpp"

#include "knotinv/error.hpp"
#include "knotinv/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace knotinv {

namespace {

Vec3 project_normal(const Vec3& approx, const Vec3& tangent) {
  const Vec3 t = tangent.normalized();
  return (approx - approx.dot(t) * t).normalized();
}

// Minimum distance between points whose arc-length separation is at least
// `min_arc`, on 512 arc-length samples.
double self_distance(const ClosedCurve& curve, double min_arc) {
  constexpr std::size_t n = 512;
  const auto params = arclength_parameters(curve, n);
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (double u : params) pts.push_back(curve.position(u));
  const double ds = curve.length() / static_cast<double>(n);
  const auto gap = static_cast<std::size_t>(std::ceil(min_arc / ds));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t d = std::min(j - i, n - (j - i));
      if (d < gap) continue;
      best = std::min(best, (pts[i] - pts[j]).norm());
    }
  }
  return best;
}

}  // namespace

Framing::Framing(ClosedCurve curve, std::vector<Vec3> normals) : curve_(std::move(curve)), normals_(std::move(normals)) {
  if (!normals_.empty()) interp_ = TrigSeries::interpolate(normals_);
}

Framing Framing::principal(const ClosedCurve& curve) { return Framing(curve, {}); }

Framing Framing::from_samples(const ClosedCurve& curve, std::vector<Vec3> normals) {
  if (normals.size() < 16) throw KnotError(ErrorCode::TooFewSamples, "framing needs at least 16 samples");
  const auto g = curve.grid(normals.size());
  for (std::size_t j = 0; j < normals.size(); ++j) {
    const double norm_err = std::abs(normals[j].norm() - 1.0);
    const double orth_err = std::abs(normals[j].dot(g[j].d1.normalized()));
    if (!(norm_err <= 1e-10) || !(orth_err <= 1e-10)) {
      std::ostringstream msg;
      msg << "framing sample " << j << " is not a unit normal (|e2|-1=" << norm_err << ", e2.v=" << orth_err << ")";
      throw KnotError(ErrorCode::InvalidParams, msg.str());
    }
  }
  return Framing(curve, std::move(normals));
}

Framing Framing::rotated_principal(const ClosedCurve& curve, int turns, std::size_t samples) {
  const auto g = curve.grid(samples);
  const double threshold = kappa_threshold(curve);
  std::vector<Vec3> normals(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const auto fr = frenet_from_jet(g[j], threshold, curve.parameter(j, samples));
    const double angle = 2.0 * M_PI * turns * static_cast<double>(j) / static_cast<double>(samples);
    normals[j] = std::cos(angle) * fr.e2 + std::sin(angle) * fr.e3;
  }
  return from_samples(curve, std::move(normals));
}

Vec3 Framing::normal(double u) const {
  const Jet j = curve_.jet(u);
  if (is_principal()) return frenet_from_jet(j, kappa_threshold(curve_), u).e2;
  return project_normal(interp_.value(2.0 * M_PI * u / curve_.period()), j.d1);
}

std::vector<Vec3> Framing::normals(std::size_t n) const {
  const auto g = curve_.grid(n);
  std::vector<Vec3> out(n);
  if (is_principal()) {
    const double threshold = kappa_threshold(curve_);
    for (std::size_t j = 0; j < n; ++j) out[j] = frenet_from_jet(g[j], threshold, curve_.parameter(j, n)).e2;
    return out;
  }
  if (n == normals_.size()) return normals_;
  const auto approx = interp_.grid(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = project_normal(approx[j].p, g[j].d1);
  return out;
}

ClosedCurve offset_curve(const ClosedCurve& curve, const Framing& framing, double epsilon, std::size_t samples) {
  if (!framing.curve().same_as(curve)) {
    throw KnotError(ErrorCode::FramingMismatch, "framing belongs to a different curve");
  }
  const auto g = curve.grid(samples);
  double max_kappa = 0.0;
  std::vector<Vec3> pts;
  pts.reserve(samples);
  for (const auto& j : g) {
    max_kappa = std::max(max_kappa, curvature_from_jet(j));
    pts.push_back(j.p);
  }
  const double reach_curvature = max_kappa > 0.0 ? 1.0 / max_kappa : std::numeric_limits<double>::infinity();
  const double reach_distance = 0.5 * self_distance(curve, std::min(reach_curvature * M_PI, 0.5 * curve.length()));
  if (!(std::abs(epsilon) < reach_curvature)) {
    std::ostringstream msg;
    msg << "|epsilon|=" << std::abs(epsilon) << " is not below the minimum osculating radius " << reach_curvature;
    throw KnotError(ErrorCode::OffsetTooLarge, msg.str());
  }
  if (!(std::abs(epsilon) < reach_distance)) {
    std::ostringstream msg;
    msg << "|epsilon|=" << std::abs(epsilon) << " is not below half the minimum self-distance " << reach_distance;
    throw KnotError(ErrorCode::OffsetTooLarge, msg.str());
  }
  const auto e2 = framing.normals(samples);
  for (std::size_t j = 0; j < samples; ++j) pts[j] += epsilon * e2[j];
  return curve_from_samples(std::move(pts));
}

}  // namespace knotinv
