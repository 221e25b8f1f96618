#include "knotinv/frenet.hpp"

#include "knotinv/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace knotinv {

double kappa_threshold(const ClosedCurve& curve, double kappa_scale) { return kappa_scale / curve.length(); }

double curvature_from_jet(const Jet& j) {
  const double speed = j.d1.norm();
  return j.d1.cross(j.d2).norm() / (speed * speed * speed);
}

FrenetFrame frenet_from_jet(const Jet& j, double threshold, double u) {
  const Vec3 b = j.d1.cross(j.d2);
  const double speed = j.d1.norm();
  const double bn = b.norm();
  FrenetFrame f;
  f.kappa = bn / (speed * speed * speed);
  if (!(f.kappa > threshold)) {
    std::ostringstream msg;
    msg << "curvature " << f.kappa << " at u=" << u << " is below threshold " << threshold;
    throw KnotError(ErrorCode::CurvatureVanishes, msg.str());
  }
  f.e1 = j.d1 / speed;
  f.e3 = b / bn;
  f.e2 = f.e3.cross(f.e1);
  f.tau = det3(j.d1, j.d2, j.d3) / (bn * bn);
  return f;
}

FrenetFrame frenet_at(const ClosedCurve& curve, double u, double kappa_scale) {
  return frenet_from_jet(curve.jet(u), kappa_threshold(curve, kappa_scale), u);
}

CurvatureProfile frenet_scan(const ClosedCurve& curve, std::size_t n, double kappa_scale) {
  if (n < 16) throw KnotError(ErrorCode::InvalidParams, "frenet_scan needs n >= 16");
  CurvatureProfile prof;
  prof.threshold = kappa_threshold(curve, kappa_scale);
  prof.u = arclength_parameters(curve, n);
  prof.min_kappa = std::numeric_limits<double>::infinity();
  const double L = curve.length();
  for (std::size_t i = 0; i < n; ++i) {
    const Jet j = curve.jet(prof.u[i]);
    const double k = curvature_from_jet(j);
    double t = std::numeric_limits<double>::quiet_NaN();
    if (k > prof.threshold) t = frenet_from_jet(j, prof.threshold, prof.u[i]).tau;
    prof.s.push_back(L * static_cast<double>(i) / static_cast<double>(n));
    prof.kappa.push_back(k);
    prof.tau.push_back(t);
    if (k < prof.min_kappa) {
      prof.min_kappa = k;
      prof.min_kappa_location = prof.u[i];
    }
  }
  return prof;
}

bool nowhere_vanishing_curvature(const ClosedCurve& curve, std::size_t n, double kappa_scale) {
  return frenet_scan(curve, n, kappa_scale).nowhere_vanishing();
}

}  // namespace knotinv
