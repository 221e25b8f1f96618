#include "knotinv/indicatrix.hpp"

#include "knotinv/error.hpp"
#include "knotinv/frenet.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace knotinv {

namespace {

using Legendre = boost::math::quadrature::gauss<double, 20>;

struct ChordJets {
  Vec3 phi;
  Vec3 phi_s;
  Vec3 phi_t;
};

ChordJets chord_jets(const Jet& a, const Jet& b) {
  const Vec3 d = a.p - b.p;
  const double len = d.norm();
  ChordJets c;
  c.phi = d / len;
  c.phi_s = (a.d1 - c.phi * c.phi.dot(a.d1)) / len;
  c.phi_t = -(b.d1 - c.phi * c.phi.dot(b.d1)) / len;
  return c;
}

double chord_density(const Jet& a, const Jet& b) {
  const auto c = chord_jets(a, b);
  return c.phi.dot(c.phi_s.cross(c.phi_t));
}

struct FrameDerivative {
  FrenetFrame frame;
  double speed;
  Vec3 de1;  // derivatives in the raw parameter
  Vec3 de2;
};

FrameDerivative frame_derivative(const Jet& j, double threshold, double u) {
  FrameDerivative out;
  out.frame = frenet_from_jet(j, threshold, u);
  out.speed = j.d1.norm();
  const Vec3& e1 = out.frame.e1;
  const Vec3& e3 = out.frame.e3;
  out.de1 = (j.d2 - e1 * j.d2.dot(e1)) / out.speed;
  const Vec3 b = j.d1.cross(j.d2);
  const Vec3 db = j.d1.cross(j.d3);
  const Vec3 de3 = (db - e3 * e3.dot(db)) / b.norm();
  out.de2 = de3.cross(e1) + e3.cross(out.de1);
  return out;
}

// w . (w_s x w_t) per unit arc length from the differentiated frame.
double raw_swept_density(const FrameDerivative& f, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  const Vec3 w = c * f.frame.e1 + s * f.frame.e2;
  const Vec3 w_u = c * f.de1 + s * f.de2;
  const Vec3 w_t = -s * f.frame.e1 + c * f.frame.e2;
  return w.dot(w_u.cross(w_t)) / f.speed;
}

// Areas are compared against the tolerance in units of the sphere area.
QuadratureConfig area_config(const QuadratureConfig& q) {
  QuadratureConfig scaled = q;
  scaled.tol = 4.0 * M_PI * q.tol;
  return scaled;
}

}  // namespace

double IndicatrixCurve::min_spacing() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vec3& a = samples[i].point;
    const Vec3& b = samples[(i + 1) % samples.size()].point;
    best = std::min(best, std::atan2(a.cross(b).norm(), a.dot(b)));
  }
  return best;
}

SphericalSample gauss_map(const ClosedCurve& curve, double s, double t) {
  const double T = curve.period();
  const double gap = std::remainder(s - t, T);
  const Vec3 d = curve.position(s) - curve.position(t);
  if (std::abs(gap) <= 1e-12 * T || d.norm() <= 1e-14 * curve.length()) {
    std::ostringstream msg;
    msg << "chord map undefined on the diagonal (s=" << s << ", t=" << t << ")";
    throw KnotError(ErrorCode::DiagonalPoint, msg.str());
  }
  return {d.normalized(), s, t};
}

IndicatrixCurve tangent_indicatrix(const ClosedCurve& curve, int sign, std::size_t n) {
  if (sign != 1 && sign != -1) throw KnotError(ErrorCode::InvalidParams, "indicatrix sign must be +1 or -1");
  if (n < 3) throw KnotError(ErrorCode::TooFewSamples, "indicatrix needs at least 3 samples");
  const auto us = arclength_parameters(curve, n);
  const double step = curve.length() / static_cast<double>(n);
  IndicatrixCurve out;
  out.sign = sign;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = step * static_cast<double>(i);
    out.samples.push_back({sign * curve.jet(us[i]).d1.normalized(), s, s});
  }
  return out;
}

double chord_area_density(const ClosedCurve& curve, double s, double t) {
  gauss_map(curve, s, t);
  return chord_density(curve.jet(s), curve.jet(t));
}

InvariantReport writhe_surface_area(const ClosedCurve& curve, const QuadratureConfig& q) {
  q.validate();
  if (min_nonadjacent_distance(curve.positions(q.n)) < 1e-9 * curve.length()) {
    throw KnotError(ErrorCode::NearSelfIntersection, "curve nearly self-intersects");
  }
  auto pass = [&](std::size_t n) {
    const auto g = curve.grid(n);
    const auto w = periodic_weights(n, curve.period(), q.rule);
    return sum_rows(n, [&](std::size_t i) {
      CompensatedSum row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        row.add(w[j] * chord_density(g[i], g[j]));
      }
      return -w[i] * row.value();
    });
  };
  return refine(area_config(q), pass, "writhe_surface_area");
}

Vec3 swept_point(const ClosedCurve& curve, double u, double t) {
  const auto fr = frenet_at(curve, u);
  return std::cos(t) * fr.e1 + std::sin(t) * fr.e2;
}

InvariantReport swept_area(const ClosedCurve& curve, const QuadratureConfig& q) {
  q.validate();
  const double threshold = kappa_threshold(curve);
  double raw_last = 0.0;
  auto pass = [&](std::size_t n) {
    const auto g = curve.grid(n);
    const auto w = periodic_weights(n, curve.period(), q.rule);
    const double sin_integral = Legendre::integrate([](double t) { return std::sin(t); }, 0.0, M_PI);
    CompensatedSum reduced;
    CompensatedSum raw;
    for (std::size_t i = 0; i < n; ++i) {
      const auto fd = frame_derivative(g[i], threshold, curve.parameter(i, n));
      reduced.add(-w[i] * fd.speed * fd.frame.tau * sin_integral);
      raw.add(w[i] * fd.speed * Legendre::integrate([&](double t) { return raw_swept_density(fd, t); }, 0.0, M_PI));
    }
    raw_last = raw.value();
    return reduced.value();
  };
  auto r = refine(area_config(q), pass, "swept_area");
  r.estimated_error = std::max(r.estimated_error, std::abs(raw_last - r.value));
  return r;
}

double swept_integrand_residual(const ClosedCurve& curve, std::size_t grid) {
  if (grid < 2) throw KnotError(ErrorCode::InvalidParams, "grid must be at least 2");
  const double threshold = kappa_threshold(curve);
  const auto g = curve.grid(grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const auto fd = frame_derivative(g[i], threshold, curve.parameter(i, grid));
    for (std::size_t k = 0; k < grid; ++k) {
      const double t = M_PI * static_cast<double>(k) / static_cast<double>(grid - 1);
      worst = std::max(worst, std::abs(raw_swept_density(fd, t) + fd.frame.tau * std::sin(t)));
    }
  }
  return worst;
}

CycleArea cycle_area_check(const ClosedCurve& curve, const QuadratureConfig& q) {
  CycleArea out;
  out.swept = swept_area(curve, q);
  out.chord_area = writhe_surface_area(curve, q);
  const double units = (out.chord_area.value - out.swept.value) / (4.0 * M_PI);
  out.k = std::lround(units);
  out.residual = std::abs(units - static_cast<double>(out.k));
  if (out.residual > 0.1) {
    std::ostringstream msg;
    msg << "cycle area is " << units << " times 4 pi, not close to an integer";
    throw KnotError(ErrorCode::ToleranceNotMet, msg.str());
  }
  return out;
}

}  // namespace knotinv
