#include "knotinv/invariants.hpp"

#include "knotinv/error.hpp"
#include "knotinv/frenet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace knotinv {

namespace {

double gauss_kernel(const Vec3& da, const Vec3& db, const Vec3& diff) {
  const double r2 = diff.squaredNorm();
  return det3(da, db, diff) / (r2 * std::sqrt(r2));
}

void check_self_distance(const ClosedCurve& curve, std::size_t n) {
  const double d = min_nonadjacent_distance(curve.positions(n));
  if (d < 1e-9 * curve.length()) {
    std::ostringstream msg;
    msg << "non-neighboring samples are " << d << " apart (curve length " << curve.length() << ")";
    throw KnotError(ErrorCode::NearSelfIntersection, msg.str());
  }
}

struct Separation {
  double min_distance;
  double max_speed2;
};

Separation separation(const ClosedCurve& c1, const ClosedCurve& c2, std::size_t n) {
  const auto a = c1.grid(n);
  const auto b = c2.grid(n);
  Separation s{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& x : a)
    for (const auto& y : b) s.min_distance = std::min(s.min_distance, (x.p - y.p).norm());
  for (const auto& y : b) s.max_speed2 = std::max(s.max_speed2, y.d1.norm());
  return s;
}

}  // namespace

InvariantReport writhe(const ClosedCurve& curve, const QuadratureConfig& q) {
  q.validate();
  check_self_distance(curve, q.n);
  auto pass = [&](std::size_t n) {
    const auto g = curve.grid(n);
    const auto w = periodic_weights(n, curve.period(), q.rule);
    const double total = sum_rows(n, [&](std::size_t i) {
      CompensatedSum row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        row.add(w[j] * gauss_kernel(g[i].d1, g[j].d1, g[i].p - g[j].p));
      }
      return w[i] * row.value();
    });
    return total / (4.0 * M_PI);
  };
  return refine(q, pass, "writhe");
}

InvariantReport total_torsion(const ClosedCurve& curve, const QuadratureConfig& q) {
  q.validate();
  const double threshold = kappa_threshold(curve);
  auto pass = [&](std::size_t n) {
    const auto g = curve.grid(n);
    const auto w = periodic_weights(n, curve.period(), q.rule);
    CompensatedSum s;
    for (std::size_t i = 0; i < n; ++i) {
      const auto fr = frenet_from_jet(g[i], threshold, curve.parameter(i, n));
      s.add(w[i] * fr.tau * g[i].d1.norm());
    }
    return s.value() / (2.0 * M_PI);
  };
  return refine(q, pass, "total_torsion");
}

InvariantReport twist(const ClosedCurve& curve, const Framing& framing, const QuadratureConfig& q) {
  q.validate();
  if (!framing.curve().same_as(curve)) {
    throw KnotError(ErrorCode::FramingMismatch, "framing belongs to a different curve");
  }
  auto pass = [&](std::size_t n) {
    const auto g = curve.grid(n);
    const auto e2 = framing.normals(n);
    auto de2 = periodic_derivative(std::span<const Vec3>(e2));
    const double chain = 2.0 * M_PI / curve.period();
    const auto w = periodic_weights(n, curve.period(), q.rule);
    CompensatedSum s;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 e3 = g[i].d1.normalized().cross(e2[i]);
      s.add(w[i] * chain * de2[i].dot(e3));
    }
    return s.value() / (2.0 * M_PI);
  };
  return refine(q, pass, "twist");
}

LinkingResult linking_number(const ClosedCurve& c1, const ClosedCurve& c2, const QuadratureConfig& q) {
  q.validate();
  const auto sep = separation(c1, c2, std::max<std::size_t>(q.n, 1024));
  const double scale = std::max(c1.length(), c2.length());
  if (sep.min_distance <= 1e-6 * scale) {
    std::ostringstream msg;
    msg << "curves are " << sep.min_distance << " apart";
    throw KnotError(ErrorCode::CurvesIntersect, msg.str());
  }
  // The kernel has complex poles at parameter distance ~ d / |g'| from the
  // real axis; the periodic trapezoid error decays like exp(-n d / |g'|).
  const double want = 5.0 * M_PI * sep.max_speed2 * (c2.period() / (2.0 * M_PI)) / sep.min_distance;
  const std::size_t inner_base =
      std::min<std::size_t>(std::max(q.n, std::bit_ceil(static_cast<std::size_t>(std::ceil(want)))), std::size_t{1} << 18);

  LinkingResult result;
  auto pass = [&](std::size_t n) {
    const std::size_t level = static_cast<std::size_t>(std::countr_zero(n / q.n));
    const std::size_t m = inner_base << level;
    result.inner_n = m;
    const auto a = c1.grid(n);
    const auto b = c2.grid(m);
    const auto wa = periodic_weights(n, c1.period(), q.rule);
    const auto wb = periodic_weights(m, c2.period(), q.rule);
    const double total = sum_rows(n, [&](std::size_t i) {
      CompensatedSum row;
      for (std::size_t j = 0; j < m; ++j) row.add(wb[j] * gauss_kernel(a[i].d1, b[j].d1, a[i].p - b[j].p));
      return wa[i] * row.value();
    });
    return total / (4.0 * M_PI);
  };
  result.integral = refine(q, pass, "linking_number", false);
  result.lk = std::lround(result.integral.value);
  result.residual = std::abs(result.integral.value - static_cast<double>(result.lk));
  if (result.residual > 0.1) {
    std::ostringstream msg;
    msg << "Gauss integral " << result.integral.value << " is " << result.residual << " from the nearest integer";
    throw KnotError(ErrorCode::ToleranceNotMet, msg.str());
  }
  return result;
}

LinkingResult self_linking(const ClosedCurve& curve, double epsilon, const QuadratureConfig& q) {
  const auto framing = Framing::principal(curve);
  const auto pushed = offset_curve(curve, framing, epsilon);
  return linking_number(curve, pushed, q);
}

CalugareanuReport calugareanu_report(const ClosedCurve& curve, const Framing& framing, double epsilon,
                                     const QuadratureConfig& q) {
  CalugareanuReport r;
  const auto pushed = offset_curve(curve, framing, epsilon);
  const auto lk = linking_number(curve, pushed, q);
  r.writhe = writhe(curve, q);
  r.twist = twist(curve, framing, q);
  r.lk = lk.lk;
  r.lk_residual = lk.residual;
  r.wr = r.writhe.value;
  r.tw = r.twist.value;
  r.residual = std::abs(static_cast<double>(r.lk) - r.wr - r.tw);
  return r;
}

}  // namespace knotinv
