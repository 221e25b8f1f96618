#include "knotinv/curve.hpp"

#include "knotinv/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace knotinv {

namespace {

constexpr std::size_t kValidationSamples = 256;
constexpr std::size_t kLengthSamples = 2048;

nlohmann::json samples_spec(const std::vector<Vec3>& pts) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : pts) points.push_back({p.x(), p.y(), p.z()});
  return {{"type", "samples"}, {"points", points}};
}

}  // namespace

std::vector<Jet> CurveEvaluator::grid(std::size_t n) const {
  std::vector<Jet> out(n);
  const double T = period();
  for (std::size_t j = 0; j < n; ++j) out[j] = jet(T * static_cast<double>(j) / static_cast<double>(n));
  return out;
}

nlohmann::json CurveEvaluator::spec() const {
  const auto g = grid(1024);
  std::vector<Vec3> pts;
  pts.reserve(g.size());
  for (const auto& j : g) pts.push_back(j.p);
  return samples_spec(pts);
}

double min_nonadjacent_distance(const std::vector<Vec3>& points) {
  const std::size_t n = points.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 3; j < n; ++j) {
      if (i + n - j <= 2) continue;
      best = std::min(best, (points[i] - points[j]).norm());
    }
  }
  return best;
}

ClosedCurve::ClosedCurve(std::shared_ptr<const CurveEvaluator> impl) : impl_(std::move(impl)) {
  if (!impl_) throw KnotError(ErrorCode::ParseError, "null curve evaluator");
  const double T = impl_->period();
  if (!(T > 0.0) || !std::isfinite(T)) throw KnotError(ErrorCode::InvalidParams, "curve period must be positive");

  const auto g = impl_->grid(kValidationSamples);
  double max_speed = 0.0;
  double min_speed = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  std::vector<Vec3> pts;
  pts.reserve(g.size());
  for (const auto& j : g) {
    if (!is_finite(j.p) || !is_finite(j.d1) || !is_finite(j.d2) || !is_finite(j.d3)) {
      throw KnotError(ErrorCode::RegularityViolation, "curve evaluator produced a non-finite value");
    }
    const double s = j.d1.norm();
    max_speed = std::max(max_speed, s);
    min_speed = std::min(min_speed, s);
    scale = std::max(scale, j.p.norm());
    pts.push_back(j.p);
  }
  if (!(max_speed > 0.0) || min_speed <= 1e-12 * max_speed) {
    throw KnotError(ErrorCode::RegularityViolation, "|f'| vanishes at a grid point");
  }
  for (double u : {0.0, 0.37 * T, 0.81 * T}) {
    const Vec3 d = impl_->jet(u + T).p - impl_->jet(u).p;
    if (d.norm() > 1e-9 * std::max(scale, 1.0)) {
      throw KnotError(ErrorCode::InvalidParams, "curve is not periodic with the declared period");
    }
  }
  if (!(min_nonadjacent_distance(pts) > 0.0)) {
    throw KnotError(ErrorCode::NearSelfIntersection, "sample points coincide: curve is not simple at sampling resolution");
  }

  const auto lg = impl_->grid(kLengthSamples);
  double acc = 0.0, comp = 0.0;
  for (const auto& j : lg) {
    const double x = j.d1.norm();
    const double t = acc + x;
    comp += (acc - t) + x;
    acc = t;
  }
  length_ = (acc + comp) * T / static_cast<double>(kLengthSamples);
}

std::vector<Vec3> ClosedCurve::positions(std::size_t n) const {
  const auto g = grid(n);
  std::vector<Vec3> out;
  out.reserve(n);
  for (const auto& j : g) out.push_back(j.p);
  return out;
}

Vec3 ClosedCurve::centroid() const {
  const auto g = grid(kLengthSamples);
  Vec3 c = Vec3::Zero();
  double w = 0.0;
  for (const auto& j : g) {
    const double s = j.d1.norm();
    c += s * j.p;
    w += s;
  }
  return c / w;
}

double ClosedCurve::diameter() const {
  const auto pts = positions(kValidationSamples);
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

TrigCurve::TrigCurve(TrigSeries series, nlohmann::json spec) : series_(std::move(series)), spec_(std::move(spec)) {}

AffineCurve::AffineCurve(ClosedCurve base, Eigen::Matrix3d linear, Vec3 shift)
    : base_(std::move(base)), linear_(std::move(linear)), shift_(std::move(shift)) {}

Jet AffineCurve::map(const Jet& j) const {
  return Jet{linear_ * j.p + shift_, linear_ * j.d1, linear_ * j.d2, linear_ * j.d3};
}

Jet AffineCurve::jet(double u) const { return map(base_.jet(u)); }

std::vector<Jet> AffineCurve::grid(std::size_t n) const {
  auto g = base_.grid(n);
  for (auto& j : g) j = map(j);
  return g;
}

ClosedCurve curve_from_fourier(std::vector<Vec3> cos_coef, std::vector<Vec3> sin_coef) {
  nlohmann::json c = nlohmann::json::array();
  nlohmann::json s = nlohmann::json::array();
  for (const auto& v : cos_coef) c.push_back({v.x(), v.y(), v.z()});
  for (const auto& v : sin_coef) s.push_back({v.x(), v.y(), v.z()});
  nlohmann::json spec = {{"type", "fourier"}, {"cos", c}, {"sin", s}};
  for (const auto& v : cos_coef)
    if (!is_finite(v)) throw KnotError(ErrorCode::ParseError, "non-finite Fourier coefficient");
  for (const auto& v : sin_coef)
    if (!is_finite(v)) throw KnotError(ErrorCode::ParseError, "non-finite Fourier coefficient");
  return ClosedCurve(std::make_shared<TrigCurve>(TrigSeries(std::move(cos_coef), std::move(sin_coef)), std::move(spec)));
}

ClosedCurve curve_from_samples(std::vector<Vec3> points) {
  if (points.size() < 16) {
    throw KnotError(ErrorCode::TooFewSamples, "need at least 16 samples, got " + std::to_string(points.size()));
  }
  for (const auto& p : points)
    if (!is_finite(p)) throw KnotError(ErrorCode::ParseError, "non-finite sample point");
  auto series = TrigSeries::interpolate(points);
  auto spec = samples_spec(points);
  return ClosedCurve(std::make_shared<TrigCurve>(std::move(series), std::move(spec)));
}

nlohmann::json serialize(const ClosedCurve& curve) { return curve.evaluator().spec(); }

std::vector<double> arclength_parameters(const ClosedCurve& curve, std::size_t n) {
  if (n == 0) throw KnotError(ErrorCode::InvalidParams, "resample size must be positive");
  const double T = curve.period();
  const std::size_t m = std::bit_ceil(std::max<std::size_t>(4 * n, 2048));
  const auto g = curve.grid(m);
  std::vector<Vec3> speed(m, Vec3::Zero());
  for (std::size_t j = 0; j < m; ++j) speed[j].x() = g[j].d1.norm();
  // Speed as a trigonometric series in the normalized variable x = 2*pi*u/T.
  const auto series = TrigSeries::interpolate(speed);
  const auto& a = series.cos_coef();
  const auto& b = series.sin_coef();
  const double mean = a[0].x();
  const double scale = T / (2.0 * M_PI);
  auto arc = [&](double x) {
    double s = mean * x;
    for (std::size_t k = 1; k < a.size(); ++k) {
      const double kk = static_cast<double>(k);
      s += (a[k].x() * std::sin(kk * x) - b[k].x() * (std::cos(kk * x) - 1.0)) / kk;
    }
    return s * scale;
  };
  const double L = mean * 2.0 * M_PI * scale;

  // Cumulative arc length on the dense grid for initial guesses.
  std::vector<double> cum(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) cum[j + 1] = arc(2.0 * M_PI * static_cast<double>(j + 1) / static_cast<double>(m));

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = L * static_cast<double>(i) / static_cast<double>(n);
    auto it = std::upper_bound(cum.begin(), cum.end(), target);
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cum.begin() - 1, 0));
    k = std::min(k, m - 1);
    const double frac = (target - cum[k]) / std::max(cum[k + 1] - cum[k], 1e-300);
    double x = 2.0 * M_PI * (static_cast<double>(k) + frac) / static_cast<double>(m);
    bool converged = false;
    for (int iter = 0; iter < 50; ++iter) {
      const double residual = arc(x) - target;
      const double ds_dx = curve.jet(x * scale).d1.norm() * scale;
      const double step = residual / ds_dx;
      x -= step;
      if (std::abs(step) * ds_dx <= 1e-14 * L) {
        converged = true;
        break;
      }
    }
    if (!converged || !std::isfinite(x)) {
      throw KnotError(ErrorCode::ToleranceNotMet, "inverse arc-length solve did not converge");
    }
    out[i] = x * scale;
  }
  return out;
}

ClosedCurve resample_arclength(const ClosedCurve& curve, std::size_t n) {
  const auto params = arclength_parameters(curve, n);
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (double u : params) pts.push_back(curve.position(u));
  return curve_from_samples(std::move(pts));
}

ClosedCurve mirror_curve(const ClosedCurve& curve) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(2, 2) = -1.0;
  return ClosedCurve(std::make_shared<AffineCurve>(curve, m, Vec3::Zero()));
}

ClosedCurve mirror_curve(const ClosedCurve& curve, const Vec3& plane_point, const Vec3& plane_normal) {
  const Vec3 n = plane_normal.normalized();
  const Eigen::Matrix3d m = Eigen::Matrix3d::Identity() - 2.0 * n * n.transpose();
  const Vec3 shift = 2.0 * n.dot(plane_point) * n;
  return ClosedCurve(std::make_shared<AffineCurve>(curve, m, shift));
}

ClosedCurve transform_curve(const ClosedCurve& curve, const Eigen::Matrix3d& rotation, const Vec3& translation,
                            double scale) {
  return ClosedCurve(std::make_shared<AffineCurve>(curve, scale * rotation, translation));
}

}  // namespace knotinv
