#include "knotinv/conformal.hpp"

#include "knotinv/error.hpp"
#include "knotinv/frenet.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace knotinv {

namespace {

std::string fmt_vec(const Vec3& v) {
  std::ostringstream s;
  s << "(" << v.x() << "," << v.y() << "," << v.z() << ")";
  return s.str();
}

// Any unit vector orthogonal to the unit vector a.
Vec3 orthogonal_unit(const Vec3& a) {
  const Vec3 trial = std::abs(a.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return a.cross(trial).normalized();
}

struct TubeHit {
  double distance = std::numeric_limits<double>::infinity();
  double argmin = 0.0;
};

double tube_distance_at(const Jet& j, const Vec3& p, double u, double threshold, bool allow_lines) {
  const double kappa = curvature_from_jet(j);
  if (kappa > threshold) {
    const auto fr = frenet_from_jet(j, threshold, u);
    return distance_to_circle(p, Circle{j.p + fr.e2 / kappa, 1.0 / kappa, fr.e3});
  }
  if (allow_lines) return distance_to_line(p, Line{j.p, j.d1.normalized()});
  std::ostringstream msg;
  msg << "curvature vanishes at u=" << u << "; the curvature tube contains a line";
  throw KnotError(ErrorCode::CurvatureVanishes, msg.str());
}

// Osculating circles on n uniform parameters, each local minimum of the
// sampled distance polished by Brent's method on its two neighbouring cells.
// Flat samples contribute their tangent line when `allow_lines` is set.
TubeHit tube_scan(const ClosedCurve& curve, const Vec3& p, std::size_t n, bool allow_lines) {
  const auto g = curve.grid(n);
  const double threshold = kappa_threshold(curve);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = tube_distance_at(g[i], p, curve.parameter(i, n), threshold, allow_lines);
  TubeHit hit;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] < hit.distance) {
      hit.distance = d[i];
      hit.argmin = curve.parameter(i, n);
    }
  }
  const double h = curve.period() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = d[(i + n - 1) % n], next = d[(i + 1) % n];
    if (!(d[i] < prev && d[i] <= next)) continue;
    const double u0 = curve.parameter(i, n);
    const auto f = [&](double u) { return tube_distance_at(curve.jet(u), p, u, threshold, allow_lines); };
    const auto [u, dist] = boost::math::tools::brent_find_minima(f, u0 - h, u0 + h, std::numeric_limits<double>::digits / 2);
    if (dist < hit.distance) {
      hit.distance = dist;
      hit.argmin = std::fmod(u + curve.period(), curve.period());
    }
  }
  return hit;
}

// Unit vector from two 53-bit uniforms; independent of the standard
// library's distribution implementations.
Vec3 random_direction(std::mt19937_64& rng) {
  const double u1 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double z = 2.0 * u1 - 1.0;
  const double phi = 2.0 * M_PI * u2;
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

std::optional<Vec3> search_center(const ClosedCurve& curve, int trials, double delta, std::uint64_t seed,
                                  double start_radius, double growth) {
  constexpr int kPerShell = 8;
  constexpr std::size_t kTubeSamples = 1024;
  std::mt19937_64 rng(seed);
  const Vec3 centroid = curve.centroid();
  double radius = start_radius;
  for (int t = 0; t < trials; ++t) {
    if (t > 0 && t % kPerShell == 0) radius *= growth;
    const Vec3 candidate = centroid + radius * random_direction(rng);
    if (tube_scan(curve, candidate, kTubeSamples, true).distance > delta) return candidate;
  }
  return std::nullopt;
}

Circle3 oriented_tangent_circle(const Vec3& x, const Vec3& v, const Vec3& y) {
  const Vec3 d = y - x;
  const Vec3 perp = d - d.dot(v) * v;
  if (perp.norm() <= 1e-12 * d.norm()) return Line{x, v};
  const double radius = d.squaredNorm() / (2.0 * perp.norm());
  const Vec3 toward = perp.normalized();
  return Circle{x + radius * toward, radius, v.cross(toward)};
}

struct SphereParts {
  Vec3 c;     // osculating-circle center
  double R;   // osculating radius
  double D;   // e3 . (c - P)
  double Q;   // R^2 - |c - P|^2
  FrenetFrame frame;
};

SphereParts sphere_parts(const Jet& j, const Vec3& p, double threshold) {
  SphereParts s;
  s.frame = frenet_from_jet(j, threshold);
  s.R = 1.0 / s.frame.kappa;
  s.c = j.p + s.R * s.frame.e2;
  s.D = s.frame.e3.dot(s.c - p);
  s.Q = s.R * s.R - (s.c - p).squaredNorm();
  if (distance_to_circle(p, Circle{s.c, s.R, s.frame.e3}) <= 1e-9 * s.R) {
    throw KnotError(ErrorCode::DegenerateSphere, "P " + fmt_vec(p) + " lies on the osculating circle");
  }
  return s;
}

}  // namespace

Vec3 invert_point(const Inversion& inv, const Vec3& x) {
  const Vec3 y = x - inv.center;
  const double q = y.squaredNorm();
  if (std::sqrt(q) <= 1e-12 * inv.radius) {
    throw KnotError(ErrorCode::CenterHit, "point " + fmt_vec(x) + " coincides with the inversion center");
  }
  return inv.center + (inv.radius * inv.radius / q) * y;
}

double inversion_stretch(const Inversion& inv, const Vec3& x) {
  return inv.radius * inv.radius / (x - inv.center).squaredNorm();
}

InvertedCurve::InvertedCurve(ClosedCurve base, Inversion inv) : base_(std::move(base)), inv_(std::move(inv)) {}

Jet InvertedCurve::map(const Jet& j) const {
  const Vec3 y = j.p - inv_.center;
  const double q = y.squaredNorm();
  const double q1 = 2.0 * y.dot(j.d1);
  const double q2 = 2.0 * (j.d1.squaredNorm() + y.dot(j.d2));
  const double q3 = 2.0 * (3.0 * j.d1.dot(j.d2) + y.dot(j.d3));
  // Derivatives of 1/q.
  const double a0 = 1.0 / q;
  const double a1 = -q1 * a0 * a0;
  const double a2 = -q2 * a0 * a0 + 2.0 * q1 * q1 * a0 * a0 * a0;
  const double a3 = -q3 * a0 * a0 + 6.0 * q1 * q2 * a0 * a0 * a0 - 6.0 * q1 * q1 * q1 * a0 * a0 * a0 * a0;
  const double r2 = inv_.radius * inv_.radius;
  Jet out;
  out.p = inv_.center + r2 * a0 * y;
  out.d1 = r2 * (a1 * y + a0 * j.d1);
  out.d2 = r2 * (a2 * y + 2.0 * a1 * j.d1 + a0 * j.d2);
  out.d3 = r2 * (a3 * y + 3.0 * a2 * j.d1 + 3.0 * a1 * j.d2 + a0 * j.d3);
  return out;
}

Jet InvertedCurve::jet(double u) const { return map(base_.jet(u)); }

std::vector<Jet> InvertedCurve::grid(std::size_t n) const {
  auto g = base_.grid(n);
  for (auto& j : g) j = map(j);
  return g;
}

ClosedCurve invert_curve(const Inversion& inv, const ClosedCurve& curve) {
  if (!(inv.radius > 0.0) || !is_finite(inv.center)) {
    throw KnotError(ErrorCode::InvalidParams, "inversion needs a finite center and a positive radius");
  }
  double closest = std::numeric_limits<double>::infinity();
  for (const auto& x : curve.positions(1024)) closest = std::min(closest, (x - inv.center).norm());
  if (closest <= 1e-6 * inv.radius) {
    throw KnotError(ErrorCode::CenterOnCurve, "inversion center " + fmt_vec(inv.center) + " lies on the curve");
  }
  return ClosedCurve(std::make_shared<InvertedCurve>(curve, inv));
}

double distance_to_circle(const Vec3& p, const Circle& c) {
  const Vec3 rel = p - c.center;
  const double h = rel.dot(c.axis);
  const double rho = (rel - h * c.axis).norm();
  return std::hypot(h, rho - c.radius);
}

double distance_to_line(const Vec3& p, const Line& l) {
  const Vec3 rel = p - l.point;
  return (rel - rel.dot(l.direction) * l.direction).norm();
}

Vec3 circle_point(const Circle& c, double theta) {
  const Vec3 a = orthogonal_unit(c.axis);
  const Vec3 b = c.axis.cross(a);
  return c.center + c.radius * (std::cos(theta) * a + std::sin(theta) * b);
}

Circle3 circle_through(const Vec3& x, const Vec3& y, const PointOrInfinity& z) {
  const double scale = std::max({x.norm(), y.norm(), z ? z->norm() : 0.0, 1.0});
  const double eps = 1e-12 * scale;
  if ((x - y).norm() <= eps || (z && ((y - *z).norm() <= eps || (x - *z).norm() <= eps))) {
    throw KnotError(ErrorCode::CoincidentPoints, "circle through coincident points is not unique");
  }
  if (!z) return Line{x, (y - x).normalized()};
  const Vec3 a = x - *z;
  const Vec3 b = y - *z;
  const Vec3 axb = a.cross(b);
  if (axb.norm() <= 1e-12 * a.norm() * b.norm()) {
    throw KnotError(ErrorCode::CollinearPoints, "points are collinear; pass infinity for a line");
  }
  const Vec3 center = *z + (a.squaredNorm() * b - b.squaredNorm() * a).cross(axb) / (2.0 * axb.squaredNorm());
  return Circle{center, (x - center).norm(), (y - x).cross(*z - x).normalized()};
}

Circle3 tangent_circle(const ClosedCurve& curve, double u, const PointOrInfinity& y) {
  const Jet j = curve.jet(u);
  const Vec3 v = j.d1.normalized();
  if (!y) return Line{j.p, v};
  if ((*y - j.p).norm() <= 1e-12 * std::max(j.p.norm(), 1.0)) {
    throw KnotError(ErrorCode::PointOnCurvePoint, "y coincides with f(u)");
  }
  return oriented_tangent_circle(j.p, v, *y);
}

Circle osculating_circle(const ClosedCurve& curve, double u) {
  const Jet j = curve.jet(u);
  const auto fr = frenet_from_jet(j, kappa_threshold(curve), u);
  return Circle{j.p + fr.e2 / fr.kappa, 1.0 / fr.kappa, fr.e3};
}

SphereOrPlane osculating_sphere(const ClosedCurve& curve, double u, const PointOrInfinity& p) {
  const Jet j = curve.jet(u);
  const double threshold = kappa_threshold(curve);
  if (!p) {
    const auto fr = frenet_from_jet(j, threshold, u);
    return Plane{j.p, fr.e3};
  }
  const auto s = sphere_parts(j, *p, threshold);
  const Vec3& e3 = s.frame.e3;
  if (std::abs(s.D) < 1e-10 * (s.c - *p).norm()) {
    // P on the osculating plane: the plane itself, oriented so the region
    // bounded by the circle away from P induces the circle's orientation.
    return Plane{j.p, s.Q > 0.0 ? Vec3(-e3) : e3};
  }
  const double lambda = s.Q / (2.0 * s.D);
  return Sphere{s.c + lambda * e3, std::hypot(s.R, lambda), s.D > 0.0 ? 1 : -1};
}

NormalPair sphere_normals_from_jet(const Jet& j, const PointOrInfinity& p, double threshold) {
  NormalPair out;
  out.rotation_plane_normal = j.d1.normalized();
  if (!p) {
    out.n_at_x = frenet_from_jet(j, threshold).e3;
    return out;
  }
  const auto s = sphere_parts(j, *p, threshold);
  // Closed forms of o (x - m) / |x - m| and o (P - m) / |P - m| with m the
  // sphere center and o its orientation, scaled by 2|D| so they stay finite
  // through the sphere-to-plane transition D -> 0.
  const double norm = std::hypot(2.0 * s.D * s.R, s.Q);
  out.n_at_x = -(2.0 * s.D * s.R * s.frame.e2 + s.Q * s.frame.e3) / norm;
  out.n_at_p = (2.0 * s.D * (*p - s.c) - s.Q * s.frame.e3) / norm;
  return out;
}

NormalPair sphere_normals(const ClosedCurve& curve, double u, const PointOrInfinity& p) {
  return sphere_normals_from_jet(curve.jet(u), p, kappa_threshold(curve));
}

NormalField sphere_normal_field(const ClosedCurve& curve, const PointOrInfinity& p, std::size_t n) {
  const auto g = curve.grid(n);
  const double threshold = kappa_threshold(curve);
  NormalField field;
  field.samples.resize(n);
  std::vector<Vec3> normals(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = field.samples[i];
    s.u = curve.parameter(i, n);
    s.position = g[i].p;
    s.speed = g[i].d1.norm();
    s.tangent = g[i].d1 / s.speed;
    NormalPair pair;
    try {
      pair = sphere_normals_from_jet(g[i], p, threshold);
    } catch (const KnotError& e) {
      std::ostringstream msg;
      msg << std::string(e.what()).substr(to_string(e.code()).size() + 2) << " (u=" << s.u << ")";
      throw KnotError(e.code(), msg.str());
    }
    s.n = pair.n_at_x;
    s.n_at_p = pair.n_at_p;
    if (p) {
      const auto fr = frenet_from_jet(g[i], threshold);
      const Vec3 c = g[i].p + fr.e2 / fr.kappa;
      s.degenerate = std::abs(fr.e3.dot(c - *p)) < 1e-10 * (c - *p).norm();
      if (s.degenerate) ++field.degenerate;
    }
    if (i > 0 && s.n.dot(field.samples[i - 1].n) < 0.0) {
      s.n = -s.n;
      if (s.n_at_p) s.n_at_p = -*s.n_at_p;
      ++field.flips;
    }
    normals[i] = s.n;
  }
  if (n > 1 && field.samples.back().n.dot(field.samples.front().n) < 0.0) {
    throw KnotError(ErrorCode::ToleranceNotMet, "sphere normal field does not close up after one period");
  }
  const auto dn = periodic_derivative(std::span<const Vec3>(normals));
  const double chain = 2.0 * M_PI / curve.period();
  for (std::size_t i = 0; i < n; ++i) field.samples[i].dn_ds = dn[i] * chain / field.samples[i].speed;
  return field;
}

double default_tube_delta(const ClosedCurve& curve) { return 1e-3 * curve.length(); }

TubeReport curvature_tube_distance(const ClosedCurve& curve, const Vec3& p, std::size_t n, double delta) {
  if (n == 0) throw KnotError(ErrorCode::InvalidParams, "tube scan needs n > 0");
  TubeReport r;
  r.delta = delta < 0.0 ? default_tube_delta(curve) : delta;
  r.samples = n;
  const auto hit = tube_scan(curve, p, n, false);
  r.distance = hit.distance;
  r.argmin = hit.argmin;
  r.admissible = r.distance > r.delta;
  return r;
}

InvariantReport angle_variation(const ClosedCurve& curve, const PointOrInfinity& p, const QuadratureConfig& q,
                                double delta) {
  q.validate();
  if (p) {
    const auto tube = curvature_tube_distance(curve, *p, q.n, delta);
    if (!tube.admissible) {
      std::ostringstream msg;
      msg << "P " << fmt_vec(*p) << " is " << tube.distance << " from the curvature tube (need > " << tube.delta << ")";
      throw KnotError(ErrorCode::TubeViolation, msg.str());
    }
  }
  auto pass = [&](std::size_t n) {
    const auto field = sphere_normal_field(curve, p, n);
    const auto w = periodic_weights(n, curve.period(), q.rule);
    CompensatedSum s;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = field.samples[i];
      s.add(w[i] * x.speed * x.tangent.dot(x.n.cross(x.dn_ds)));
    }
    return s.value();
  };
  return refine(q, pass, "angle_variation");
}

Vec3 find_admissible_center(const ClosedCurve& curve, int trials, double delta, std::uint64_t seed) {
  if (trials < 1) throw KnotError(ErrorCode::InvalidParams, "trials must be >= 1");
  const auto found = search_center(curve, trials, delta, seed, curve.diameter(), 1.25);
  if (!found) {
    std::ostringstream msg;
    msg << "no center farther than " << delta << " from the curvature tube in " << trials << " trials";
    throw KnotError(ErrorCode::SearchExhausted, msg.str());
  }
  return *found;
}

ClosedCurve regularize_curvature(const ClosedCurve& curve, double distance_factor, std::uint64_t seed) {
  if (!(distance_factor > 0.0)) throw KnotError(ErrorCode::InvalidParams, "distance_factor must be positive");
  const auto found =
      search_center(curve, 64, default_tube_delta(curve), seed, distance_factor * curve.diameter(), 1.0);
  if (!found) throw KnotError(ErrorCode::SearchExhausted, "no admissible far center for curvature regularization");
  const Vec3 p = *found;
  Vec3 nearest = curve.position(0.0);
  for (const auto& x : curve.positions(4096))
    if ((x - p).norm() < (nearest - p).norm()) nearest = x;
  const Inversion inv{p, (nearest - p).norm()};
  // Near the curve the inversion sphere is close to its tangent plane at the
  // nearest point, and the inversion close to the reflection in that plane.
  return mirror_curve(invert_curve(inv, curve), nearest, (p - nearest).normalized());
}

double sphere_pencil_residual(const ClosedCurve& curve, double u, double h, const Vec3& p) {
  const auto s0 = osculating_sphere(curve, u, p);
  const auto s1 = osculating_sphere(curve, u + h, p);
  const auto target_any = tangent_circle(curve, u, p);
  if (!std::holds_alternative<Circle>(target_any)) {
    throw KnotError(ErrorCode::DegenerateSphere, "P lies on the tangent line; the limit circle is a line");
  }
  const Circle target = std::get<Circle>(target_any);

  Circle meet;
  if (std::holds_alternative<Sphere>(s0) && std::holds_alternative<Sphere>(s1)) {
    const auto& a = std::get<Sphere>(s0);
    const auto& b = std::get<Sphere>(s1);
    const Vec3 axis = b.center - a.center;
    const double d = axis.norm();
    const double scale = a.radius + b.radius;
    if (d <= 1e-10 * scale) {
      if (std::abs(a.radius - b.radius) <= 1e-10 * scale) return 0.0;
      throw KnotError(ErrorCode::NonIntersecting, "concentric osculating spheres");
    }
    const double along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    const double rho2 = a.radius * a.radius - along * along;
    if (!(rho2 > 0.0)) throw KnotError(ErrorCode::NonIntersecting, "osculating spheres do not intersect");
    meet = Circle{a.center + along * axis / d, std::sqrt(rho2), axis / d};
  } else if (std::holds_alternative<Plane>(s0) && std::holds_alternative<Plane>(s1)) {
    throw KnotError(ErrorCode::NonIntersecting, "both osculating spheres degenerate to planes");
  } else {
    const auto& sphere = std::holds_alternative<Sphere>(s0) ? std::get<Sphere>(s0) : std::get<Sphere>(s1);
    const auto& plane = std::holds_alternative<Plane>(s0) ? std::get<Plane>(s0) : std::get<Plane>(s1);
    const double t = (sphere.center - plane.point).dot(plane.normal);
    const double rho2 = sphere.radius * sphere.radius - t * t;
    if (!(rho2 > 0.0)) throw KnotError(ErrorCode::NonIntersecting, "osculating sphere misses the osculating plane");
    meet = Circle{sphere.center - t * plane.normal, std::sqrt(rho2), plane.normal};
  }

  constexpr int kSamples = 64;
  double worst = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const double theta = 2.0 * M_PI * k / kSamples;
    worst = std::max(worst, distance_to_circle(circle_point(meet, theta), target));
    worst = std::max(worst, distance_to_circle(circle_point(target, theta), meet));
  }
  return worst;
}

}  // namespace knotinv
