#pragma once

#include "knotinv/curve.hpp"
#include "knotinv/quadrature.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace knotinv {

/// Inversion x -> P + r^2 (x - P) / |x - P|^2 in the sphere of center P, radius r.
struct Inversion {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
};

/// Throws CenterHit when x is within 1e-12 r of the center.
Vec3 invert_point(const Inversion& inv, const Vec3& x);

/// |d I(x)| / |dx| = r^2 / |x - P|^2.
double inversion_stretch(const Inversion& inv, const Vec3& x);

/// Image curve with derivatives from the chain rule through the inversion.
class InvertedCurve final : public CurveEvaluator {
 public:
  InvertedCurve(ClosedCurve base, Inversion inv);

  Jet jet(double u) const override;
  double period() const override { return base_.period(); }
  std::vector<Jet> grid(std::size_t n) const override;

 private:
  Jet map(const Jet& j) const;
  ClosedCurve base_;
  Inversion inv_;
};

/// Throws CenterOnCurve when the center lies within 1e-6 r of the curve.
ClosedCurve invert_curve(const Inversion& inv, const ClosedCurve& curve);

/// Circle traversed counterclockwise about `axis` (right-hand rule).
struct Circle {
  Vec3 center;
  double radius = 0.0;
  Vec3 axis;
};

/// Circle through infinity, traversed along `direction`.
struct Line {
  Vec3 point;
  Vec3 direction;
};

using Circle3 = std::variant<Circle, Line>;

double distance_to_circle(const Vec3& p, const Circle& c);
double distance_to_line(const Vec3& p, const Line& l);

/// Point at angle `theta` on the circle, measured from an arbitrary fixed
/// in-plane direction, counterclockwise about the axis.
Vec3 circle_point(const Circle& c, double theta);

/// Oriented circle x -> y -> z, or the line x -> y when z is infinity.
Circle3 circle_through(const Vec3& x, const Vec3& y, const PointOrInfinity& z);

/// Circle (or line) tangent to the curve at f(u), through y, oriented by f'(u).
Circle3 tangent_circle(const ClosedCurve& curve, double u, const PointOrInfinity& y);

/// Center f + e2 / kappa, radius 1 / kappa, axis e3.
Circle osculating_circle(const ClosedCurve& curve, double u);

/// orientation = +1 when the positive normal points away from the center.
struct Sphere {
  Vec3 center;
  double radius = 0.0;
  int orientation = 1;
};

struct Plane {
  Vec3 point;
  Vec3 normal;  ///< positive unit normal
};

using SphereOrPlane = std::variant<Sphere, Plane>;

/// The oriented sphere through the osculating circle at u and P. Its
/// orientation makes the cap bounded by the osculating circle that avoids P
/// induce the circle's own orientation on its boundary.
SphereOrPlane osculating_sphere(const ClosedCurve& curve, double u, const PointOrInfinity& p);

struct NormalPair {
  Vec3 n_at_x;                 ///< positive unit normal of the sphere at f(u)
  std::optional<Vec3> n_at_p;  ///< positive unit normal at P (none for P at infinity)
  Vec3 rotation_plane_normal;  ///< unit tangent v(u)
};

NormalPair sphere_normals(const ClosedCurve& curve, double u, const PointOrInfinity& p);

/// Same as sphere_normals, from a precomputed jet. Throws CurvatureVanishes or
/// DegenerateSphere.
NormalPair sphere_normals_from_jet(const Jet& jet, const PointOrInfinity& p, double kappa_threshold);

struct NormalSample {
  double u = 0.0;
  double speed = 0.0;  ///< |f'(u)|
  Vec3 position;
  Vec3 tangent;        ///< unit tangent v
  Vec3 n;              ///< sign-aligned normal of the osculating sphere at f(u)
  Vec3 dn_ds;          ///< spectral derivative of n along arc length
  std::optional<Vec3> n_at_p;
  bool degenerate = false;  ///< P numerically on the osculating plane
};

struct NormalField {
  std::vector<NormalSample> samples;
  std::size_t degenerate = 0;
  std::size_t flips = 0;  ///< sign corrections applied while aligning n
};

/// n(u) of the osculating spheres through P on n uniform parameter samples.
NormalField sphere_normal_field(const ClosedCurve& curve, const PointOrInfinity& p, std::size_t n);

struct TubeReport {
  double distance = 0.0;  ///< min distance from P to the sampled osculating circles
  double argmin = 0.0;    ///< parameter of the closest circle
  bool admissible = false;
  double delta = 0.0;
  std::size_t samples = 0;
};

/// Default admissibility margin: 1e-3 times the curve length.
double default_tube_delta(const ClosedCurve& curve);

/// delta < 0 selects default_tube_delta(curve).
TubeReport curvature_tube_distance(const ClosedCurve& curve, const Vec3& p, std::size_t n, double delta = -1.0);

/// The integral of v . (n x dn/ds) over the curve, n being the positive unit
/// normal of the osculating sphere through P. Throws TubeViolation when P is
/// within delta of the curvature tube (delta < 0: default).
InvariantReport angle_variation(const ClosedCurve& curve, const PointOrInfinity& p, const QuadratureConfig& q = {},
                                double delta = -1.0);

/// Seeded search over spheres of growing radius around the centroid, starting
/// at the curve diameter. Returns the first candidate farther than delta from
/// the curvature tube.
Vec3 find_admissible_center(const ClosedCurve& curve, int trials, double delta, std::uint64_t seed = 0);

/// Inverts in a sphere centered distance_factor * diameter from the curve with
/// radius equal to the distance to the curve, then reflects through the plane
/// that the inversion sphere approximates near the curve. The result has
/// nowhere vanishing curvature and approaches the input as the factor grows.
ClosedCurve regularize_curvature(const ClosedCurve& curve, double distance_factor, std::uint64_t seed = 0);

/// Hausdorff distance (64 samples per circle) between the intersection of the
/// osculating spheres through P at u and u + h and the circle through P
/// tangent at u. Zero when both spheres coincide.
double sphere_pencil_residual(const ClosedCurve& curve, double u, double h, const Vec3& p);

}  // namespace knotinv
