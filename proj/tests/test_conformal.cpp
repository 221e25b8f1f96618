#include "expect_error.hpp"
#include "knotinv/conformal.hpp"
#include "knotinv/frenet.hpp"
#include "knotinv/invariants.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace knotinv;

namespace {

const ClosedCurve& trefoil() {
  static const ClosedCurve k = make_preset("trefoil");
  return k;
}

const Vec3& trefoil_center(int which) {
  static const std::vector<Vec3> centers = [] {
    std::vector<Vec3> out;
    for (std::uint64_t s = 0; s < 3; ++s) out.push_back(find_admissible_center(trefoil(), 64, default_tube_delta(trefoil()), s));
    return out;
  }();
  return centers[which];
}

Inversion inversion_for(const Vec3& p) { return {p, (p - trefoil().centroid()).norm()}; }

}  // namespace

TEST(InvertPoint, KnownImages) {
  EXPECT_LT((invert_point({Vec3::Zero(), 1}, Vec3(2, 0, 0)) - Vec3(0.5, 0, 0)).norm(), 1e-15);
  EXPECT_LT((invert_point({Vec3::Zero(), 1}, Vec3(1, 0, 0)) - Vec3(1, 0, 0)).norm(), 1e-15);
  EXPECT_LT((invert_point({Vec3(1, 1, 1), 2}, Vec3(5, 1, 1)) - Vec3(2, 1, 1)).norm(), 1e-15);
  EXPECT_KNOT_ERROR(invert_point({Vec3(1, 1, 1), 2}, Vec3(1, 1, 1)), ErrorCode::CenterHit);
  EXPECT_DOUBLE_EQ(inversion_stretch({Vec3::Zero(), 2}, Vec3(4, 0, 0)), 0.25);
}

TEST(InvertPoint, IsAnInvolution) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-5, 5);
  const Inversion inv{Vec3(0.3, -1, 2), 1.7};
  for (int i = 0; i < 1000; ++i) {
    const Vec3 x(U(rng), U(rng), U(rng));
    if ((x - inv.center).norm() < 1e-3) continue;
    EXPECT_LT((invert_point(inv, invert_point(inv, x)) - x).norm(), 1e-9 * x.norm());
  }
}

TEST(InvertCurve, CircleMapsToCircle) {
  const auto img = invert_curve({Vec3(3, 0, 0), 1}, make_preset("circle"));
  const auto pts = img.positions(16);
  const auto cc = oracle::circumcircle(pts[0], pts[5], pts[11]);
  for (const auto& p : pts) {
    EXPECT_LT(std::abs((p - cc.center).norm() - cc.radius), 1e-7);
    EXPECT_NEAR(p.z(), 0.0, 1e-15);
  }
  // Images of (1,0,0) and (-1,0,0) are 3 - 1/2 and 3 - 1/4 on the x-axis.
  EXPECT_NEAR(cc.radius, 0.125, 1e-12);
  EXPECT_LT((cc.center - Vec3(2.625, 0, 0)).norm(), 1e-12);
}

TEST(InvertCurve, ChainRuleMatchesFiniteDifferences) {
  const Inversion inv{Vec3(4, 1, -2), 3};
  const auto img = invert_curve(inv, trefoil());
  auto f = [&](double u) { return invert_point(inv, trefoil().position(u)); };
  for (double u : {0.2, 2.9}) {
    const auto d = oracle::derivatives_fd6(f, u, 1e-2);
    const auto j = img.jet(u);
    EXPECT_LT((j.p - f(u)).norm(), 1e-14);
    EXPECT_LT((j.d1 - d[0]).norm(), 1e-7 * j.d1.norm());
    EXPECT_LT((j.d2 - d[1]).norm(), 1e-6 * std::max(1.0, j.d2.norm()));
    EXPECT_LT((j.d3 - d[2]).norm(), 1e-4 * std::max(1.0, j.d3.norm()));
  }
}

TEST(InvertCurve, CenterOnTheCurveIsRejected) {
  EXPECT_KNOT_ERROR(invert_curve({Vec3(1, 0, 0), 1}, make_preset("circle")), ErrorCode::CenterOnCurve);
}

TEST(Circles, CircleThroughThreePoints) {
  const auto c = std::get<Circle>(circle_through(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(-1, 0, 0)));
  EXPECT_LT(c.center.norm(), 1e-15);
  EXPECT_NEAR(c.radius, 1.0, 1e-15);
  EXPECT_LT((c.axis - Vec3(0, 0, 1)).norm(), 1e-15);
  const auto reversed = std::get<Circle>(circle_through(Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(1, 0, 0)));
  EXPECT_LT((reversed.axis - Vec3(0, 0, -1)).norm(), 1e-15);
}

TEST(Circles, ThroughInfinityIsALine) {
  const auto l = std::get<Line>(circle_through(Vec3::Zero(), Vec3(1, 0, 0), kInfinity));
  EXPECT_LT(l.point.norm(), 1e-15);
  EXPECT_LT((l.direction - Vec3(1, 0, 0)).norm(), 1e-15);
}

TEST(Circles, DegenerateTriples) {
  EXPECT_KNOT_ERROR(circle_through(Vec3::Zero(), Vec3(1, 0, 0), Vec3(2, 0, 0)), ErrorCode::CollinearPoints);
  EXPECT_KNOT_ERROR(circle_through(Vec3::Zero(), Vec3::Zero(), Vec3(2, 0, 0)), ErrorCode::CoincidentPoints);
  EXPECT_KNOT_ERROR(circle_through(Vec3::Zero(), Vec3::Zero(), kInfinity), ErrorCode::CoincidentPoints);
}

TEST(Circles, RandomTriplesMatchCircumcircleOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int i = 0; i < 50; ++i) {
    const Vec3 a(U(rng), U(rng), U(rng)), b(U(rng), U(rng), U(rng)), c(U(rng), U(rng), U(rng));
    const auto got = std::get<Circle>(circle_through(a, b, c));
    const auto want = oracle::circumcircle(a, b, c);
    EXPECT_LT((got.center - want.center).norm(), 1e-9 * (1 + want.radius));
    EXPECT_NEAR(got.radius, want.radius, 1e-9 * (1 + want.radius));
  }
}

TEST(Circles, PointToCircleDistance) {
  const Circle unit{Vec3::Zero(), 1.0, Vec3::UnitZ()};
  EXPECT_DOUBLE_EQ(distance_to_circle(Vec3::Zero(), unit), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_circle(Vec3(1, 0, 0.5), unit), 0.5);
  EXPECT_NEAR(distance_to_circle(Vec3(3, 4, 0), unit), 4.0, 1e-15);
  EXPECT_NEAR(distance_to_circle(circle_point(unit, 1.1), unit), 0.0, 1e-15);
}

TEST(TangentCircle, AntipodeOfUnitCircle) {
  const auto c = std::get<Circle>(tangent_circle(make_preset("circle"), 0.0, Vec3(-1, 0, 0)));
  EXPECT_LT(c.center.norm(), 1e-15);
  EXPECT_NEAR(c.radius, 1.0, 1e-15);
  EXPECT_LT((c.axis - Vec3::UnitZ()).norm(), 1e-15);
}

TEST(TangentCircle, InfinityGivesTangentLine) {
  const auto l = std::get<Line>(tangent_circle(trefoil(), 0.5, kInfinity));
  EXPECT_LT((l.point - trefoil().position(0.5)).norm(), 1e-15);
  EXPECT_LT((l.direction - trefoil().jet(0.5).d1.normalized()).norm(), 1e-15);
  EXPECT_KNOT_ERROR(tangent_circle(trefoil(), 0.5, trefoil().position(0.5)), ErrorCode::PointOnCurvePoint);
}

TEST(TangentCircle, TrefoilThroughFarPoint) {
  const Vec3 y(5, 5, 5);
  const auto c = std::get<Circle>(tangent_circle(trefoil(), 0.0, y));
  const Vec3 x = trefoil().position(0.0);
  const Vec3 v = trefoil().jet(0.0).d1.normalized();
  EXPECT_LT(distance_to_circle(x, c), 1e-9);
  EXPECT_LT(distance_to_circle(y, c), 1e-9);
  EXPECT_LT(std::abs((c.center - x).dot(v)), 1e-9);
  // Orientation: the circle's direction at x is v.
  EXPECT_GT(c.axis.cross(x - c.center).dot(v), 0.0);
}

TEST(OsculatingCircle, KnownCases) {
  const auto big = osculating_circle(make_preset("circle", {{"R", 2}}), 0.8);
  EXPECT_LT(big.center.norm(), 1e-14);
  EXPECT_NEAR(big.radius, 2.0, 1e-14);
  const auto e = osculating_circle(make_preset("ellipse"), 0.0);
  EXPECT_LT((e.center - Vec3(1.5, 0, 0)).norm(), 1e-14);
  EXPECT_NEAR(e.radius, 0.5, 1e-14);
}

TEST(OsculatingCircle, LimitOfCircumcircles) {
  const auto c = osculating_circle(trefoil(), 0.0);
  double previous = 1e300;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    const auto cc = oracle::circumcircle(trefoil().position(-h), trefoil().position(0), trefoil().position(h));
    const double d = (cc.center - c.center).norm() + std::abs(cc.radius - c.radius);
    EXPECT_LT(d, previous);
    EXPECT_LT(d, 10 * h);
    previous = d;
  }
}

TEST(OsculatingSphere, UnitCircleAndPole) {
  const auto s = std::get<Sphere>(osculating_sphere(make_preset("circle"), 0.3, Vec3(0, 0, 1)));
  EXPECT_LT(s.center.norm(), 1e-15);
  EXPECT_NEAR(s.radius, 1.0, 1e-15);
}

TEST(OsculatingSphere, InfinityGivesOsculatingPlane) {
  const auto p = std::get<Plane>(osculating_sphere(trefoil(), 1.0, kInfinity));
  EXPECT_LT((p.normal - frenet_at(trefoil(), 1.0).e3).norm(), 1e-15);
}

TEST(OsculatingSphere, ContainsCircleAndPoint) {
  const Vec3 P(3, -1, 2);
  const auto s = std::get<Sphere>(osculating_sphere(trefoil(), 0.0, P));
  const auto c = osculating_circle(trefoil(), 0.0);
  EXPECT_LT(std::abs((P - s.center).norm() - s.radius), 1e-8);
  EXPECT_LT(std::abs((trefoil().position(0) - s.center).norm() - s.radius), 1e-8);
  for (int k = 0; k < 8; ++k) EXPECT_LT(std::abs((circle_point(c, k * M_PI / 4) - s.center).norm() - s.radius), 1e-8);
  EXPECT_KNOT_ERROR(osculating_sphere(trefoil(), 0.0, circle_point(c, 1.0)), ErrorCode::DegenerateSphere);
}

TEST(SphereNormals, InfinityGivesBinormal) {
  for (const auto& name : {"trefoil", "ellipse", "twisted_unknot"}) {
    const auto c = make_preset(name);
    for (double u : {0.4, 2.2}) EXPECT_LT((sphere_normals(c, u, kInfinity).n_at_x - frenet_at(c, u).e3).norm(), 1e-9);
  }
}

TEST(SphereNormals, UnitCircleOrientationFromDiscSide) {
  // P above the oriented plane; the cap avoiding P is the lower hemisphere,
  // whose boundary orientation matches the circle when the normal points inward.
  const auto n = sphere_normals(make_preset("circle"), 0.0, Vec3(0, 0, 1));
  EXPECT_LT((n.n_at_x - Vec3(-1, 0, 0)).norm(), 1e-15);
  EXPECT_LT((*n.n_at_p - Vec3(0, 0, -1)).norm(), 1e-15);
  const auto below = sphere_normals(make_preset("circle"), 0.0, Vec3(0, 0, -1));
  EXPECT_LT((below.n_at_x - Vec3(1, 0, 0)).norm(), 1e-15);
}

TEST(SphereNormals, NormalsAreSphereNormals) {
  const Vec3 P(3, -1, 2);
  const auto s = std::get<Sphere>(osculating_sphere(trefoil(), 0.7, P));
  const auto n = sphere_normals(trefoil(), 0.7, P);
  const Vec3 radial = (trefoil().position(0.7) - s.center) / s.radius;
  EXPECT_LT((n.n_at_x - s.orientation * radial).norm(), 1e-9);
  EXPECT_LT((*n.n_at_p - s.orientation * (P - s.center) / s.radius).norm(), 1e-9);
}

TEST(SphereNormals, TangentToTheCurveForRandomTriples) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-6, 6), W(0, 2 * M_PI);
  const std::vector<ClosedCurve> curves{trefoil(), make_preset("torus_knot", {{"q", 5}}), make_preset("twisted_unknot")};
  for (int i = 0; i < 100; ++i) {
    const auto& c = curves[i % 3];
    const double u = W(rng);
    const auto n = sphere_normals(c, u, Vec3(U(rng), U(rng), U(rng)));
    EXPECT_NEAR(n.n_at_x.norm(), 1.0, 1e-10);
    EXPECT_NEAR(n.n_at_p->norm(), 1.0, 1e-10);
    EXPECT_NEAR(n.n_at_x.dot(c.jet(u).d1.normalized()), 0.0, 1e-8);
  }
}

TEST(TubeDistance, UnitCircle) {
  const auto c = make_preset("circle");
  EXPECT_NEAR(curvature_tube_distance(c, Vec3::Zero(), 64).distance, 1.0, 1e-14);
  EXPECT_NEAR(curvature_tube_distance(c, Vec3(1, 0, 0.5), 64).distance, 0.5, 1e-14);
  EXPECT_KNOT_ERROR(curvature_tube_distance(make_preset("twisted_unknot", {{"amplitude", 0.2}}), Vec3(9, 9, 9), 64),
                    ErrorCode::CurvatureVanishes);
}

TEST(TubeDistance, StableUnderGridDoubling) {
  const Vec3 P = trefoil_center(0);
  const auto a = curvature_tube_distance(trefoil(), P, 512);
  const auto b = curvature_tube_distance(trefoil(), P, 1024);
  EXPECT_TRUE(a.admissible);
  EXPECT_NEAR(a.distance, b.distance, 1e-6);
}

TEST(FindAdmissibleCenter, Basics) {
  const auto c = make_preset("circle");
  const Vec3 p = find_admissible_center(c, 16, 0.1);
  EXPECT_GT(curvature_tube_distance(c, p, 1024).distance, 0.1);
  EXPECT_EQ(p, find_admissible_center(c, 16, 0.1));
  const double delta = 0.05 * trefoil().length();
  const Vec3 q = find_admissible_center(trefoil(), 256, delta, 1);
  EXPECT_TRUE(curvature_tube_distance(trefoil(), q, 1024, delta).admissible);
  EXPECT_KNOT_ERROR(find_admissible_center(c, 32, 1e12), ErrorCode::SearchExhausted);
}

TEST(NormalField, RotatesInTheNormalPlane) {
  // dn/ds at the moving point splits into the sphere's own shape term
  // (sign / radius) v and the rotation of the sphere, which is normal to v.
  const Vec3 P = trefoil_center(0);
  const auto field = sphere_normal_field(trefoil(), P, 4096);
  double rotation = 0, n_dot = 0;
  for (const auto& s : field.samples) {
    const auto sphere = std::get<Sphere>(osculating_sphere(trefoil(), s.u, P));
    const Vec3 radial = (s.position - sphere.center) / sphere.radius;
    const Vec3 shape = (s.n.dot(radial) > 0 ? 1.0 : -1.0) / sphere.radius * s.tangent;
    rotation = std::max(rotation, std::abs(s.tangent.dot(s.dn_ds - shape)));
    n_dot = std::max(n_dot, std::abs(s.n.dot(s.dn_ds)));
  }
  EXPECT_LT(rotation, 1e-5);
  EXPECT_LT(n_dot, 1e-6);
}

TEST(NormalField, ImageBinormalIsMinusNormalAtCenter) {
  const Vec3 P = trefoil_center(1);
  const auto img = invert_curve(inversion_for(P), trefoil());
  const double thr = kappa_threshold(img);
  for (int i = 0; i < 512; ++i) {
    const double u = trefoil().parameter(i, 512);
    const Vec3 e3 = frenet_from_jet(img.jet(u), thr, u).e3;
    EXPECT_LT((e3 + *sphere_normals(trefoil(), u, P).n_at_p).norm(), 1e-5);
  }
}

TEST(NormalField, ImageTorsionIsMinusAngularVelocity) {
  const Vec3 P = trefoil_center(2);
  const auto inv = inversion_for(P);
  const auto img = invert_curve(inv, trefoil());
  const auto field = sphere_normal_field(trefoil(), P, 4096);
  const double thr = kappa_threshold(img);
  double worst = 0;
  std::size_t checked = 0;
  for (const auto& s : field.samples) {
    if (s.degenerate) continue;
    const double tau = frenet_from_jet(img.jet(s.u), thr, s.u).tau;
    worst = std::max(worst, std::abs(tau * inversion_stretch(inv, s.position) + s.tangent.dot(s.n.cross(s.dn_ds))));
    ++checked;
  }
  EXPECT_GT(checked, 4000u);
  EXPECT_LT(worst, 1e-4);
}

TEST(AngleVariation, PlanarCurveAtInfinityIsZero) {
  EXPECT_NEAR(angle_variation(make_preset("ellipse"), kInfinity).value, 0.0, 1e-12);
}

TEST(AngleVariation, InfinityGivesTwoPiTotalTorsion) {
  EXPECT_NEAR(angle_variation(trefoil(), kInfinity).value, 2 * M_PI * total_torsion(trefoil()).value, 1e-9);
}

TEST(AngleVariation, EqualsMinusTorsionIntegralOfImage) {
  const Vec3 P = trefoil_center(0);
  const double image = 2 * M_PI * total_torsion(invert_curve(inversion_for(P), trefoil())).value;
  EXPECT_NEAR(angle_variation(trefoil(), P).value, -image, 1e-3);
}

TEST(AngleVariation, TwoCentersDifferByMultipleOfTwoPi) {
  const double a = angle_variation(trefoil(), trefoil_center(0)).value;
  const double b = angle_variation(trefoil(), trefoil_center(1)).value;
  const double turns = (a - b) / (2 * M_PI);
  EXPECT_LT(std::abs(turns - std::round(turns)), 1e-3 / (2 * M_PI));
}

TEST(AngleVariation, RejectsCentersInsideTheTube) {
  const auto c = osculating_circle(trefoil(), 1.0);
  EXPECT_KNOT_ERROR(angle_variation(trefoil(), circle_point(c, 2.0) + 1e-4 * c.axis), ErrorCode::TubeViolation);
}

TEST(TotalTorsion, InversionNegatesModuloIntegers) {
  for (int i = 0; i < 3; ++i) {
    const double s = total_torsion(invert_curve(inversion_for(trefoil_center(i)), trefoil())).value +
                     total_torsion(trefoil()).value;
    EXPECT_LT(std::abs(s - std::round(s)), 1e-3);
  }
}

TEST(RegularizeCurvature, RemovesInflectionsAndConverges) {
  const auto flat = make_preset("twisted_unknot", {{"amplitude", 0.2}});
  ASSERT_FALSE(nowhere_vanishing_curvature(flat));
  double previous = 1e300;
  for (double factor : {10.0, 100.0, 1000.0}) {
    const auto r = regularize_curvature(flat, factor);
    EXPECT_TRUE(nowhere_vanishing_curvature(r)) << factor;
    double dev = 0;
    for (int i = 0; i < 512; ++i) {
      const double u = flat.parameter(i, 512);
      dev = std::max(dev, (r.position(u) - flat.position(u)).norm());
    }
    EXPECT_LT(dev, previous);
    previous = dev;
    if (factor == 1000.0) EXPECT_NEAR(writhe(r).value, writhe(flat).value, 1e-3);
  }
}

TEST(SpherePencil, ConvergesAtFirstOrder) {
  const Vec3 P = trefoil_center(0);
  std::vector<double> r;
  for (double h : {1e-2, 5e-3, 2.5e-3}) r.push_back(sphere_pencil_residual(trefoil(), 0.0, h, P));
  EXPECT_GT(r[0], r[1]);
  EXPECT_GT(r[1], r[2]);
  EXPECT_GE(r[1] / r[2], 1.8);
}

TEST(SpherePencil, ConstantPencilOfACircle) {
  EXPECT_EQ(sphere_pencil_residual(make_preset("circle"), 0.3, 1e-2, Vec3(0.3, 2, 1)), 0.0);
}
