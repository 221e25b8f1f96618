#include "knotinv/report_io.hpp"

#include <charconv>
#include <cmath>

namespace knotinv {

namespace {

void write_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_double(v);
    first = false;
  }
  out << '\n';
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const Vec3& v) { return nlohmann::json::array({v.x(), v.y(), v.z()}); }

nlohmann::json to_json(const InvariantReport& r, const std::string& invariant) {
  return {{"invariant", invariant}, {"value", r.value}, {"estimated_error", r.estimated_error}, {"n_used", r.n_used}};
}

nlohmann::json to_json(const LinkingResult& r) {
  return {{"invariant", "linking_number"},
          {"value", r.lk},
          {"integral", r.integral.value},
          {"estimated_error", r.integral.estimated_error},
          {"residual", r.residual},
          {"n_used", r.integral.n_used},
          {"inner_n", r.inner_n}};
}

nlohmann::json to_json(const CalugareanuReport& r) {
  return {{"lk", r.lk},
          {"wr", r.wr},
          {"tw", r.tw},
          {"residual", r.residual},
          {"lk_residual", r.lk_residual},
          {"writhe", to_json(r.writhe, "writhe")},
          {"twist", to_json(r.twist, "twist")}};
}

nlohmann::json to_json(const TubeReport& r) {
  return {{"distance", r.distance},
          {"argmin", r.argmin},
          {"admissible", r.admissible},
          {"delta", r.delta},
          {"samples", r.samples}};
}

nlohmann::json to_json(const CycleArea& r) {
  return {{"k", r.k},
          {"residual", r.residual},
          {"chord_area", to_json(r.chord_area, "chord_area")},
          {"swept_area", to_json(r.swept, "swept_area")}};
}

void write_profile_csv(std::ostream& out, const CurvatureProfile& profile) {
  out << "u,s,kappa,tau\n";
  for (std::size_t i = 0; i < profile.u.size(); ++i) {
    write_row(out, {profile.u[i], profile.s[i], profile.kappa[i], profile.tau[i]});
  }
}

void write_curve_csv(std::ostream& out, const ClosedCurve& curve, std::size_t n) {
  out << "u,x,y,z\n";
  const auto pts = curve.positions(n);
  for (std::size_t i = 0; i < n; ++i) {
    write_row(out, {curve.parameter(i, n), pts[i].x(), pts[i].y(), pts[i].z()});
  }
}

void write_indicatrix_csv(std::ostream& out, const IndicatrixCurve& indicatrix) {
  out << "s,x,y,z\n";
  for (const auto& s : indicatrix.samples) write_row(out, {s.s, s.point.x(), s.point.y(), s.point.z()});
}

void write_tube_csv(std::ostream& out, const ClosedCurve& curve, std::size_t n, const PointOrInfinity& p) {
  out << "u,cx,cy,cz,radius,ax,ay,az" << (p ? ",distance\n" : "\n");
  for (std::size_t i = 0; i < n; ++i) {
    const double u = curve.parameter(i, n);
    const auto c = osculating_circle(curve, u);
    out << format_double(u);
    for (double v : {c.center.x(), c.center.y(), c.center.z(), c.radius, c.axis.x(), c.axis.y(), c.axis.z()}) {
      out << ',' << format_double(v);
    }
    if (p) out << ',' << format_double(distance_to_circle(*p, c));
    out << '\n';
  }
}

}  // namespace knotinv
