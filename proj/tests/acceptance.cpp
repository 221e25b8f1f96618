#include "cli.hpp"
#include "knotinv/conformal.hpp"
#include "knotinv/framing.hpp"
#include "knotinv/frenet.hpp"
#include "knotinv/indicatrix.hpp"
#include "knotinv/invariants.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace knotinv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates the worst value of a quantity against its bound.
class Worst {
 public:
  Worst(std::string label, double bound, bool at_most = true) : label_(std::move(label)), bound_(bound), at_most_(at_most) {}
  void add(double v) {
    if (!std::isfinite(v)) ok_ = false;
    worst_ = at_most_ ? std::max(worst_, v) : std::min(worst_, v);
  }
  bool ok() const { return ok_ && (at_most_ ? worst_ < bound_ : worst_ >= bound_); }
  std::string str() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.3g (%s %.3g)", label_.c_str(), worst_, at_most_ ? "<" : ">=", bound_);
    return buf;
  }

 private:
  std::string label_;
  double bound_;
  bool at_most_;
  double worst_ = at_most_ ? 0.0 : std::numeric_limits<double>::infinity();
  bool ok_ = true;
};

Outcome combine(std::initializer_list<const Worst*> parts, const std::string& extra = "") {
  Outcome o;
  for (const auto* w : parts) {
    o.pass = o.pass && w->ok();
    o.detail += (o.detail.empty() ? "" : "; ") + w->str();
  }
  if (!extra.empty()) o.detail += "; " + extra;
  return o;
}

double frac_distance(double x) { return std::abs(x - std::round(x)); }

double angle_distance(double x) { return std::abs(x - 2 * M_PI * std::round(x / (2 * M_PI))); }

std::vector<Vec3> centers(const ClosedCurve& curve, int count) {
  std::vector<Vec3> out;
  for (int s = 0; s < count; ++s)
    out.push_back(find_admissible_center(curve, 64, default_tube_delta(curve), static_cast<std::uint64_t>(s)));
  return out;
}

Inversion inversion_at(const ClosedCurve& curve, const Vec3& p) { return {p, (p - curve.centroid()).norm()}; }

std::vector<std::pair<std::string, ClosedCurve>> presets() {
  std::vector<std::pair<std::string, ClosedCurve>> out;
  for (const auto& name : preset_names()) out.emplace_back(name, make_preset(name));
  return out;
}

std::vector<std::pair<std::string, ClosedCurve>> nowhere_flat_presets() {
  std::vector<std::pair<std::string, ClosedCurve>> out;
  for (auto& [name, c] : presets())
    if (nowhere_vanishing_curvature(c)) out.emplace_back(name, c);
  return out;
}

bool planar(const ClosedCurve& c) {
  for (const auto& p : c.positions(256))
    if (std::abs(p.z()) > 1e-12) return false;
  return true;
}

const ClosedCurve& trefoil() {
  static const ClosedCurve k = make_preset("trefoil");
  return k;
}

Outcome writhe_inversion() {
  QuadratureConfig q{1024, 0, 1e-6};
  Worst w("max |Wr(I(K)) + Wr(K)|", 1e-3);
  for (const auto& knot : {trefoil(), make_preset("torus_knot", {{"q", 5}})}) {
    const double wr = writhe(knot, q).value;
    for (const auto& p : centers(knot, 3)) w.add(std::abs(writhe(invert_curve(inversion_at(knot, p), knot), q).value + wr));
  }
  return combine({&w}, "torus knots (2,3), (2,5), 3 centers each, n=1024");
}

Outcome mirror_writhe() {
  Worst w("max |Wr(mirror) + Wr|", 1e-6);
  for (auto& [name, c] : presets()) w.add(std::abs(writhe(mirror_curve(c)).value + writhe(c).value));
  return combine({&w});
}

Outcome integrality() {
  Worst f("max frac distance of Wr + Tw_omega", 1e-3);
  long mismatches = 0;
  std::string names;
  for (auto& [name, c] : nowhere_flat_presets()) {
    const double sum = writhe(c).value + total_torsion(c).value;
    f.add(frac_distance(sum));
    if (cycle_area_check(c).k != std::lround(sum)) ++mismatches;
    names += (names.empty() ? "" : ",") + name;
  }
  auto o = combine({&f}, "cycle k mismatches " + std::to_string(mismatches) + " over " + names);
  o.pass = o.pass && mismatches == 0;
  return o;
}

Outcome calugareanu() {
  Worst r("max |Lk - Wr - Tw|", 1e-3), l("max Lk integral residual", 1e-3);
  std::vector<long> lks;
  const auto framing = Framing::principal(trefoil());
  for (double eps : {0.005, 0.01, 0.02}) {
    const auto c = calugareanu_report(trefoil(), framing, eps);
    r.add(c.residual);
    l.add(c.lk_residual);
    lks.push_back(c.lk);
  }
  auto o = combine({&r, &l}, "Lk = " + std::to_string(lks[0]) + "," + std::to_string(lks[1]) + "," + std::to_string(lks[2]));
  o.pass = o.pass && lks[0] == lks[1] && lks[1] == lks[2];
  return o;
}

Outcome twist_mod_z() {
  Worst w("max frac distance of Tw_omega(I(K)) + Tw_omega(K)", 1e-3);
  const double tw = total_torsion(trefoil()).value;
  for (const auto& p : centers(trefoil(), 3))
    w.add(frac_distance(total_torsion(invert_curve(inversion_at(trefoil(), p), trefoil())).value + tw));
  return combine({&w});
}

Outcome angle_variation_identity() {
  Worst w("max |int tau ds~ + int v.(n x dn)|", 1e-3);
  for (const auto& p : centers(trefoil(), 2)) {
    const double image = 2 * M_PI * total_torsion(invert_curve(inversion_at(trefoil(), p), trefoil())).value;
    w.add(std::abs(image + angle_variation(trefoil(), p).value));
  }
  return combine({&w});
}

Outcome torsion_mod_two_pi() {
  Worst w("max distance of int tau(I1) - int tau(I2) to 2 pi Z", 1e-3);
  std::vector<double> t;
  for (const auto& p : centers(trefoil(), 3))
    t.push_back(2 * M_PI * total_torsion(invert_curve(inversion_at(trefoil(), p), trefoil())).value);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) w.add(angle_distance(t[i] - t[j]));
  return combine({&w}, "3 center pairs");
}

Outcome pencil_convergence() {
  Worst w("min log-log slope", 0.9, false);
  const Vec3 p = centers(trefoil(), 1)[0];
  const std::vector<double> hs{1e-2, 5e-3, 2.5e-3};
  for (int i = 0; i < 4; ++i) {
    const double u = trefoil().period() * (i + 0.5) / 4;
    double mx = 0, my = 0;
    std::vector<double> x, y;
    for (double h : hs) {
      x.push_back(std::log(h));
      y.push_back(std::log(sphere_pencil_residual(trefoil(), u, h, p)));
      mx += x.back() / 3;
      my += y.back() / 3;
    }
    double sxy = 0, sxx = 0;
    for (int k = 0; k < 3; ++k) {
      sxy += (x[k] - mx) * (y[k] - my);
      sxx += (x[k] - mx) * (x[k] - mx);
    }
    w.add(sxy / sxx);
  }
  return combine({&w}, "4 parameter points");
}

Outcome binormal_relation() {
  Worst w("max |e3(K~) + n_P|", 1e-4);
  const Vec3 p = centers(trefoil(), 1)[0];
  const auto image = invert_curve(inversion_at(trefoil(), p), trefoil());
  const double threshold = kappa_threshold(image);
  const std::size_t n = 1024;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = trefoil().parameter(i, n);
    const Vec3 e3 = frenet_from_jet(image.jet(u), threshold, u).e3;
    w.add((e3 + *sphere_normals(trefoil(), u, p).n_at_p).norm());
  }
  return combine({&w}, "1024 samples");
}

Outcome spherical_areas() {
  Worst s("max |Area(S) - 4 pi Wr|", 1e-4), t("max |Area(S') + 4 pi Tw_omega|", 1e-6),
      r("max pointwise swept residual", 1e-8);
  for (auto& [name, c] : nowhere_flat_presets()) {
    s.add(std::abs(writhe_surface_area(c).value - 4 * M_PI * writhe(c).value));
    t.add(std::abs(swept_area(c).value + 4 * M_PI * total_torsion(c).value));
    r.add(swept_integrand_residual(c));
  }
  return combine({&s, &t, &r});
}

Outcome analytic_baselines() {
  Worst z("max |Wr|,|Tw_omega|,|Tw|,|Sl| on planar presets", 1e-10), h("Hopf Lk residual", 1e-6);
  for (auto& [name, c] : presets()) {
    if (!planar(c)) continue;
    z.add(std::abs(writhe(c).value));
    z.add(std::abs(total_torsion(c).value));
    z.add(std::abs(twist(c, Framing::principal(c)).value));
    z.add(static_cast<double>(std::labs(self_linking(c, 0.01).lk)));
  }
  const auto a = make_preset("circle");
  const auto b = transform_curve(a, Eigen::AngleAxisd(M_PI / 2, Vec3::UnitX()).toRotationMatrix(), Vec3(1, 0, 0));
  const auto hopf = linking_number(a, b);
  h.add(hopf.residual);
  auto o = combine({&z, &h}, "Hopf Lk = " + std::to_string(hopf.lk));
  o.pass = o.pass && std::labs(hopf.lk) == 1;
  return o;
}

Outcome grid_convergence() {
  const QuadratureConfig coarse{512, 0, 1e-6}, fine{4096, 0, 1e-6};
  Worst d("max writhe |n512 - n4096|", 1e-4), s("max 1-D integral |n512 - n4096|", 1e-6),
      o("trefoil writhe vs brute-force oracle", 1e-6);
  for (auto& [name, c] : presets()) {
    d.add(std::abs(writhe(c, coarse).value - writhe(c, fine).value));
    if (!nowhere_vanishing_curvature(c)) continue;
    s.add(std::abs(total_torsion(c, coarse).value - total_torsion(c, fine).value));
    const auto f = Framing::principal(c);
    s.add(std::abs(twist(c, f, coarse).value - twist(c, f, fine).value));
  }
  o.add(std::abs(writhe(trefoil(), fine).value - oracle::writhe(oracle::trefoil, 4096)));
  return combine({&d, &s, &o});
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> runs{
      {"invariants", "--preset", "trefoil"},
      {"verify", "prop4", "--preset", "trefoil", "--auto-center"},
      {"verify", "integrality", "--preset", "torus_knot", "--tol", "1e-5", "--params", "q=5"},
      {"export", "indicatrix", "--preset", "trefoil", "--n", "256"}};
  long differing = 0;
  for (const auto& args : runs) {
    std::ostringstream a, b, ea, eb;
    const int ca = cli::run(args, a, ea), cb = cli::run(args, b, eb);
    if (ca != cb || a.str() != b.str() || a.str().empty()) ++differing;
  }
  return {differing == 0, std::to_string(differing) + " of " + std::to_string(runs.size()) + " commands differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"writhe changes sign under inversion", writhe_inversion},
      {"mirror image negates writhe", mirror_writhe},
      {"Wr + Tw_omega is an integer matching the cycle area", integrality},
      {"Lk = Wr + Tw for the trefoil ribbon", calugareanu},
      {"total torsion negates mod Z under inversion", twist_mod_z},
      {"image torsion equals minus sphere angle variation", angle_variation_identity},
      {"image torsion integrals agree mod 2 pi", torsion_mod_two_pi},
      {"osculating sphere pencil converges at first order", pencil_convergence},
      {"image binormal is minus the sphere normal at the center", binormal_relation},
      {"spherical area identities", spherical_areas},
      {"analytic baselines", analytic_baselines},
      {"quadrature grid convergence", grid_convergence},
      {"deterministic reports", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
