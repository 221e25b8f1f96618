#include "knotinv/curve.hpp"
#include "knotinv/error.hpp"

#include <cmath>
#include <numeric>
#include <set>

namespace knotinv {

namespace {

// Accumulates a trigonometric polynomial term by term; negative frequencies
// fold onto positive ones.
class SeriesBuilder {
 public:
  void add_cos(int k, const Vec3& v) {
    grow(k);
    cos_[static_cast<std::size_t>(std::abs(k))] += v;
  }
  void add_sin(int k, const Vec3& v) {
    grow(k);
    if (k != 0) sin_[static_cast<std::size_t>(std::abs(k))] += (k > 0 ? 1.0 : -1.0) * v;
  }
  TrigSeries build() { return TrigSeries(cos_, sin_); }

 private:
  void grow(int k) {
    const std::size_t need = static_cast<std::size_t>(std::abs(k)) + 1;
    if (cos_.size() < need) {
      cos_.resize(need, Vec3::Zero());
      sin_.resize(need, Vec3::Zero());
    }
  }
  std::vector<Vec3> cos_;
  std::vector<Vec3> sin_;
};

const Vec3 ex(1, 0, 0), ey(0, 1, 0), ez(0, 0, 1);

PresetParams with_defaults(const std::string& name, const PresetParams& given, const PresetParams& defaults) {
  PresetParams p = defaults;
  for (const auto& [k, v] : given) {
    if (!defaults.contains(k)) throw KnotError(ErrorCode::InvalidParams, name + ": unknown parameter '" + k + "'");
    if (!std::isfinite(v)) throw KnotError(ErrorCode::InvalidParams, name + ": parameter '" + k + "' is not finite");
    p[k] = v;
  }
  return p;
}

int as_int(const std::string& name, const std::string& key, double v) {
  if (std::abs(v - std::round(v)) > 1e-12 || std::abs(v) > 1000.0) {
    throw KnotError(ErrorCode::InvalidParams, name + ": parameter '" + key + "' must be an integer");
  }
  return static_cast<int>(std::lround(v));
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw KnotError(ErrorCode::InvalidParams, msg);
}

nlohmann::json preset_spec(const std::string& name, const PresetParams& p) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : p) params[k] = v;
  return {{"type", "preset"}, {"name", name}, {"params", params}};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"circle", "ellipse", "torus_knot", "trefoil", "planar_flower", "twisted_unknot"};
}

ClosedCurve make_preset(const std::string& name, const PresetParams& params) {
  SeriesBuilder s;
  PresetParams p;
  std::string spec_name = name;

  if (name == "circle") {
    p = with_defaults(name, params, {{"R", 1.0}});
    const double R = p["R"];
    require(R > 0.0, "circle: R must be positive");
    s.add_cos(1, R * ex);
    s.add_sin(1, R * ey);
  } else if (name == "ellipse") {
    p = with_defaults(name, params, {{"a", 2.0}, {"b", 1.0}});
    require(p["a"] > 0.0 && p["b"] > 0.0, "ellipse: a and b must be positive");
    s.add_cos(1, p["a"] * ex);
    s.add_sin(1, p["b"] * ey);
  } else if (name == "torus_knot" || name == "trefoil") {
    const PresetParams defaults = {{"p", 2.0}, {"q", 3.0}, {"R", 2.0}, {"r", 0.5}};
    p = with_defaults(name, name == "trefoil" ? PresetParams{} : params, defaults);
    if (name == "trefoil") require(params.empty(), "trefoil: takes no parameters (use torus_knot)");
    spec_name = "torus_knot";
    const int pw = as_int(name, "p", p["p"]);
    const int qw = as_int(name, "q", p["q"]);
    const double R = p["R"], r = p["r"];
    require(pw != 0 && qw != 0, "torus_knot: p and q must be nonzero");
    require(std::gcd(pw, qw) == 1, "torus_knot: gcd(p, q) must be 1 (otherwise the curve is a link)");
    require(r > 0.0 && r < R, "torus_knot: need 0 < r < R");
    // ((R + r cos qu) cos pu, (R + r cos qu) sin pu, r sin qu)
    s.add_cos(pw, R * ex);
    s.add_cos(pw + qw, 0.5 * r * ex);
    s.add_cos(pw - qw, 0.5 * r * ex);
    s.add_sin(pw, R * ey);
    s.add_sin(pw + qw, 0.5 * r * ey);
    s.add_sin(pw - qw, 0.5 * r * ey);
    s.add_sin(qw, r * ez);
  } else if (name == "planar_flower") {
    p = with_defaults(name, params, {{"petals", 5.0}, {"R", 1.0}, {"amplitude", 0.03}});
    const int k = as_int(name, "petals", p["petals"]);
    const double R = p["R"], A = p["amplitude"];
    require(k >= 2, "planar_flower: petals must be >= 2");
    require(R > 0.0, "planar_flower: R must be positive");
    require(A >= 0.0 && A < 1.0, "planar_flower: amplitude must be in [0, 1)");
    // r(u) = R (1 + A cos ku) in polar form.
    s.add_cos(1, R * ex);
    s.add_cos(k + 1, 0.5 * R * A * ex);
    s.add_cos(k - 1, 0.5 * R * A * ex);
    s.add_sin(1, R * ey);
    s.add_sin(k + 1, 0.5 * R * A * ey);
    s.add_sin(k - 1, -0.5 * R * A * ey);
  } else if (name == "twisted_unknot") {
    p = with_defaults(name, params, {{"amplitude", 0.1}, {"height", 0.5}, {"twist", 1.0}});
    const double b = p["amplitude"], h = p["height"], c = p["twist"];
    require(std::abs(b) < 1.0, "twisted_unknot: |amplitude| must be < 1");
    // Polar radius 1 - b cos 2u lifted by z = h sin^3 u (1 + c cos u).
    // The planar projection is flat at u = 0 and u = pi exactly when b = 1/5,
    // and z has vanishing first and second derivatives there, so the space
    // curve is flat there too. The half-turn about the x-axis (u -> -u) maps
    // the curve to itself, so u = pi sits at exactly half the length and both
    // flat points fall on uniform arc-length grids of even size. c breaks
    // every orientation-reversing symmetry, so the writhe is nonzero.
    s.add_cos(1, (1.0 - 0.5 * b) * ex);
    s.add_cos(3, -0.5 * b * ex);
    s.add_sin(1, (1.0 + 0.5 * b) * ey);
    s.add_sin(3, -0.5 * b * ey);
    s.add_sin(1, 0.75 * h * ez);
    s.add_sin(3, -0.25 * h * ez);
    s.add_sin(2, 0.25 * h * c * ez);
    s.add_sin(4, -0.125 * h * c * ez);
  } else {
    throw KnotError(ErrorCode::UnknownPreset, "unknown preset '" + name + "'");
  }

  return ClosedCurve(std::make_shared<TrigCurve>(s.build(), preset_spec(spec_name, p)));
}

}  // namespace knotinv
