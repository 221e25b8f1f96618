#include "cli.hpp"

#include "knotinv/conformal.hpp"
#include "knotinv/error.hpp"
#include "knotinv/frenet.hpp"
#include "knotinv/indicatrix.hpp"
#include "knotinv/invariants.hpp"
#include "knotinv/report_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace knotinv::cli {

namespace {

struct Options {
  std::string preset;
  std::string curve_path;
  std::string params;
  std::size_t n = 512;
  int refine = 2;
  double tol = 1e-6;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  std::string output = "json";
  std::string out_dir;
  bool timing = false;

  std::vector<std::string> centers;
  std::optional<double> radius;
  bool auto_center = false;
  std::optional<int> center_count;
  std::optional<double> accept_tol;
  std::string sign = "+";

  std::string theorem;
  std::string what;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Vec3 parse_vec3(const std::string& text) {
  std::istringstream in(text);
  Vec3 v;
  char sep1 = 0, sep2 = 0;
  if (!(in >> v.x() >> sep1 >> v.y() >> sep2 >> v.z()) || sep1 != ',' || sep2 != ',' || !in.eof() || !is_finite(v)) {
    throw InputError("expected x,y,z but got '" + text + "'");
  }
  return v;
}

PresetParams parse_params(const std::string& text) {
  PresetParams out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("expected key=value in --params, got '" + item + "'");
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() - eq - 1) throw InputError("bad number in --params: '" + item + "'");
    out[item.substr(0, eq)] = value;
  }
  return out;
}

ClosedCurve load_input_curve(const Options& o) {
  if (o.preset.empty() == o.curve_path.empty()) throw InputError("give exactly one of --preset or --curve");
  if (!o.curve_path.empty()) {
    if (!o.params.empty()) throw InputError("--params only applies to --preset");
    return load_curve_file(o.curve_path);
  }
  return make_preset(o.preset, parse_params(o.params));
}

nlohmann::json input_spec(const Options& o) {
  if (!o.curve_path.empty()) return {{"type", "file"}, {"path", o.curve_path}};
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [k, v] : parse_params(o.params)) p[k] = v;
  return {{"type", "preset"}, {"name", o.preset}, {"params", p}};
}

QuadratureConfig quadrature(const Options& o) {
  QuadratureConfig q;
  q.n = o.n;
  q.refinement = o.refine;
  q.tol = o.tol;
  q.validate();
  return q;
}

nlohmann::json config_json(const Options& o) {
  return {{"n", o.n}, {"refinement", o.refine}, {"tol", o.tol}, {"epsilon", o.epsilon}, {"seed", o.seed}};
}

struct Center {
  Vec3 point;
  double radius;
  std::string source;
};

std::vector<Center> select_centers(const Options& o, const ClosedCurve& curve, int default_count) {
  if (o.auto_center && !o.centers.empty()) throw InputError("--auto-center and --center are exclusive");
  if (o.radius && !(*o.radius > 0.0)) throw InputError("--radius must be positive");
  std::vector<Center> out;
  const Vec3 centroid = curve.centroid();
  auto radius_for = [&](const Vec3& p) { return o.radius ? *o.radius : (p - centroid).norm(); };
  if (!o.centers.empty()) {
    for (const auto& text : o.centers) {
      const Vec3 p = parse_vec3(text);
      out.push_back({p, radius_for(p), "given"});
    }
    return out;
  }
  const int count = o.center_count.value_or(default_count);
  if (count < 1) throw InputError("--centers must be >= 1");
  for (int k = 0; k < count; ++k) {
    const Vec3 p = find_admissible_center(curve, 64, default_tube_delta(curve), o.seed + static_cast<std::uint64_t>(k));
    out.push_back({p, radius_for(p), "auto"});
  }
  return out;
}

double distance_to_integer(double x) { return std::abs(x - std::round(x)); }

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool at_most = true;  ///< pass when value <= tolerance, else when value >= tolerance

  bool pass() const { return at_most ? value <= tolerance : value >= tolerance; }
};

nlohmann::json check_json(const Check& c) {
  return {{"name", c.name},
          {"value", c.value},
          {"tolerance", c.tolerance},
          {"comparison", c.at_most ? "<=" : ">="},
          {"pass", c.pass()}};
}

class Session {
 public:
  Session(Options o, std::ostream& out, std::ostream& err) : o_(std::move(o)), out_(out), err_(err) {}

  int invariants();
  int verify();
  int export_data();

 private:
  void emit(const std::string& name, const std::string& text);
  int finish(const std::string& name, bool pass);
  int fail_numerics(const std::string& name, const KnotError& e);
  double tolerance(double fallback) const { return o_.accept_tol.value_or(fallback); }

  void verify_writhe_inversion(const ClosedCurve& curve, const QuadratureConfig& q);
  void verify_twist_mod_z(const ClosedCurve& curve, const QuadratureConfig& q);
  void verify_integrality(const ClosedCurve& curve, const QuadratureConfig& q);
  void verify_prop4(const ClosedCurve& curve, const QuadratureConfig& q);
  void verify_lemma1(const ClosedCurve& curve);
  void verify_binormal_relation(const ClosedCurve& curve);

  void add_check(Check c) { checks_.push_back(std::move(c)); }
  std::vector<Center> centers(const ClosedCurve& curve, int default_count, bool need_admissible);

  Options o_;
  std::ostream& out_;
  std::ostream& err_;
  nlohmann::json report_ = nlohmann::json::object();
  std::vector<Check> checks_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void Session::emit(const std::string& name, const std::string& text) {
  if (o_.out_dir.empty()) {
    out_ << text;
    return;
  }
  std::filesystem::create_directories(o_.out_dir);
  const auto path = std::filesystem::path(o_.out_dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
}

int Session::finish(const std::string& name, bool pass) {
  if (!checks_.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks_) arr.push_back(check_json(c));
    report_["residuals"] = arr;
  }
  report_["pass"] = pass;
  report_["status"] = "ok";
  if (o_.timing) {
    report_["runtime_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  if (o_.output == "csv") {
    std::ostringstream csv;
    csv << "name,value,tolerance,pass\n";
    for (const auto& c : checks_) {
      csv << c.name << ',' << format_double(c.value) << ',' << format_double(c.tolerance) << ','
          << (c.pass() ? "true" : "false") << '\n';
    }
    emit(name + ".csv", csv.str());
  } else {
    emit(name + ".json", report_.dump(2) + "\n");
  }
  return pass ? kPass : kNumericalFailure;
}

int Session::fail_numerics(const std::string& name, const KnotError& e) {
  report_["status"] = "error";
  report_["pass"] = false;
  report_["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  err_ << "error: " << e.what() << "\n";
  emit(name + ".json", report_.dump(2) + "\n");
  return kNumericalFailure;
}

int Session::invariants() {
  const auto curve = load_input_curve(o_);
  const auto q = quadrature(o_);
  report_["schema"] = kReportSchema;
  report_["command"] = "invariants";
  report_["curve"] = input_spec(o_);
  report_["config"] = config_json(o_);
  try {
    const auto wr = writhe(curve, q);
    report_["writhe"] = to_json(wr, "writhe");
    const auto tw_omega = total_torsion(curve, q);
    report_["total_torsion"] = to_json(tw_omega, "total_torsion");
    const auto cal = calugareanu_report(curve, Framing::principal(curve), o_.epsilon, q);
    report_["twist"] = to_json(cal.twist, "twist");
    report_["self_linking"] = {{"invariant", "self_linking"}, {"value", cal.lk}, {"residual", cal.lk_residual}};
    report_["calugareanu"] = to_json(cal);
    add_check({"calugareanu", cal.residual, 1e-3});
    add_check({"lk_integrality", cal.lk_residual, 1e-3});
    if (o_.output == "csv") {
      std::ostringstream csv;
      csv << "invariant,value,estimated_error,n_used\n";
      auto row = [&](const std::string& name, const InvariantReport& r) {
        csv << name << ',' << format_double(r.value) << ',' << format_double(r.estimated_error) << ',' << r.n_used
            << '\n';
      };
      row("writhe", wr);
      row("total_torsion", tw_omega);
      row("twist", cal.twist);
      csv << "self_linking," << cal.lk << ",0," << cal.writhe.n_used << '\n';
      csv << "calugareanu_residual," << format_double(cal.residual) << ",0," << cal.writhe.n_used << '\n';
      emit("invariants.csv", csv.str());
      bool pass = true;
      for (const auto& c : checks_) pass = pass && c.pass();
      return pass ? kPass : kNumericalFailure;
    }
  } catch (const KnotError& e) {
    if (is_input_error(e.code())) throw;
    return fail_numerics("invariants", e);
  }
  bool pass = true;
  for (const auto& c : checks_) pass = pass && c.pass();
  return finish("invariants", pass);
}

std::vector<Center> Session::centers(const ClosedCurve& curve, int default_count, bool need_admissible) {
  auto list = select_centers(o_, curve, default_count);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : list) {
    const auto tube = curvature_tube_distance(curve, c.point, 1024);
    arr.push_back({{"center", to_json(c.point)},
                   {"radius", c.radius},
                   {"source", c.source},
                   {"tube_distance", tube.distance},
                   {"tube_delta", tube.delta},
                   {"admissible", tube.admissible}});
    if (need_admissible && !tube.admissible) {
      report_["inversions"] = arr;
      std::ostringstream msg;
      msg << "center (" << c.point.x() << "," << c.point.y() << "," << c.point.z() << ") is " << tube.distance
          << " from the curvature tube (need > " << tube.delta << ")";
      throw KnotError(ErrorCode::TubeViolation, msg.str());
    }
  }
  report_["inversions"] = arr;
  return list;
}

void Session::verify_writhe_inversion(const ClosedCurve& curve, const QuadratureConfig& q) {
  const double tol = tolerance(1e-3);
  const auto wr = writhe(curve, q);
  report_["writhe"] = to_json(wr, "writhe");
  nlohmann::json images = nlohmann::json::array();
  int k = 0;
  for (const auto& c : centers(curve, 3, false)) {
    const auto image = invert_curve(Inversion{c.point, c.radius}, curve);
    const auto wi = writhe(image, q);
    images.push_back(to_json(wi, "writhe"));
    add_check({"writhe_sum_" + std::to_string(k++), std::abs(wi.value + wr.value), tol});
  }
  report_["inverted_writhe"] = images;
}

void Session::verify_twist_mod_z(const ClosedCurve& curve, const QuadratureConfig& q) {
  const double tol = tolerance(1e-3);
  const auto tw = total_torsion(curve, q);
  report_["total_torsion"] = to_json(tw, "total_torsion");
  nlohmann::json images = nlohmann::json::array();
  int k = 0;
  for (const auto& c : centers(curve, 3, true)) {
    const auto ti = total_torsion(invert_curve(Inversion{c.point, c.radius}, curve), q);
    images.push_back(to_json(ti, "total_torsion"));
    add_check({"total_torsion_sum_" + std::to_string(k++), distance_to_integer(ti.value + tw.value), tol});
  }
  report_["inverted_total_torsion"] = images;
}

void Session::verify_integrality(const ClosedCurve& curve, const QuadratureConfig& q) {
  const double tol = tolerance(1e-3);
  const auto wr = writhe(curve, q);
  const auto tw = total_torsion(curve, q);
  const auto cycle = cycle_area_check(curve, q);
  const long k = std::lround(wr.value + tw.value);
  report_["writhe"] = to_json(wr, "writhe");
  report_["total_torsion"] = to_json(tw, "total_torsion");
  report_["cycle_area"] = to_json(cycle);
  report_["k"] = k;
  add_check({"writhe_plus_total_torsion", distance_to_integer(wr.value + tw.value), tol});
  add_check({"cycle_area", cycle.residual, tol});
  add_check({"cycle_area_k_mismatch", static_cast<double>(std::labs(cycle.k - k)), 0.0});
}

void Session::verify_prop4(const ClosedCurve& curve, const QuadratureConfig& q) {
  const double tol = tolerance(1e-3);
  nlohmann::json rows = nlohmann::json::array();
  int k = 0;
  for (const auto& c : centers(curve, 2, true)) {
    const auto ti = total_torsion(invert_curve(Inversion{c.point, c.radius}, curve), q);
    const auto av = angle_variation(curve, c.point, q);
    const double integral = 2.0 * M_PI * ti.value;
    rows.push_back({{"torsion_integral", integral}, {"angle_variation", to_json(av, "angle_variation")}});
    add_check({"prop4_" + std::to_string(k++), std::abs(integral + av.value), tol});
  }
  report_["sides"] = rows;
}

void Session::verify_lemma1(const ClosedCurve& curve) {
  const double slope_min = tolerance(0.9);
  const auto list = centers(curve, 1, false);
  const std::vector<double> hs{1e-2, 5e-3, 2.5e-3};
  nlohmann::json rows = nlohmann::json::array();
  int k = 0;
  for (const auto& c : list) {
    for (int i = 0; i < 4; ++i) {
      const double u = curve.period() * (i + 0.5) / 4.0;
      std::vector<double> x, y;
      for (double h : hs) {
        x.push_back(std::log(h));
        y.push_back(std::log(sphere_pencil_residual(curve, u, h, c.point)));
      }
      const double mx = (x[0] + x[1] + x[2]) / 3.0;
      const double my = (y[0] + y[1] + y[2]) / 3.0;
      double sxy = 0.0, sxx = 0.0;
      for (int j = 0; j < 3; ++j) {
        sxy += (x[j] - mx) * (y[j] - my);
        sxx += (x[j] - mx) * (x[j] - mx);
      }
      const double slope = sxy / sxx;
      rows.push_back({{"u", u}, {"h", hs}, {"residual", {std::exp(y[0]), std::exp(y[1]), std::exp(y[2])}}, {"slope", slope}});
      add_check({"lemma1_slope_" + std::to_string(k++), slope, slope_min, false});
    }
  }
  report_["pencil"] = rows;
}

void Session::verify_binormal_relation(const ClosedCurve& curve) {
  const double tol = tolerance(1e-4);
  int k = 0;
  for (const auto& c : centers(curve, 1, true)) {
    const auto image = invert_curve(Inversion{c.point, c.radius}, curve);
    const double threshold = kappa_threshold(image);
    const double curve_threshold = kappa_threshold(curve);
    const auto gi = image.grid(o_.n);
    const auto g = curve.grid(o_.n);
    double worst = 0.0;
    for (std::size_t i = 0; i < o_.n; ++i) {
      const double u = curve.parameter(i, o_.n);
      const auto e3 = frenet_from_jet(gi[i], threshold, u).e3;
      const auto normals = sphere_normals_from_jet(g[i], c.point, curve_threshold);
      worst = std::max(worst, (e3 + *normals.n_at_p).norm());
    }
    add_check({"binormal_" + std::to_string(k++), worst, tol});
  }
}

int Session::verify() {
  const auto curve = load_input_curve(o_);
  const auto q = quadrature(o_);
  report_["schema"] = kReportSchema;
  report_["command"] = "verify";
  report_["theorem"] = o_.theorem;
  report_["curve"] = input_spec(o_);
  report_["config"] = config_json(o_);
  try {
    if (o_.theorem == "writhe_inversion") verify_writhe_inversion(curve, q);
    else if (o_.theorem == "twist_mod_z") verify_twist_mod_z(curve, q);
    else if (o_.theorem == "integrality") verify_integrality(curve, q);
    else if (o_.theorem == "prop4") verify_prop4(curve, q);
    else if (o_.theorem == "lemma1") verify_lemma1(curve);
    else verify_binormal_relation(curve);
  } catch (const KnotError& e) {
    if (is_input_error(e.code())) throw;
    return fail_numerics("verify_" + o_.theorem, e);
  }
  bool pass = true;
  for (const auto& c : checks_) pass = pass && c.pass();
  return finish("verify_" + o_.theorem, pass);
}

int Session::export_data() {
  if (o_.output != "csv") throw InputError("export writes CSV only; use --output csv");
  const auto curve = load_input_curve(o_);
  if (o_.n < 3) throw InputError("--n must be >= 3 for export");
  std::ostringstream csv;
  try {
    if (o_.what == "curve") {
      write_curve_csv(csv, curve, o_.n);
    } else if (o_.what == "indicatrix") {
      if (o_.sign != "+" && o_.sign != "-") throw InputError("--sign must be + or -");
      write_indicatrix_csv(csv, tangent_indicatrix(curve, o_.sign == "+" ? 1 : -1, o_.n));
    } else if (o_.what == "tube-samples") {
      if (o_.centers.size() > 1) throw InputError("tube-samples takes at most one --center");
      PointOrInfinity p;
      if (!o_.centers.empty()) p = parse_vec3(o_.centers.front());
      write_tube_csv(csv, curve, o_.n, p);
    } else if (o_.what == "inverted-curve") {
      if (o_.centers.size() != 1) throw InputError("inverted-curve needs exactly one --center");
      const Vec3 p = parse_vec3(o_.centers.front());
      const double r = o_.radius ? *o_.radius : (p - curve.centroid()).norm();
      if (!(r > 0.0)) throw InputError("--radius must be positive");
      write_curve_csv(csv, invert_curve(Inversion{p, r}, curve), o_.n);
    } else {
      write_profile_csv(csv, frenet_scan(curve, o_.n));
    }
  } catch (const KnotError& e) {
    if (is_input_error(e.code())) throw;
    err_ << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  emit(o_.what + ".csv", csv.str());
  return kPass;
}

void add_curve_options(CLI::App* app, Options& o) {
  app->add_option("--preset", o.preset, "Preset curve name");
  app->add_option("--curve", o.curve_path, "Curve JSON file");
  app->add_option("--params", o.params, "Preset parameters k=v,...");
  app->add_option("--n", o.n, "Grid size (power of two >= 32 for quadratures; sample count for export)");
  app->add_option("--out-dir", o.out_dir, "Write output files here instead of stdout");
  app->add_option("--seed", o.seed, "Seed for automatic center selection");
  app->add_flag("--timing", o.timing, "Include runtime in reports");
}

void add_quadrature_options(CLI::App* app, Options& o) {
  app->add_option("--refine", o.refine, "Grid doublings after the first pass");
  app->add_option("--tol", o.tol, "Refinement tolerance");
  app->add_option("--epsilon", o.epsilon, "Push-off distance for the linking number");
  app->add_option("--output", o.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void add_center_options(CLI::App* app, Options& o) {
  app->add_option("--center", o.centers, "Inversion center x,y,z (repeatable)");
  app->add_option("--radius", o.radius, "Inversion radius (default: distance from center to centroid)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Writhe, torsion and conformal invariants of closed space curves", "knotinv"};
  app.require_subcommand(1);
  Options o;

  auto* inv = app.add_subcommand("invariants", "Writhe, total torsion, twist, self-linking");
  add_curve_options(inv, o);
  add_quadrature_options(inv, o);

  auto* ver = app.add_subcommand("verify", "Check an identity numerically");
  ver->add_option("theorem", o.theorem, "Identity to check")
      ->required()
      ->check(CLI::IsMember({"writhe_inversion", "twist_mod_z", "integrality", "prop4", "lemma1", "binormal_relation"}));
  add_curve_options(ver, o);
  add_quadrature_options(ver, o);
  add_center_options(ver, o);
  ver->add_flag("--auto-center", o.auto_center, "Select admissible centers automatically");
  ver->add_option("--centers", o.center_count, "Number of automatic centers");
  ver->add_option("--accept-tol", o.accept_tol, "Acceptance tolerance (minimum slope for lemma1)");

  auto* exp = app.add_subcommand("export", "Write plot data as CSV");
  exp->add_option("what", o.what, "Data set")
      ->required()
      ->check(CLI::IsMember({"curve", "indicatrix", "tube-samples", "inverted-curve", "profile"}));
  add_curve_options(exp, o);
  add_center_options(exp, o);
  exp->add_option("--sign", o.sign, "Indicatrix sign, + or -");
  exp->add_option("--output", o.output, "csv (default for export)")->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (*exp && exp->count("--output") == 0) o.output = "csv";

  Session session(o, out, err);
  try {
    if (*inv) return session.invariants();
    if (*ver) return session.verify();
    return session.export_data();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const KnotError& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? kInputError : kNumericalFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace knotinv::cli
