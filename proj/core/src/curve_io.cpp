#include "knotinv/curve.hpp"
#include "knotinv/error.hpp"

#include <fstream>
#include <sstream>

namespace knotinv {

namespace {

Vec3 parse_vec3(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw KnotError(ErrorCode::ParseError, std::string(what) + ": expected [x, y, z]");
  }
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) {
      throw KnotError(ErrorCode::ParseError, std::string(what) + ": coordinates must be numbers");
    }
    v[i] = j[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

std::vector<Vec3> parse_vec3_list(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw KnotError(ErrorCode::ParseError, std::string("missing array '") + key + "'");
  }
  std::vector<Vec3> out;
  out.reserve(doc[key].size());
  for (const auto& e : doc[key]) out.push_back(parse_vec3(e, key));
  return out;
}

}  // namespace

ClosedCurve load_curve(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string()) {
    throw KnotError(ErrorCode::ParseError, "curve spec must be an object with a string 'type'");
  }
  const auto type = spec["type"].get<std::string>();
  if (type == "preset") {
    if (!spec.contains("name") || !spec["name"].is_string()) {
      throw KnotError(ErrorCode::ParseError, "preset spec needs a string 'name'");
    }
    PresetParams params;
    if (spec.contains("params")) {
      if (!spec["params"].is_object()) throw KnotError(ErrorCode::ParseError, "'params' must be an object");
      for (const auto& [k, v] : spec["params"].items()) {
        if (!v.is_number()) throw KnotError(ErrorCode::ParseError, "preset parameter '" + k + "' must be a number");
        params[k] = v.get<double>();
      }
    }
    return make_preset(spec["name"].get<std::string>(), params);
  }
  if (type == "samples") {
    return curve_from_samples(parse_vec3_list(spec, "points"));
  }
  if (type == "fourier") {
    auto c = parse_vec3_list(spec, "cos");
    auto s = spec.contains("sin") ? parse_vec3_list(spec, "sin") : std::vector<Vec3>{};
    if (c.empty()) throw KnotError(ErrorCode::ParseError, "fourier spec needs at least the constant term");
    return curve_from_fourier(std::move(c), std::move(s));
  }
  throw KnotError(ErrorCode::ParseError, "unknown curve type '" + type + "'");
}

ClosedCurve load_curve_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw KnotError(ErrorCode::ParseError, e.what());
  }
  return load_curve(doc);
}

ClosedCurve load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw KnotError(ErrorCode::ParseError, "cannot open curve file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_curve_text(ss.str());
}

}  // namespace knotinv
