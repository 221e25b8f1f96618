#pragma once

#include "knotinv/conformal.hpp"
#include "knotinv/frenet.hpp"
#include "knotinv/indicatrix.hpp"
#include "knotinv/invariants.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>

namespace knotinv {

/// Version tag written into every JSON report.
inline constexpr const char* kReportSchema = "1";

nlohmann::json to_json(const InvariantReport& r, const std::string& invariant);
nlohmann::json to_json(const LinkingResult& r);
nlohmann::json to_json(const CalugareanuReport& r);
nlohmann::json to_json(const TubeReport& r);
nlohmann::json to_json(const CycleArea& r);
nlohmann::json to_json(const Vec3& v);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

/// u,s,kappa,tau; tau is written as "nan" where it is undefined.
void write_profile_csv(std::ostream& out, const CurvatureProfile& profile);

/// u,x,y,z at n uniform parameter samples.
void write_curve_csv(std::ostream& out, const ClosedCurve& curve, std::size_t n);

/// s,x,y,z.
void write_indicatrix_csv(std::ostream& out, const IndicatrixCurve& indicatrix);

/// u,cx,cy,cz,radius,ax,ay,az for the osculating circles at n uniform
/// parameter samples; with a point P, a trailing distance column.
void write_tube_csv(std::ostream& out, const ClosedCurve& curve, std::size_t n, const PointOrInfinity& p);

}  // namespace knotinv
