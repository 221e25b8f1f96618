#pragma once

#include "knotinv/spectral.hpp"
#include "knotinv/vec.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace knotinv {

/// Evaluator behind a ClosedCurve. Implementations are immutable.
class CurveEvaluator {
 public:
  virtual ~CurveEvaluator() = default;

  virtual Jet jet(double u) const = 0;
  virtual double period() const = 0;

  /// Jets at u_j = period * j / n.
  virtual std::vector<Jet> grid(std::size_t n) const;

  /// Serialized CurveSpec. The default writes 1024 uniform samples.
  virtual nlohmann::json spec() const;
};

/// A closed, regular, C^3 parametric space curve. Cheap to copy; copies share
/// the same evaluator.
class ClosedCurve {
 public:
  /// Validates periodicity, regularity and sampled simplicity.
  explicit ClosedCurve(std::shared_ptr<const CurveEvaluator> impl);

  Jet jet(double u) const { return impl_->jet(u); }
  Vec3 position(double u) const { return impl_->jet(u).p; }
  double period() const { return impl_->period(); }
  double length() const { return length_; }

  std::vector<Jet> grid(std::size_t n) const { return impl_->grid(n); }
  std::vector<Vec3> positions(std::size_t n) const;
  double parameter(std::size_t j, std::size_t n) const { return period() * static_cast<double>(j) / static_cast<double>(n); }

  Vec3 centroid() const;
  /// Largest distance between two of 256 uniform samples.
  double diameter() const;

  const CurveEvaluator& evaluator() const { return *impl_; }
  const std::shared_ptr<const CurveEvaluator>& evaluator_ptr() const { return impl_; }
  bool same_as(const ClosedCurve& other) const { return impl_ == other.impl_; }

 private:
  std::shared_ptr<const CurveEvaluator> impl_;
  double length_ = 0.0;
};

/// Trigonometric curve on [0, 2*pi); backs presets, Fourier specs and sample
/// lists (through the trigonometric interpolant).
class TrigCurve final : public CurveEvaluator {
 public:
  TrigCurve(TrigSeries series, nlohmann::json spec);

  Jet jet(double u) const override { return series_.jet(u); }
  double period() const override { return 2.0 * M_PI; }
  std::vector<Jet> grid(std::size_t n) const override { return series_.grid(n); }
  nlohmann::json spec() const override { return spec_; }

  const TrigSeries& series() const { return series_; }

 private:
  TrigSeries series_;
  nlohmann::json spec_;
};

/// Image of a curve under x -> A x + b.
class AffineCurve final : public CurveEvaluator {
 public:
  AffineCurve(ClosedCurve base, Eigen::Matrix3d linear, Vec3 shift);

  Jet jet(double u) const override;
  double period() const override { return base_.period(); }
  std::vector<Jet> grid(std::size_t n) const override;

 private:
  Jet map(const Jet& j) const;
  ClosedCurve base_;
  Eigen::Matrix3d linear_;
  Vec3 shift_;
};

using PresetParams = std::map<std::string, double>;

/// circle(R), ellipse(a,b), torus_knot(p,q,R,r), planar_flower(petals,R,amplitude),
/// twisted_unknot(amplitude[,height,twist]); "trefoil" is torus_knot(2,3,2,0.5).
ClosedCurve make_preset(const std::string& name, const PresetParams& params = {});

std::vector<std::string> preset_names();

ClosedCurve curve_from_fourier(std::vector<Vec3> cos_coef, std::vector<Vec3> sin_coef);

/// Curve through uniform periodic samples (last point not repeated).
ClosedCurve curve_from_samples(std::vector<Vec3> points);

/// Parses a CurveSpec JSON document.
ClosedCurve load_curve(const nlohmann::json& spec);
ClosedCurve load_curve_text(const std::string& text);
ClosedCurve load_curve_file(const std::string& path);

nlohmann::json serialize(const ClosedCurve& curve);

/// Resamples at n points uniform in arc length.
ClosedCurve resample_arclength(const ClosedCurve& curve, std::size_t n);

/// Parameters u_j (j < n) splitting the curve into n arcs of equal length.
std::vector<double> arclength_parameters(const ClosedCurve& curve, std::size_t n);

/// Reflection through the plane z = 0, orientation of the parameter kept.
ClosedCurve mirror_curve(const ClosedCurve& curve);

/// Reflection through the plane with the given point and unit normal.
ClosedCurve mirror_curve(const ClosedCurve& curve, const Vec3& plane_point, const Vec3& plane_normal);

/// x -> scale * R x + t.
ClosedCurve transform_curve(const ClosedCurve& curve, const Eigen::Matrix3d& rotation, const Vec3& translation,
                            double scale = 1.0);

class Framing;

/// u -> f(u) + epsilon * e2(u), resampled on `samples` uniform points.
ClosedCurve offset_curve(const ClosedCurve& curve, const Framing& framing, double epsilon, std::size_t samples = 2048);

/// Minimum distance between samples i, j with cyclic index gap > 2.
double min_nonadjacent_distance(const std::vector<Vec3>& points);

}  // namespace knotinv
