#pragma once

#include "knotinv/curve.hpp"
#include "knotinv/framing.hpp"
#include "knotinv/quadrature.hpp"

namespace knotinv {

/// Writhe by the Gauss double integral over the periodic grid; the integrand
/// is continued by 0 on the diagonal.
InvariantReport writhe(const ClosedCurve& curve, const QuadratureConfig& q = {});

/// (1/2pi) * integral of torsion over arc length.
InvariantReport total_torsion(const ClosedCurve& curve, const QuadratureConfig& q = {});

/// (1/2pi) * integral of de2/ds . (e1 x e2) ds for the given framing.
InvariantReport twist(const ClosedCurve& curve, const Framing& framing, const QuadratureConfig& q = {});

struct LinkingResult {
  long lk = 0;
  double residual = 0.0;  ///< |integral - lk|
  InvariantReport integral;
  std::size_t inner_n = 0;  ///< resolution used on the second curve in the last pass
};

/// Two-curve Gauss integral rounded to the nearest integer.
LinkingResult linking_number(const ClosedCurve& c1, const ClosedCurve& c2, const QuadratureConfig& q = {});

/// Linking number of the curve with its push-off along the principal normal.
LinkingResult self_linking(const ClosedCurve& curve, double epsilon, const QuadratureConfig& q = {});

struct CalugareanuReport {
  long lk = 0;
  double wr = 0.0;
  double tw = 0.0;
  double residual = 0.0;     ///< |lk - wr - tw|
  double lk_residual = 0.0;  ///< distance of the linking integral to lk
  InvariantReport writhe;
  InvariantReport twist;
};

/// Computes Lk(K, K + eps e2), Wr(K) and Tw(e2) independently.
CalugareanuReport calugareanu_report(const ClosedCurve& curve, const Framing& framing, double epsilon,
                                     const QuadratureConfig& q = {});

}  // namespace knotinv
