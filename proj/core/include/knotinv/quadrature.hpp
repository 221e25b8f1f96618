#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace knotinv {

enum class QuadratureRule { Trapezoid, Simpson };

/// Resolution and convergence policy shared by every integral in the library.
struct QuadratureConfig {
  std::size_t n = 512;      ///< grid points per circle factor; power of two, >= 32
  int refinement = 2;       ///< grid doublings after the first pass
  double tol = 1e-6;        ///< bound on |last - previous| refinement
  QuadratureRule rule = QuadratureRule::Trapezoid;

  /// Throws KnotError(InvalidConfig) on an unusable configuration.
  void validate() const;

  /// Grid size used by the last refinement pass.
  std::size_t final_n() const { return n << refinement; }
};

struct InvariantReport {
  double value = 0.0;
  double estimated_error = 0.0;  ///< |last - previous refinement|
  std::size_t n_used = 0;
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(const std::vector<double>& terms);

/// Weights of the closed periodic rule on n points spanning one period of
/// length `period`.
std::vector<double> periodic_weights(std::size_t n, double period, QuadratureRule rule);

/// Evaluates row(i) for i in [0, rows), possibly on several threads, and sums
/// the row results in index order so the total does not depend on how rows
/// were partitioned.
double sum_rows(std::size_t rows, const std::function<double(std::size_t)>& row);

/// Runs `pass` at n, 2n, ..., n*2^refinement and reports the last value with
/// the difference of the last two passes. Throws ToleranceNotMet when
/// `enforce_tol` is set and the difference exceeds q.tol.
InvariantReport refine(const QuadratureConfig& q, const std::function<double(std::size_t)>& pass,
                       const std::string& what, bool enforce_tol = true);

}  // namespace knotinv
