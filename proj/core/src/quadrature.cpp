#include "knotinv/quadrature.hpp"

#include "knotinv/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <thread>

namespace knotinv {

void QuadratureConfig::validate() const {
  if (n < 32 || !std::has_single_bit(n)) {
    throw KnotError(ErrorCode::InvalidConfig, "quadrature n must be a power of two >= 32, got " + std::to_string(n));
  }
  if (refinement < 0 || refinement > 8) {
    throw KnotError(ErrorCode::InvalidConfig, "refinement must be in [0, 8]");
  }
  if (!(tol > 0.0)) {
    throw KnotError(ErrorCode::InvalidConfig, "tol must be positive");
  }
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(const std::vector<double>& terms) {
  CompensatedSum s;
  for (double t : terms) s.add(t);
  return s.value();
}

std::vector<double> periodic_weights(std::size_t n, double period, QuadratureRule rule) {
  const double h = period / static_cast<double>(n);
  std::vector<double> w(n, h);
  if (rule == QuadratureRule::Simpson) {
    // n is even, so the 4/3, 2/3 pattern wraps consistently around the period.
    for (std::size_t i = 0; i < n; ++i) w[i] = (i % 2 == 0 ? 2.0 : 4.0) * h / 3.0;
  }
  return w;
}

double sum_rows(std::size_t rows, const std::function<double(std::size_t)>& row) {
  std::vector<double> partial(rows, 0.0);
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), std::max<std::size_t>(rows / 64, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < rows; ++i) partial[i] = row(i);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < rows; i += workers) partial[i] = row(i);
      });
    }
  }
  return compensated_sum(partial);
}

InvariantReport refine(const QuadratureConfig& q, const std::function<double(std::size_t)>& pass,
                       const std::string& what, bool enforce_tol) {
  q.validate();
  InvariantReport r;
  double previous = 0.0;
  for (int level = 0; level <= q.refinement; ++level) {
    const std::size_t n = q.n << level;
    const double value = pass(n);
    if (level > 0) r.estimated_error = std::abs(value - previous);
    previous = value;
    r.value = value;
    r.n_used = n;
  }
  if (enforce_tol && q.refinement > 0 && !(r.estimated_error <= q.tol)) {
    std::ostringstream msg;
    msg.precision(3);
    msg << what << ": refinement difference " << r.estimated_error << " exceeds tol " << q.tol << " at n=" << r.n_used;
    throw KnotError(ErrorCode::ToleranceNotMet, msg.str());
  }
  return r;
}

}  // namespace knotinv
