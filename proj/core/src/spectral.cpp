#include "knotinv/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>

namespace knotinv {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

class RealForward {
 public:
  explicit RealForward(std::size_t n)
      : n_(n), in_(fftw_buffer<double>(n)), out_(fftw_buffer<fftw_complex>(n / 2 + 1)) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_ESTIMATE);
  }
  ~RealForward() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  RealForward(const RealForward&) = delete;
  RealForward& operator=(const RealForward&) = delete;

  double* input() { return in_.get(); }
  std::complex<double> output(std::size_t k) const { return {out_[k][0], out_[k][1]}; }
  void run() { fftw_execute(plan_); }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  FftwBuffer<double> in_;
  FftwBuffer<fftw_complex> out_;
  fftw_plan plan_;
};

class RealBackward {
 public:
  explicit RealBackward(std::size_t n)
      : n_(n), in_(fftw_buffer<fftw_complex>(n / 2 + 1)), out_(fftw_buffer<double>(n)) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_ESTIMATE);
  }
  ~RealBackward() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  RealBackward(const RealBackward&) = delete;
  RealBackward& operator=(const RealBackward&) = delete;

  void set(std::size_t k, std::complex<double> c) {
    in_[k][0] = c.real();
    in_[k][1] = c.imag();
  }
  void clear() {
    for (std::size_t k = 0; k <= n_ / 2; ++k) set(k, 0.0);
  }
  // c2r destroys its input, so callers refill before every run.
  void run() { fftw_execute(plan_); }
  double output(std::size_t j) const { return out_[j]; }

 private:
  std::size_t n_;
  FftwBuffer<fftw_complex> in_;
  FftwBuffer<double> out_;
  fftw_plan plan_;
};

// (i k)^m
std::complex<double> ik_power(double k, int m) {
  std::complex<double> r = 1.0;
  for (int i = 0; i < m; ++i) r *= std::complex<double>(0.0, k);
  return r;
}

}  // namespace

TrigSeries::TrigSeries(std::vector<Vec3> cos_coef, std::vector<Vec3> sin_coef)
    : cos_(std::move(cos_coef)), sin_(std::move(sin_coef)) {
  const std::size_t m = std::max(cos_.size(), sin_.size());
  cos_.resize(m, Vec3::Zero());
  sin_.resize(m, Vec3::Zero());
  if (!sin_.empty()) sin_[0] = Vec3::Zero();
}

TrigSeries TrigSeries::interpolate(std::span<const Vec3> samples) {
  const std::size_t n = samples.size();
  const std::size_t kmax = n / 2;
  std::vector<Vec3> a(kmax + 1, Vec3::Zero());
  std::vector<Vec3> b(kmax + 1, Vec3::Zero());
  RealForward fft(n);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t j = 0; j < n; ++j) fft.input()[j] = samples[j][c];
    fft.run();
    const double inv_n = 1.0 / static_cast<double>(n);
    a[0][c] = fft.output(0).real() * inv_n;
    for (std::size_t k = 1; k <= kmax; ++k) {
      const auto x = fft.output(k);
      if (n % 2 == 0 && k == kmax) {
        a[k][c] = x.real() * inv_n;
      } else {
        a[k][c] = 2.0 * x.real() * inv_n;
        b[k][c] = -2.0 * x.imag() * inv_n;
      }
    }
  }
  return TrigSeries(std::move(a), std::move(b));
}

Jet TrigSeries::jet(double u) const {
  Jet j;
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double c = std::cos(kk * u);
    const double s = std::sin(kk * u);
    const Vec3& a = cos_[k];
    const Vec3& b = sin_[k];
    const Vec3 even = a * c + b * s;
    const Vec3 odd = b * c - a * s;
    j.p += even;
    j.d1 += kk * odd;
    j.d2 -= kk * kk * even;
    j.d3 -= kk * kk * kk * odd;
  }
  return j;
}

Vec3 TrigSeries::value(double u) const {
  Vec3 p = Vec3::Zero();
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    const double kk = static_cast<double>(k);
    p += cos_[k] * std::cos(kk * u) + sin_[k] * std::sin(kk * u);
  }
  return p;
}

std::vector<Jet> TrigSeries::grid(std::size_t n) const {
  std::vector<Jet> out(n);
  const std::size_t kmax = max_frequency();
  if (2 * kmax > n || n < 8) {
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = jet(2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n));
    }
    return out;
  }
  RealBackward fft(n);
  for (int order = 0; order < 4; ++order) {
    for (int c = 0; c < 3; ++c) {
      fft.clear();
      for (std::size_t k = 0; k <= kmax; ++k) {
        const double kk = static_cast<double>(k);
        const std::complex<double> coef(cos_[k][c], -sin_[k][c]);
        const std::complex<double> d = ik_power(kk, order) * coef;
        if (k == 0) {
          fft.set(0, d.real());
        } else if (2 * k == n) {
          fft.set(k, d.real());
        } else {
          fft.set(k, 0.5 * d);
        }
      }
      fft.run();
      for (std::size_t j = 0; j < n; ++j) {
        const double v = fft.output(j);
        switch (order) {
          case 0: out[j].p[c] = v; break;
          case 1: out[j].d1[c] = v; break;
          case 2: out[j].d2[c] = v; break;
          default: out[j].d3[c] = v; break;
        }
      }
    }
  }
  return out;
}

TrigSeries TrigSeries::derivative() const {
  std::vector<Vec3> a(cos_.size(), Vec3::Zero());
  std::vector<Vec3> b(sin_.size(), Vec3::Zero());
  for (std::size_t k = 1; k < cos_.size(); ++k) {
    const double kk = static_cast<double>(k);
    a[k] = kk * sin_[k];
    b[k] = -kk * cos_[k];
  }
  return TrigSeries(std::move(a), std::move(b));
}

std::vector<double> periodic_derivative(std::span<const double> samples) {
  const std::size_t n = samples.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  RealForward fwd(n);
  RealBackward bwd(n);
  for (std::size_t j = 0; j < n; ++j) fwd.input()[j] = samples[j];
  fwd.run();
  bwd.clear();
  for (std::size_t k = 1; k <= n / 2; ++k) {
    if (2 * k == n) continue;  // Nyquist mode has no odd derivative on the grid
    bwd.set(k, std::complex<double>(0.0, static_cast<double>(k)) * fwd.output(k));
  }
  bwd.run();
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = bwd.output(j) * inv_n;
  return out;
}

std::vector<Vec3> periodic_derivative(std::span<const Vec3> samples) {
  const std::size_t n = samples.size();
  std::vector<Vec3> out(n, Vec3::Zero());
  std::vector<double> comp(n);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t j = 0; j < n; ++j) comp[j] = samples[j][c];
    const auto d = periodic_derivative(std::span<const double>(comp));
    for (std::size_t j = 0; j < n; ++j) out[j][c] = d[j];
  }
  return out;
}

}  // namespace knotinv
