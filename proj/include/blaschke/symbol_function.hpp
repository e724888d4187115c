#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "blaschke/fft.hpp"

namespace blaschke {

/// A function on the unit circle held as uniform samples on the grid
/// zeta_j = e^{2 pi i j / M} (M a power of two) together with its Fourier
/// coefficients c_k for -M/2 < k <= M/2 (FFT order internally).  Instances
/// are immutable; coefficients are computed once at construction.
class symbol_function {
 public:
  explicit symbol_function(std::vector<cplx> samples)
      : samples_(std::move(samples)), coeffs_(fourier_coeffs(samples_)) {
    if (samples_.size() < 8 || !detail::is_pow2(samples_.size()))
      throw std::invalid_argument("symbol_function: grid size must be a power of two >= 8");
  }

  /// Samples an arbitrary circle function on the grid of size M.
  template <typename F>
  static symbol_function from_function(F&& f, std::size_t M) {
    std::vector<cplx> s(M);
    for (std::size_t j = 0; j < M; ++j) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M);
      s[j] = f(cplx{std::cos(th), std::sin(th)});
    }
    return symbol_function(std::move(s));
  }

  /// Builds the trigonometric polynomial sum_k c_k z^k from a signed-frequency
  /// coefficient map; frequencies must satisfy -M/2 < k <= M/2.
  static symbol_function from_coeffs(const std::map<long, cplx>& c, std::size_t M) {
    if (!detail::is_pow2(M) || M < 8)
      throw std::invalid_argument("symbol_function: grid size must be a power of two >= 8");
    std::vector<cplx> spec(M, cplx{0.0, 0.0});
    for (const auto& [k, v] : c) {
      if (k <= -static_cast<long>(M) / 2 || k > static_cast<long>(M) / 2)
        throw std::invalid_argument("symbol_function: frequency outside (-M/2, M/2]");
      const std::size_t idx = k >= 0 ? static_cast<std::size_t>(k)
                                     : M - static_cast<std::size_t>(-k);
      spec[idx] = v;
    }
    // samples = inverse transform of (M * coeffs)
    for (auto& v : spec) v *= static_cast<double>(M);
    return symbol_function(ifft(std::move(spec)));
  }

  /// The Laurent monomial e_k(z) = z^k.
  static symbol_function harmonic(long k, std::size_t M) {
    return from_coeffs({{k, cplx{1.0, 0.0}}}, M);
  }

  std::size_t grid_size() const { return samples_.size(); }
  const std::vector<cplx>& samples() const { return samples_; }

  /// Fourier coefficients in FFT index order (see fft_frequency).
  const std::vector<cplx>& coeffs_fft_order() const { return coeffs_; }

  /// Coefficient of z^k; zero outside the representable range.
  cplx coeff(long k) const {
    const long M = static_cast<long>(samples_.size());
    if (k <= -M / 2 || k > M / 2) return cplx{0.0, 0.0};
    const std::size_t idx =
        k >= 0 ? static_cast<std::size_t>(k) : samples_.size() - static_cast<std::size_t>(-k);
    return coeffs_[idx];
  }

  /// Largest |k| with |c_k| > 1e-13 (0 for constants).
  long bandwidth() const {
    long bw = 0;
    const long M = static_cast<long>(samples_.size());
    for (long k = -M / 2 + 1; k <= M / 2; ++k)
      if (std::abs(coeff(k)) > 1e-13) bw = std::max(bw, std::abs(k));
    return bw;
  }

  /// Grid node zeta_j.
  cplx node(std::size_t j) const {
    const double th =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples_.size());
    return cplx{std::cos(th), std::sin(th)};
  }

  /// Trigonometric interpolant sum_{-M/2 < k <= M/2} c_k z^k, for off-grid
  /// circle points.  On-grid callers should read samples() directly.
  cplx interpolate(cplx z) const {
    const long M = static_cast<long>(samples_.size());
    const cplx zc = std::conj(z);  // z^-1 on the circle
    // Horner in both directions: positive frequencies 0..M/2 in z,
    // negative frequencies -1..-M/2+1 in conj(z).
    cplx pos{0.0, 0.0};
    for (long k = M / 2; k >= 0; --k) pos = pos * z + coeff(k);
    cplx neg{0.0, 0.0};
    for (long k = M / 2 - 1; k >= 1; --k) neg = (neg + coeff(-k)) * zc;
    return pos + neg;
  }

  /// Pointwise product on the shared grid.
  friend symbol_function operator*(const symbol_function& a, const symbol_function& b) {
    if (a.grid_size() != b.grid_size())
      throw std::invalid_argument("symbol_function: grid size mismatch");
    std::vector<cplx> s(a.grid_size());
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = a.samples_[j] * b.samples_[j];
    return symbol_function(std::move(s));
  }

  /// Pointwise complex conjugate (reflects the coefficient sequence).
  symbol_function conjugated() const {
    std::vector<cplx> s(samples_.size());
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = std::conj(samples_[j]);
    return symbol_function(std::move(s));
  }

 private:
  std::vector<cplx> samples_;
  std::vector<cplx> coeffs_;
};

}  // namespace blaschke
