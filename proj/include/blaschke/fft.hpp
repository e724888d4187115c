#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace blaschke {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 Cooley-Tukey transform.
/// sign = -1: forward (engineering convention e^{-2pi i jk/n});
/// sign = +1: inverse kernel (caller divides by n).
inline void fft_radix2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace detail

/// Forward DFT: X[k] = sum_j x[j] e^{-2pi i jk/n}.  Size must be a power of two.
inline std::vector<cplx> fft(std::vector<cplx> x) {
  detail::fft_radix2(x, -1);
  return x;
}

/// Inverse DFT: x[j] = (1/n) sum_k X[k] e^{+2pi i jk/n}.
inline std::vector<cplx> ifft(std::vector<cplx> x) {
  detail::fft_radix2(x, +1);
  const double inv = 1.0 / static_cast<double>(x.size());
  for (auto& v : x) v *= inv;
  return x;
}

/// Fourier coefficients of samples f(e^{2pi i j/M}), j = 0..M-1:
/// c[k] = (1/M) sum_j f_j e^{-2pi i jk/M}, returned in FFT order
/// (index m represents frequency m for m <= M/2, m - M otherwise).
inline std::vector<cplx> fourier_coeffs(std::vector<cplx> samples) {
  auto c = fft(std::move(samples));
  const double inv = 1.0 / static_cast<double>(c.size());
  for (auto& v : c) v *= inv;
  return c;
}

/// Signed frequency represented by FFT-order index m in a length-M transform:
/// frequencies run over (-M/2, M/2].
inline long fft_frequency(std::size_t m, std::size_t M) {
  return m <= M / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(M);
}

}  // namespace blaschke
