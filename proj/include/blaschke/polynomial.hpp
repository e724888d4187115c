#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "blaschke/fft.hpp"

namespace blaschke {

/// Dense univariate polynomial over C, coefficients in ascending degree order.
/// The logical degree ignores trailing coefficients of modulus <= 1e-14
/// (construction keeps the storage, degree() reports the trimmed value).
class polynomial {
 public:
  static constexpr double trim_threshold = 1e-14;

  polynomial() : coeffs_{cplx{0.0, 0.0}} {}
  explicit polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(cplx{0.0, 0.0});
  }

  const std::vector<cplx>& coeffs() const { return coeffs_; }

  /// Index of the last coefficient with modulus above the trim threshold
  /// (0 for the zero polynomial).
  int degree() const {
    for (std::size_t i = coeffs_.size(); i-- > 0;)
      if (std::abs(coeffs_[i]) > trim_threshold) return static_cast<int>(i);
    return 0;
  }

  /// Drop trailing near-zero coefficients so that storage matches degree().
  polynomial trimmed() const {
    std::vector<cplx> c(coeffs_.begin(), coeffs_.begin() + degree() + 1);
    return polynomial(std::move(c));
  }

  cplx operator()(cplx z) const {
    cplx acc{0.0, 0.0};
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
  }

  polynomial derivative() const {
    if (coeffs_.size() <= 1) return polynomial{};
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return polynomial(std::move(d));
  }

  /// First (m+1) Taylor coefficients of this polynomial about z0, i.e.
  /// p(z0 + h) = sum_k jet[k] h^k + O(h^{m+1}), via repeated synthetic
  /// division (Horner shift) -- numerically benign, O(m * deg).
  std::vector<cplx> taylor_jet(cplx z0, int m) const {
    std::vector<cplx> work = coeffs_;
    std::vector<cplx> jet;
    jet.reserve(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
      if (work.empty()) {
        jet.push_back(cplx{0.0, 0.0});
        continue;
      }
      // divide work by (z - z0): the remainder is the next jet coefficient,
      // the quotient (shifted down one slot, dead top entry dropped) feeds
      // the following round
      cplx rem{0.0, 0.0};
      for (std::size_t i = work.size(); i-- > 0;) {
        const cplx next = work[i] + rem * z0;
        work[i] = rem;
        rem = next;
      }
      jet.push_back(rem);
      work.pop_back();
    }
    return jet;
  }

  friend polynomial operator+(const polynomial& a, const polynomial& b) {
    std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return polynomial(std::move(c));
  }

  friend polynomial operator-(const polynomial& a, const polynomial& b) {
    std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return polynomial(std::move(c));
  }

  friend polynomial operator*(const polynomial& a, const polynomial& b) {
    std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return polynomial(std::move(c));
  }

  friend polynomial operator*(cplx s, const polynomial& a) {
    std::vector<cplx> c = a.coeffs_;
    for (auto& v : c) v *= s;
    return polynomial(std::move(c));
  }

 private:
  std::vector<cplx> coeffs_;
};

/// Quotient jet of two truncated power series: returns the first n = num.size()
/// coefficients of num(h)/den(h).  Requires den[0] != 0.
inline std::vector<cplx> series_divide(const std::vector<cplx>& num, const std::vector<cplx>& den) {
  if (den.empty() || std::abs(den[0]) < 1e-300)
    throw std::domain_error("series_divide: denominator vanishes at the expansion point");
  std::vector<cplx> q(num.size());
  for (std::size_t k = 0; k < num.size(); ++k) {
    cplx acc = num[k];
    for (std::size_t j = 1; j <= k && j < den.size(); ++j) acc -= den[j] * q[k - j];
    q[k] = acc / den[0];
  }
  return q;
}

}  // namespace blaschke
