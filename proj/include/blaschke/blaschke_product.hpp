#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blaschke/polynomial.hpp"

namespace blaschke {

/// Finite Blaschke product  B(z) = lambda * prod_k (z - z_k) / (1 - conj(z_k) z)
/// with |lambda| = 1 and every zero strictly inside the unit disk.  Immutable
/// after construction; all member functions are const and thread-safe.
class finite_blaschke_product {
 public:
  /// Constructs the product; rejects non-unimodular lambda (tolerance 1e-12),
  /// zeros with |z_k| >= 1 - 1e-12, and an empty zero list.  lambda is
  /// projected to exact unit modulus after the tolerance check so that
  /// boundary evaluations stay unimodular to machine precision.
  finite_blaschke_product(cplx lambda, std::vector<cplx> zeros)
      : lambda_(lambda), zeros_(std::move(zeros)) {
    if (zeros_.empty())
      throw std::invalid_argument("finite_blaschke_product: zero list must be nonempty");
    if (std::abs(std::abs(lambda_) - 1.0) > 1e-12)
      throw std::invalid_argument("finite_blaschke_product: |lambda| must be 1 (within 1e-12)");
    lambda_ /= std::abs(lambda_);
    for (const auto& z : zeros_) {
      if (std::abs(z) >= 1.0 - 1e-12)
        throw std::invalid_argument(
            "finite_blaschke_product: zero at modulus " + std::to_string(std::abs(z)) +
            " is on or outside the unit circle (must be < 1 - 1e-12)");
      if (std::abs(z) > 0.95) near_circle_warning_ = true;
    }
  }

  cplx lambda() const { return lambda_; }
  const std::vector<cplx>& zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  /// True when some zero has modulus > 0.95: Fourier tails of powers of B
  /// decay slowly and downstream matrix truncations lose accuracy.
  bool near_circle_warning() const { return near_circle_warning_; }

  /// B(z), evaluated factor by factor.  Throws a domain error when z is
  /// within 1e-14 of a pole 1/conj(z_k) (poles lie outside the closed disk,
  /// so evaluation anywhere on |z| <= 1 is always safe).
  cplx operator()(cplx z) const {
    cplx acc = lambda_;
    for (const auto& zk : zeros_) {
      const cplx den = 1.0 - std::conj(zk) * z;
      if (std::abs(den) < 1e-14)
        throw std::domain_error("finite_blaschke_product: evaluation at a pole");
      acc *= (z - zk) / den;
    }
    return acc;
  }

  /// B'(z) in the product-rule-safe form  B(z) * sum_k of the factor's
  /// logarithmic derivative -- except that cancellation at z = z_k is avoided
  /// by splitting off the vanishing factor: each term multiplies the
  /// remaining factors rather than dividing B by the k-th factor.
  cplx derivative(cplx z) const {
    // d/dz [ (z-a)/(1-conj(a)z) ] = (1 - |a|^2) / (1 - conj(a) z)^2
    cplx total{0.0, 0.0};
    for (std::size_t k = 0; k < zeros_.size(); ++k) {
      cplx term = lambda_;
      for (std::size_t j = 0; j < zeros_.size(); ++j) {
        const cplx den = 1.0 - std::conj(zeros_[j]) * z;
        if (std::abs(den) < 1e-14)
          throw std::domain_error("finite_blaschke_product: derivative at a pole");
        if (j == k)
          term *= (1.0 - std::norm(zeros_[j])) / (den * den);
        else
          term *= (z - zeros_[j]) / den;
      }
      total += term;
    }
    return total;
  }

  /// |B'(zeta)| for |zeta| = 1 via the boundary identity
  ///   |B'(zeta)| = sum_k (1 - |z_k|^2) / |zeta - z_k|^2 ,
  /// which is strictly positive (the circle carries no critical points).
  /// Rejects inputs off the circle by more than 1e-10.
  double boundary_derivative_modulus(cplx zeta) const {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-10)
      throw std::invalid_argument("boundary_derivative_modulus: |zeta| must be 1 (within 1e-10)");
    double s = 0.0;
    for (const auto& zk : zeros_) s += (1.0 - std::norm(zk)) / std::norm(zeta - zk);
    return s;
  }

  /// Numerator polynomial N(z) = prod (z - z_k); B = lambda * N / D.
  polynomial numerator() const {
    polynomial n(std::vector<cplx>{cplx{1.0, 0.0}});
    for (const auto& zk : zeros_) n = n * polynomial(std::vector<cplx>{-zk, cplx{1.0, 0.0}});
    return n;
  }

  /// Denominator polynomial D(z) = prod (1 - conj(z_k) z).
  polynomial denominator() const {
    polynomial d(std::vector<cplx>{cplx{1.0, 0.0}});
    for (const auto& zk : zeros_)
      d = d * polynomial(std::vector<cplx>{cplx{1.0, 0.0}, -std::conj(zk)});
    return d;
  }

  /// First (m+1) Taylor coefficients of B about z0 (B(z0+h) = sum jet[k] h^k),
  /// computed by dividing the numerator jet by the denominator jet.  Used for
  /// B''(w0) and B'''(w0) in the parabolic petal split.
  std::vector<cplx> taylor_jet(cplx z0, int m) const {
    auto njet = numerator().taylor_jet(z0, m);
    const auto djet = denominator().taylor_jet(z0, m);
    for (auto& v : njet) v *= lambda_;
    return series_divide(njet, djet);
  }

 private:
  cplx lambda_;
  std::vector<cplx> zeros_;
  bool near_circle_warning_ = false;
};

/// Convenience factory mirroring the constructor.
inline finite_blaschke_product make_blaschke(cplx lambda, std::vector<cplx> zeros) {
  return finite_blaschke_product(lambda, std::move(zeros));
}

/// The monomial product P_n(z) = z^n.
inline finite_blaschke_product monomial_product(int n) {
  if (n < 1) throw std::invalid_argument("monomial_product: degree must be >= 1");
  return finite_blaschke_product(cplx{1.0, 0.0},
                                 std::vector<cplx>(static_cast<std::size_t>(n), cplx{0.0, 0.0}));
}

}  // namespace blaschke
