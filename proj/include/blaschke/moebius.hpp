#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "blaschke/blaschke_product.hpp"

namespace blaschke {

/// Conjugacy classification of a degree-1 (Moebius) product.
enum class moebius_kind {
  identity,
  elliptic_finite_order,    ///< rotation-conjugate with exact period q
  elliptic_infinite_or_long,///< rotation-conjugate, no period found up to q_max
  parabolic,
  hyperbolic
};

struct moebius_report {
  moebius_kind kind;
  int order;                 ///< q for elliptic_finite_order, 0 otherwise
  cplx rotation_certificate; ///< eigenvalue ratio of the 2x2 coefficient matrix
};

inline const char* to_string(moebius_kind k) {
  switch (k) {
    case moebius_kind::identity: return "Identity";
    case moebius_kind::elliptic_finite_order: return "EllipticFiniteOrder";
    case moebius_kind::elliptic_infinite_or_long: return "EllipticInfiniteOrLong";
    case moebius_kind::parabolic: return "Parabolic";
    case moebius_kind::hyperbolic: return "Hyperbolic";
  }
  return "?";
}

/// Classifies the linear fractional map B(z) = lambda (z - z1)/(1 - conj(z1) z)
/// through its coefficient matrix [[lambda, -lambda z1], [-conj(z1), 1]]:
/// the eigenvalue ratio r is a conjugacy invariant.  Equal eigenvalues
/// (parabolic) are detected on the squared gap tr^2 - 4 det relative to the
/// matrix scale, NOT on the ratio: the square root turns input rounding of
/// size eps into an eigenvalue gap of size sqrt(eps) ~ 1e-8, so any ratio
/// test tight enough to be meaningful would reject maps that are parabolic
/// up to representation error.  The finite-order test uses tolerance 1e-9;
/// exact rationality of a rotation number is not decidable in floating
/// point, so a rotation whose power never returns within 1e-9 of the
/// identity by q_max reports elliptic_infinite_or_long.
inline moebius_report moebius_classify(const finite_blaschke_product& B, int q_max = 10000) {
  if (B.degree() != 1)
    throw std::invalid_argument("moebius_classify: degree must be 1");
  if (q_max < 1) throw std::invalid_argument("moebius_classify: q_max must be >= 1");

  const cplx a = B.lambda();
  const cplx b = -B.lambda() * B.zeros()[0];
  const cplx c = -std::conj(B.zeros()[0]);
  const cplx d{1.0, 0.0};

  if (std::abs(b) <= 1e-12 && std::abs(c) <= 1e-12 && std::abs(a - d) <= 1e-12)
    return {moebius_kind::identity, 0, cplx{1.0, 0.0}};

  const cplx tr = a + d;
  const cplx det = a * d - b * c;
  const cplx disc2 = tr * tr - 4.0 * det;
  const double scale2 = std::max(std::norm(tr), 4.0 * std::abs(det));
  if (std::abs(disc2) <= 1e-12 * scale2)
    return {moebius_kind::parabolic, 0, cplx{1.0, 0.0}};

  const cplx disc = std::sqrt(disc2);
  const cplx e1 = (tr + disc) / 2.0;
  const cplx e2 = (tr - disc) / 2.0;
  // deterministic ratio selection: larger modulus on top; for equal moduli
  // take the representative with nonnegative imaginary part
  cplx r = std::abs(e1) >= std::abs(e2) ? e1 / e2 : e2 / e1;
  if (std::abs(std::abs(e1) - std::abs(e2)) <= 1e-14 && r.imag() < 0.0) r = std::conj(r);

  if (std::abs(std::abs(r) - 1.0) > 1e-9) return {moebius_kind::hyperbolic, 0, r};

  cplx rq = r;
  for (int q = 1; q <= q_max; ++q) {
    if (std::abs(rq - cplx{1.0, 0.0}) < 1e-9)
      return {moebius_kind::elliptic_finite_order, q, r};
    rq *= r;
    rq /= std::abs(rq);  // keep the power exactly unimodular over long scans
  }
  return {moebius_kind::elliptic_infinite_or_long, 0, r};
}

}  // namespace blaschke
