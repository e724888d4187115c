#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blaschke/blaschke_product.hpp"
#include "blaschke/rootfinding.hpp"

namespace blaschke {

/// Solution set of B(z) = w, counted with multiplicity.
struct fiber_report {
  cplx target;
  std::vector<cplx> points;      ///< preimages, multiplicity by repetition
  std::vector<double> residuals; ///< |B(z_i) - w| per point
  std::optional<std::string> note;  ///< set when a root escaped to infinity (|w| > 1 only)
};

/// A fixed point of B with its multiplier B'(p).  multiplicity > 1 marks a
/// merged root cluster of the fixed-point polynomial (e.g. a parabolic point).
struct fixed_point_info {
  cplx point;
  cplx multiplier;
  int multiplicity;
};

struct fixed_point_list {
  std::vector<fixed_point_info> points;
  int polynomial_degree;   ///< exact degree of lambda*N(z) - z*D(z) after trimming
  bool degree_drop;        ///< true when the degree fell below degree(B) + 1
};

namespace detail {

/// Angle-only Newton polish of a near-circle preimage of a unimodular target:
/// parameterize z = e^{i theta} and solve arg(B(e^{i theta}) conj(w)) = 0.
/// The angular derivative of arg B(e^{i theta}) is exactly the boundary
/// derivative modulus (positive), so the iteration is well conditioned and
/// lands the point exactly on the circle by construction.
inline cplx polish_onto_circle(const finite_blaschke_product& B, cplx root, cplx w) {
  double theta = std::arg(root);
  for (int it = 0; it < 4; ++it) {
    const cplx z{std::cos(theta), std::sin(theta)};
    const double err = std::arg(B(z) * std::conj(w));
    const double slope = B.boundary_derivative_modulus(z);
    theta -= err / slope;
    if (std::abs(err) < 1e-15) break;
  }
  return cplx{std::cos(theta), std::sin(theta)};
}

}  // namespace detail

/// All solutions of B(z) = w: the roots of lambda*N(z) - w*D(z).  For
/// unimodular w every preimage is polished exactly onto the circle (the
/// circle carries no critical points, so those fibers are always simple);
/// elsewhere coincident roots are merged at cluster radius 1e-6 and repeated
/// per multiplicity.  For |w| <= 1 the fiber always has exactly degree(B)
/// points; for |w| > 1 a root may escape to infinity, which is reported in
/// the note instead of being fabricated.
inline fiber_report preimages(const finite_blaschke_product& B, cplx w) {
  const polynomial num = B.numerator();
  const polynomial den = B.denominator();
  const polynomial p = (B.lambda() * num) - (w * den);

  fiber_report rep;
  rep.target = w;

  const polynomial pt = p.trimmed();
  if (pt.degree() < B.degree())
    rep.note = "leading coefficient degenerated: " +
               std::to_string(B.degree() - pt.degree()) +
               " preimage(s) at infinity excluded";

  std::vector<cplx> roots = poly_roots(pt);
  const bool on_circle = std::abs(std::abs(w) - 1.0) <= 1e-10;
  if (on_circle) {
    for (auto& z : roots) z = detail::polish_onto_circle(B, z, w);
  } else {
    const auto clusters = merge_root_clusters(roots, 1e-6);
    roots.clear();
    for (const auto& cl : clusters) {
      const cplx center = cl.multiplicity > 1
                              ? refine_multiple_root(pt, cl.center, cl.multiplicity)
                              : cl.center;
      for (int i = 0; i < cl.multiplicity; ++i) roots.push_back(center);
    }
  }
  rep.points = std::move(roots);
  rep.residuals.reserve(rep.points.size());
  for (const auto& z : rep.points) rep.residuals.push_back(std::abs(B(z) - w));
  return rep;
}

/// Finite-plane fixed points of B: roots of lambda*N(z) - z*D(z), clustered
/// at radius 1e-4 (wide enough to re-merge the eps^(1/m) Aberth spread of a
/// parabolic multiple root; narrow enough that genuinely distinct fixed
/// points, which repel each other at scale >> 1e-2 for these low degrees,
/// are never conflated).  Each cluster is reported once, at its centroid,
/// with B' evaluated there.  The identity map has no isolated fixed points
/// and is rejected.  For the monomial products the top coefficient vanishes
/// identically; trimming handles that degree drop, and degree_drop records it.
inline fixed_point_list fixed_points(const finite_blaschke_product& B) {
  if (B.degree() == 1 && std::abs(B.zeros()[0]) < 1e-15 &&
      std::abs(B.lambda() - cplx{1.0, 0.0}) < 1e-15)
    throw std::invalid_argument("fixed_points: the identity map is excluded");

  const polynomial zpoly(std::vector<cplx>{cplx{0.0, 0.0}, cplx{1.0, 0.0}});
  const polynomial p = ((B.lambda() * B.numerator()) - (zpoly * B.denominator())).trimmed();

  fixed_point_list out;
  out.polynomial_degree = p.degree();
  out.degree_drop = p.degree() < B.degree() + 1;

  const auto clusters = merge_root_clusters(poly_roots(p), 1e-4);
  for (const auto& cl : clusters) {
    const cplx center =
        cl.multiplicity > 1 ? refine_multiple_root(p, cl.center, cl.multiplicity) : cl.center;
    out.points.push_back({center, B.derivative(center), cl.multiplicity});
  }
  return out;
}

/// Composition B1 after B2 as an explicit Blaschke product: its zeros are the
/// B2-preimages of the zeros of B1 (all interior, since interior points pull
/// back to interior points), and the unimodular constant is fixed by matching
/// the evaluation of the nested maps at a pole-free reference point.
inline finite_blaschke_product compose(const finite_blaschke_product& B1,
                                       const finite_blaschke_product& B2) {
  std::vector<cplx> zeros;
  zeros.reserve(static_cast<std::size_t>(B1.degree()) * B2.degree());
  for (const auto& a : B1.zeros()) {
    const fiber_report fib = preimages(B2, a);
    zeros.insert(zeros.end(), fib.points.begin(), fib.points.end());
  }

  // candidate product with lambda = 1, then fix lambda by value matching
  finite_blaschke_product shell(cplx{1.0, 0.0}, zeros);
  // reference points on the circle: |shell| = 1 there, so the match never
  // degenerates (an interior reference can underflow, e.g. |z|^32 for a
  // composed monomial); zeros are strictly inside and poles strictly
  // outside, so circle evaluations are always defined
  const double ref_angles[] = {0.3, 1.1, 2.3};
  for (const double ang : ref_angles) {
    const cplx ref{std::cos(ang), std::sin(ang)};
    const cplx shell_val = shell(ref);
    if (std::abs(shell_val) < 1e-8) continue;
    cplx lam = B1(B2(ref)) / shell_val;
    const double mod = std::abs(lam);
    if (std::abs(mod - 1.0) > 1e-6)
      throw std::runtime_error("compose: unimodular constant mismatch (|lambda| = " +
                               std::to_string(mod) + ")");
    return finite_blaschke_product(lam / mod, std::move(zeros));
  }
  throw std::runtime_error("compose: no usable reference point (degenerate zero set)");
}

/// m-fold self-composition; degree grows as degree(B)^m and is capped at 4096.
inline finite_blaschke_product iterate(const finite_blaschke_product& B, int m) {
  if (m < 1) throw std::invalid_argument("iterate: m must be >= 1");
  const double final_degree = std::pow(static_cast<double>(B.degree()), m);
  if (final_degree > 4096.0)
    throw std::invalid_argument("iterate: resulting degree " + std::to_string(final_degree) +
                                " exceeds the 4096 cap");
  finite_blaschke_product acc = B;
  for (int i = 1; i < m; ++i) acc = compose(B, acc);
  return acc;
}

}  // namespace blaschke
