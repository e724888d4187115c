#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "blaschke/blaschke_product.hpp"
#include "blaschke/fibers.hpp"
#include "blaschke/symbol_function.hpp"

namespace blaschke {

/// Weighted fiber of a unimodular point: the atoms zeta of the measure
/// sum_{B(zeta)=w} |B'(zeta)|^{-1} delta_zeta together with their weights.
struct weighted_fiber {
  std::vector<cplx> points;
  std::vector<double> weights;  ///< 1 / |B'(point)|, boundary-derivative form
};

/// Fiber of w with the canonical transfer weights attached.
inline weighted_fiber clark_fiber(const finite_blaschke_product& B, cplx w) {
  const fiber_report fib = preimages(B, w);
  weighted_fiber out;
  out.points = fib.points;
  out.weights.reserve(out.points.size());
  for (const auto& z : out.points)
    out.weights.push_back(1.0 / B.boundary_derivative_modulus(z));
  return out;
}

/// Transfer operator applied to an arbitrary circle function at one point:
///   (A_B a)(w) = sum_{B(z) = w} a(z) / |B'(z)| ,  |w| = 1.
template <typename F>
inline cplx aleksandrov(const finite_blaschke_product& B, F&& a, cplx w) {
  if (std::abs(std::abs(w) - 1.0) > 1e-10)
    throw std::invalid_argument("aleksandrov: |w| must be 1");
  const weighted_fiber fib = clark_fiber(B, w);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < fib.points.size(); ++i) acc += fib.weights[i] * a(fib.points[i]);
  return acc;
}

/// Transfer operator applied to a sampled symbol at one point; off-grid
/// preimages are read through the trigonometric interpolant.
inline cplx aleksandrov(const finite_blaschke_product& B, const symbol_function& a, cplx w) {
  return aleksandrov(B, [&a](cplx z) { return a.interpolate(z); }, w);
}

/// Pointwise transfer of a whole sampled symbol; the result shares the grid.
inline symbol_function aleksandrov_grid(const finite_blaschke_product& B,
                                        const symbol_function& a) {
  if (a.grid_size() < 64)
    throw std::invalid_argument("aleksandrov_grid: grid size must be >= 64");
  std::vector<cplx> out(a.grid_size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = aleksandrov(B, a, a.node(j));
  return symbol_function(std::move(out));
}

/// Bimodule inner product <xi, eta> = A_B(conj(xi) * eta) as a grid function.
inline symbol_function xr_inner(const finite_blaschke_product& B, const symbol_function& xi,
                                const symbol_function& eta) {
  if (xi.grid_size() != eta.grid_size())
    throw std::invalid_argument("xr_inner: grid size mismatch");
  return aleksandrov_grid(B, xi.conjugated() * eta);
}

/// Residual of the total-mass identity at one unimodular point:
///   sum_fiber 1/|B'(z)|  =  (1 - |B(0)|^2) / |w - B(0)|^2
/// (the Poisson kernel of the disk at B(0)).
inline double poisson_mass_residual(const finite_blaschke_product& B, cplx w) {
  const weighted_fiber fib = clark_fiber(B, w);
  double mass = 0.0;
  for (double wt : fib.weights) mass += wt;
  const cplx b0 = B(cplx{0.0, 0.0});
  const double poisson = (1.0 - std::norm(b0)) / std::norm(w - b0);
  return std::abs(mass - poisson);
}

/// The orthonormal rational basis attached to the ordered zero list:
///   u_1(z) = sqrt(1-|z_1|^2) / (1 - conj(z_1) z),
///   u_i(z) = sqrt(1-|z_i|^2) / (1 - conj(z_i) z) * prod_{k<i} (z-z_k)/(1-conj(z_k) z).
/// For the monomial product the formulas collapse to u_k(z) = z^{k-1}.
class tm_basis {
 public:
  explicit tm_basis(finite_blaschke_product B) : B_(std::move(B)) {}

  int size() const { return B_.degree(); }
  const finite_blaschke_product& source() const { return B_; }

  /// u_i(z), 1-based index i in [1, degree].
  cplx evaluate(int i, cplx z) const {
    if (i < 1 || i > B_.degree()) throw std::invalid_argument("tm_basis: index out of range");
    const auto& zs = B_.zeros();
    const cplx zi = zs[static_cast<std::size_t>(i - 1)];
    cplx v = std::sqrt(1.0 - std::norm(zi)) / (1.0 - std::conj(zi) * z);
    for (int k = 0; k < i - 1; ++k) {
      const cplx zk = zs[static_cast<std::size_t>(k)];
      v *= (z - zk) / (1.0 - std::conj(zk) * z);
    }
    return v;
  }

  /// All n values u_1(z)..u_n(z) in one pass (shares the partial product).
  std::vector<cplx> evaluate_all(cplx z) const {
    const auto& zs = B_.zeros();
    std::vector<cplx> out(zs.size());
    cplx partial{1.0, 0.0};
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const cplx den = 1.0 - std::conj(zs[i]) * z;
      out[i] = partial * std::sqrt(1.0 - std::norm(zs[i])) / den;
      partial *= (z - zs[i]) / den;
    }
    return out;
  }

  /// Samples u_i on a grid as a symbol.
  symbol_function sampled(int i, std::size_t M) const {
    return symbol_function::from_function([this, i](cplx z) { return evaluate(i, z); }, M);
  }

 private:
  finite_blaschke_product B_;
};

/// Orthonormality defect of the basis under the bimodule inner product:
///   max over grid nodes w and index pairs (i,j) of |A_B(conj(u_i) u_j)(w) - delta_ij|.
/// Evaluated per node with a fresh fiber solve; exact basis values (not
/// interpolants) enter the sum, so the grid only selects the probe points.
inline double tm_orthonormality_defect(const finite_blaschke_product& B, std::size_t grid_size) {
  if (grid_size < 64)
    throw std::invalid_argument("tm_orthonormality_defect: grid size must be >= 64");
  const tm_basis basis(B);
  const int n = basis.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double th =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_size);
    const cplx w{std::cos(th), std::sin(th)};
    const weighted_fiber fib = clark_fiber(B, w);
    // Gram matrix at this node: G[i][k] = sum_z weight(z) conj(u_i(z)) u_k(z)
    std::vector<cplx> gram(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
    for (std::size_t p = 0; p < fib.points.size(); ++p) {
      const auto u = basis.evaluate_all(fib.points[p]);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          gram[static_cast<std::size_t>(i) * n + k] +=
              fib.weights[p] * std::conj(u[static_cast<std::size_t>(i)]) *
              u[static_cast<std::size_t>(k)];
    }
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const cplx expect = i == k ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
        worst = std::max(worst, std::abs(gram[static_cast<std::size_t>(i) * n + k] - expect));
      }
  }
  return worst;
}

/// Defect with automatic grid refinement: the grid doubles (up to `cap`)
/// until two successive defects agree within a factor of two, guarding
/// against an accidentally unresolving probe grid.
inline double tm_orthonormality_defect_stable(const finite_blaschke_product& B,
                                              std::size_t grid = 256, std::size_t cap = 4096) {
  double prev = tm_orthonormality_defect(B, grid);
  while (grid * 2 <= cap) {
    grid *= 2;
    const double cur = tm_orthonormality_defect(B, grid);
    const double lo = std::min(prev, cur), hi = std::max(prev, cur);
    prev = cur;
    if (hi <= 2.0 * lo + 1e-14) break;
  }
  return prev;
}

}  // namespace blaschke
