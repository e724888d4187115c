#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "blaschke/blaschke_product.hpp"
#include "blaschke/prng.hpp"
#include "blaschke/symbol_function.hpp"
#include "blaschke/transfer.hpp"

namespace blaschke {

using matrix_c = Eigen::MatrixXcd;

/// Finite section of a Hardy-space operator in the monomial basis
/// e_k(z) = z^k, k = 0..cutoff-1.
struct truncated_operator {
  matrix_c entries;
  int cutoff;
  struct meta {
    std::size_t sample_grid = 0;   ///< circle grid used to extract coefficients
    double tail_estimate = 0.0;    ///< aliasing bound (max|z_k|)^(grid - n*cutoff)
    bool slow_decay_warning = false;  ///< set when max|z_k| > 0.95
  } metadata;
};

namespace detail {

inline void check_cutoff(int N) {
  if (N < 8 || !is_pow2(static_cast<std::size_t>(N)))
    throw std::invalid_argument("truncated_operator: cutoff must be a power of two >= 8");
}

/// All defect checks restrict to the leading block where the finite section
/// agrees with the infinite operator: powers B^k spread Fourier energy up to
/// ~ max|B'| * k (stationary phase), and max|B'| on the circle can reach 6
/// for the worked examples, so columns up to N/8 keep their mass strictly
/// inside the window with a geometric tail; wider blocks (e.g. N/4) pick up
/// genuine truncation junk at the 1e-1 level.
inline int defect_block(int N) { return N / 8; }

/// Deterministic spectral-norm estimate: 50 power iterations on M*M with a
/// fixed splitmix64(42) start vector.  Relative accuracy ~1e-3, far finer
/// than the orders-of-magnitude margins in every tolerance it feeds, and
/// byte-reproducible across platforms (unlike SVD library internals).
inline double spectral_norm(const matrix_c& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  splitmix64 rng(42);
  Eigen::VectorXcd v(m.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  v.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < 50; ++it) {
    Eigen::VectorXcd w = m.adjoint() * (m * v);
    sigma2 = w.norm();
    if (sigma2 < 1e-300) return 0.0;
    v = w / sigma2;
  }
  return std::sqrt(sigma2);
}

/// Power-of-two circle grid for extracting Fourier coefficients of B^k,
/// k < N: big enough that aliasing from the analytic tail is negligible.
inline std::size_t sampling_grid(int degree, int N) {
  std::size_t M = 512;
  const std::size_t target = 16ull * static_cast<std::size_t>(degree) * static_cast<std::size_t>(N);
  while (M < target) M <<= 1;
  return M;
}

}  // namespace detail

/// Toeplitz section T_a: entries[j][k] = c_{j-k}(a).  The symbol grid must
/// resolve 2N coefficients.
inline truncated_operator toeplitz_matrix(const symbol_function& a, int N) {
  detail::check_cutoff(N);
  if (a.grid_size() < 2 * static_cast<std::size_t>(N))
    throw std::invalid_argument("toeplitz_matrix: symbol grid must be >= 2N");
  truncated_operator op{matrix_c(N, N), N, {a.grid_size(), 0.0, false}};
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) op.entries(j, k) = a.coeff(j - k);
  return op;
}

/// Composition section C_B: column k holds the first N Fourier coefficients
/// of B^k (pointwise power on the circle).  Sampling grid starts at
/// 2^ceil(log2(max(16 n N, 512))) and doubles (cap 2^16) while the aliasing
/// estimate (max|z_k|)^(M - nN) exceeds 1e-12; the estimate and grid size are
/// reported in metadata.  The monomial case has an exactly zero tail.
inline truncated_operator composition_matrix(const finite_blaschke_product& B, int N) {
  detail::check_cutoff(N);
  const int n = B.degree();
  double r = 0.0;
  for (const auto& z : B.zeros()) r = std::max(r, std::abs(z));

  std::size_t M = detail::sampling_grid(n, N);
  auto tail = [&](std::size_t grid) {
    if (r <= 0.0) return 0.0;
    return std::pow(r, static_cast<double>(grid) - static_cast<double>(n) * N);
  };
  while (tail(M) > 1e-12 && M < (1u << 16)) M <<= 1;

  truncated_operator op{matrix_c::Zero(N, N), N, {M, tail(M), r > 0.95}};

  std::vector<cplx> bvals(M), pw(M, cplx{1.0, 0.0});
  for (std::size_t j = 0; j < M; ++j) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M);
    bvals[j] = B(cplx{std::cos(th), std::sin(th)});
  }
  for (int k = 0; k < N; ++k) {
    const auto coeffs = fourier_coeffs(pw);
    for (int row = 0; row < N; ++row) op.entries(row, k) = coeffs[static_cast<std::size_t>(row)];
    if (k + 1 < N)
      for (std::size_t j = 0; j < M; ++j) pw[j] *= bvals[j];
  }
  return op;
}

namespace detail {

/// Rebuilds a trigonometric-polynomial symbol on the operator grid
/// max(2N, 512) so Toeplitz extraction and transfer both resolve it exactly.
/// Only frequencies representable on the target grid are carried over, cut
/// at the same 1e-13 threshold bandwidth() counts: the remaining bins of a
/// band-limited symbol hold FFT roundoff (~1e-15 for unit amplitudes), and
/// re-inserting those would feed junk frequencies to the smaller grid.
inline symbol_function on_operator_grid(const symbol_function& a, int N) {
  const std::size_t want = std::max<std::size_t>(2 * static_cast<std::size_t>(N), 512);
  if (a.grid_size() == want) return a;
  std::map<long, cplx> c;
  const long M = static_cast<long>(a.grid_size());
  const long half = static_cast<long>(want) / 2;
  const long lo = std::max(-M / 2 + 1, -half + 1);
  const long hi = std::min(M / 2, half);
  for (long k = lo; k <= hi; ++k) {
    const cplx v = a.coeff(k);
    if (std::abs(v) > 1e-13) c[k] = v;
  }
  if (c.empty()) c[0] = cplx{0.0, 0.0};
  return symbol_function::from_coeffs(c, want);
}

}  // namespace detail

/// Covariant-relation defect: spectral norm of the leading block of
///   C_B^* T_a C_B - T_{A_B(a)} .
/// The symbol must be a trigonometric polynomial of bandwidth <= N/4.
inline double covariant_defect(const finite_blaschke_product& B, const symbol_function& a,
                               int N) {
  detail::check_cutoff(N);
  if (a.bandwidth() > static_cast<long>(N) / 4)
    throw std::invalid_argument("covariant_defect: symbol bandwidth exceeds N/4");
  const symbol_function ag = detail::on_operator_grid(a, N);
  const symbol_function transferred = aleksandrov_grid(B, ag);

  const matrix_c C = composition_matrix(B, N).entries;
  const matrix_c Ta = toeplitz_matrix(ag, N).entries;
  const matrix_c Tt = toeplitz_matrix(transferred, N).entries;

  const matrix_c defect = C.adjoint() * Ta * C - Tt;
  const int b = detail::defect_block(N);
  return detail::spectral_norm(defect.topLeftCorner(b, b));
}

/// Isometry-family defects for V_i = T_{u_i} C_B:
///   offdiag      = max_{i,j} || leading block of (V_i^* V_j - delta_ij I) ||
///   completeness = || leading block of (sum_i V_i V_i^* - I) ||
struct cuntz_defects {
  double offdiag;
  double completeness;
};

inline cuntz_defects cuntz_defect(const finite_blaschke_product& B, int N) {
  detail::check_cutoff(N);
  const int n = B.degree();
  if (N < 16 * n) throw std::invalid_argument("cuntz_defect: N must be >= 16 * degree");

  const std::size_t g = std::max<std::size_t>(2 * static_cast<std::size_t>(N), 512);
  const matrix_c C = composition_matrix(B, N).entries;
  const tm_basis basis(B);

  std::vector<matrix_c> V;
  V.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    V.push_back(toeplitz_matrix(basis.sampled(i, g), N).entries * C);

  const int b = detail::defect_block(N);
  const matrix_c eye = matrix_c::Identity(N, N);

  double offdiag = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const matrix_c d =
          V[static_cast<std::size_t>(i)].adjoint() * V[static_cast<std::size_t>(j)] -
          (i == j ? eye : matrix_c::Zero(N, N));
      offdiag = std::max(offdiag, detail::spectral_norm(d.topLeftCorner(b, b)));
    }

  matrix_c total = matrix_c::Zero(N, N);
  for (const auto& v : V) total += v * v.adjoint();
  const matrix_c comp = total - eye;
  return {offdiag, detail::spectral_norm(comp.topLeftCorner(b, b))};
}

/// Gram defect of the family { u_i B^k : 1 <= i <= n, 0 <= k <= kmax } under
/// the H^2 inner product, with coefficients truncated at N: max |Gram - I|.
inline double h2_basis_gram_defect(const finite_blaschke_product& B, int N, int kmax) {
  detail::check_cutoff(N);
  const int n = B.degree();
  if (n * (kmax + 1) > N / 2)
    throw std::invalid_argument("h2_basis_gram_defect: n*(kmax+1) must be <= N/2");

  const std::size_t M = detail::sampling_grid(n, N);
  std::vector<cplx> bvals(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M);
    bvals[j] = B(cplx{std::cos(th), std::sin(th)});
  }
  const tm_basis basis(B);

  std::vector<Eigen::VectorXcd> vecs;
  vecs.reserve(static_cast<std::size_t>(n) * (kmax + 1));
  for (int i = 1; i <= n; ++i) {
    std::vector<cplx> cur(M);
    for (std::size_t j = 0; j < M; ++j) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M);
      cur[j] = basis.evaluate(i, cplx{std::cos(th), std::sin(th)});
    }
    for (int k = 0; k <= kmax; ++k) {
      const auto coeffs = fourier_coeffs(cur);
      Eigen::VectorXcd v(N);
      for (int row = 0; row < N; ++row) v[row] = coeffs[static_cast<std::size_t>(row)];
      vecs.push_back(std::move(v));
      if (k < kmax)
        for (std::size_t j = 0; j < M; ++j) cur[j] *= bvals[j];
    }
  }

  double worst = 0.0;
  for (std::size_t p = 0; p < vecs.size(); ++p)
    for (std::size_t q = 0; q < vecs.size(); ++q) {
      const cplx gram = vecs[p].dot(vecs[q]);  // Eigen dot conjugates the left argument
      const cplx expect = p == q ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
      worst = std::max(worst, std::abs(gram - expect));
    }
  return worst;
}

}  // namespace blaschke
