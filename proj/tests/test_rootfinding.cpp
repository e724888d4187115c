#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "blaschke/polynomial.hpp"
#include "blaschke/prng.hpp"
#include "blaschke/rootfinding.hpp"
#include "catch2/catch_amalgamated.hpp"

using blaschke::cplx;
using blaschke::polynomial;

namespace {

double worst_residual(const polynomial& p, const std::vector<cplx>& roots) {
  double w = 0.0;
  for (const auto& z : roots) w = std::max(w, std::abs(p(z)));
  return w;
}

double max_coeff(const polynomial& p) {
  double m = 0.0;
  for (const auto& c : p.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("cube roots of unity") {
  const polynomial p(std::vector<cplx>{{-1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
  auto roots = blaschke::poly_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(worst_residual(p, roots) < 1e-10);
  for (const auto& z : roots) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);

  // one root is 1 itself
  std::sort(roots.begin(), roots.end(),
            [](cplx a, cplx b) { return std::abs(a - cplx{1.0, 0.0}) < std::abs(b - cplx{1.0, 0.0}); });
  CHECK(std::abs(roots.front() - cplx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("random polynomials meet the residual gate") {
  blaschke::splitmix64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    for (auto& v : c) v = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (std::abs(c.back()) < 0.1) c.back() += cplx{0.5, 0.0};

    const polynomial p(c);
    const auto roots = blaschke::poly_roots(p);
    REQUIRE(static_cast<int>(roots.size()) == n);
    CHECK(worst_residual(p, roots) <= 1e-10 * std::max(1.0, max_coeff(p)));
  }
}

TEST_CASE("a triple root is recovered to high accuracy") {
  // (z - 1/2)^3 = z^3 - 3/2 z^2 + 3/4 z - 1/8
  const polynomial p(
      std::vector<cplx>{{-0.125, 0.0}, {0.75, 0.0}, {-1.5, 0.0}, {1.0, 0.0}});
  const auto roots = blaschke::poly_roots(p);
  REQUIRE(roots.size() == 3);

  const auto clusters = blaschke::merge_root_clusters(roots, 1e-4);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters.front().multiplicity == 3);

  const cplx refined =
      blaschke::refine_multiple_root(p, clusters.front().center, clusters.front().multiplicity);
  CHECK(std::abs(refined - cplx{0.5, 0.0}) < 1e-12);
}

TEST_CASE("cluster merging is transitive") {
  // a chain of roots each within radius of the next must merge into one cluster
  const std::vector<cplx> roots{{0.0, 0.0}, {0.8e-6, 0.0}, {1.6e-6, 0.0}, {0.5, 0.0}};
  const auto clusters = blaschke::merge_root_clusters(roots, 1e-6);
  REQUIRE(clusters.size() == 2);
  const bool first_is_chain = clusters[0].multiplicity == 3;
  const auto& chain = first_is_chain ? clusters[0] : clusters[1];
  const auto& lone = first_is_chain ? clusters[1] : clusters[0];
  CHECK(chain.multiplicity == 3);
  CHECK(std::abs(chain.center - cplx{0.8e-6, 0.0}) < 1e-6);
  CHECK(lone.multiplicity == 1);
  CHECK(std::abs(lone.center - cplx{0.5, 0.0}) < 1e-15);
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(blaschke::poly_roots(polynomial(std::vector<cplx>{{1.0, 0.0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(blaschke::poly_roots(polynomial()), std::invalid_argument);
}

TEST_CASE("widely spread moduli") {
  // roots at 1e-2 and 1e2: p(z) = (z - 0.01)(z - 100)
  const polynomial p(std::vector<cplx>{{1.0, 0.0}, {-100.01, 0.0}, {1.0, 0.0}});
  auto roots = blaschke::poly_roots(p);
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  CHECK(std::abs(roots[0] - cplx{0.01, 0.0}) < 1e-10);
  CHECK(std::abs(roots[1] - cplx{100.0, 0.0}) < 1e-8);
}

TEST_CASE("a far root passes the relative residual gate") {
  // (z - 1000)(z - 0.5)(z + 0.25): at the far root the evaluation rounding
  // noise (~eps * 1000^3) dwarfs any absolute tolerance tied to coefficient
  // size, yet the root itself is machine-accurate.  The residual gate must
  // judge it relative to the evaluation majorant, not reject it.
  const polynomial p(
      std::vector<cplx>{{125.0, 0.0}, {249.875, 0.0}, {-1000.25, 0.0}, {1.0, 0.0}});
  auto roots = blaschke::poly_roots(p);
  REQUIRE(roots.size() == 3);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  CHECK(std::abs(roots[0] - cplx{-0.25, 0.0}) < 1e-12);
  CHECK(std::abs(roots[1] - cplx{0.5, 0.0}) < 1e-12);
  CHECK(std::abs(roots[2] - cplx{1000.0, 0.0}) < 1e-8);
}
