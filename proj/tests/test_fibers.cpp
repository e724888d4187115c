#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "blaschke/blaschke_product.hpp"
#include "blaschke/fibers.hpp"
#include "blaschke/prng.hpp"
#include "catch2/catch_amalgamated.hpp"

using blaschke::cplx;
using blaschke::finite_blaschke_product;

namespace {

const double inv_sqrt2 = 0.70710678118654752;
const double inv_sqrt3 = 0.57735026918962576;

finite_blaschke_product r1() {
  return blaschke::make_blaschke(cplx{1.0, 0.0},
                                 {cplx{inv_sqrt2, 0.0}, cplx{-inv_sqrt2, 0.0}});
}
finite_blaschke_product r2() {
  return blaschke::make_blaschke(cplx{1.0, 0.0},
                                 {cplx{0.0, inv_sqrt2}, cplx{0.0, -inv_sqrt2}});
}
finite_blaschke_product r3() {
  return blaschke::make_blaschke(cplx{1.0, 0.0},
                                 {cplx{0.0, inv_sqrt3}, cplx{0.0, -inv_sqrt3}});
}
finite_blaschke_product r4() {
  return blaschke::make_blaschke(cplx{0.8, 0.6},
                                 {cplx{0.35157758425414293, 0.56886448100578311},
                                  cplx{-0.35157758425414293, -0.56886448100578311}});
}

finite_blaschke_product random_product(blaschke::splitmix64& rng, int max_degree) {
  const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree - 1)));
  std::vector<cplx> zeros;
  for (int i = 0; i < n; ++i) {
    const double r = 0.8 * std::sqrt(rng.uniform());
    const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    zeros.push_back(r * cplx{std::cos(t), std::sin(t)});
  }
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return blaschke::make_blaschke(cplx{std::cos(phase), std::sin(phase)}, zeros);
}

}  // namespace

TEST_CASE("preimages of 1 under the real-zero degree-2 product") {
  const auto fib = blaschke::preimages(r1(), cplx{1.0, 0.0});
  REQUIRE(fib.points.size() == 2);
  std::vector<cplx> pts = fib.points;
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(pts[0] - cplx{-1.0, 0.0}) < 1e-12);
  CHECK(std::abs(pts[1] - cplx{1.0, 0.0}) < 1e-12);
  for (double r : fib.residuals) CHECK(r <= 1e-9);
}

TEST_CASE("interior target recovers the zero set") {
  const auto B = r4();
  const auto fib = blaschke::preimages(B, cplx{0.0, 0.0});
  REQUIRE(fib.points.size() == 2);
  for (const auto& z : fib.points) CHECK(std::abs(B(z)) < 1e-12);
}

TEST_CASE("unimodular fibers stay on the circle") {
  blaschke::splitmix64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto B = random_product(rng, 4);
    const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const cplx w{std::cos(t), std::sin(t)};
    const auto fib = blaschke::preimages(B, w);
    REQUIRE(static_cast<int>(fib.points.size()) == B.degree());
    for (const auto& z : fib.points) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-9);
    for (double r : fib.residuals) CHECK(r <= 1e-9);
  }
}

TEST_CASE("an exterior target can lose a preimage to infinity") {
  // leading coefficient of lambda*N - w*D vanishes when w = lambda / conj(z1 z2)
  const auto B = blaschke::make_blaschke(cplx{1.0, 0.0}, {cplx{0.5, 0.0}, cplx{-0.3, 0.0}});
  const cplx w = cplx{1.0, 0.0} / std::conj(cplx{0.5, 0.0} * cplx{-0.3, 0.0});
  const auto fib = blaschke::preimages(B, w);
  CHECK(fib.note.has_value());
  CHECK(fib.points.size() == 1);
}

TEST_CASE("fixed points of the squaring map") {
  const auto fps = blaschke::fixed_points(blaschke::monomial_product(2));
  REQUIRE(fps.points.size() == 2);
  auto pts = fps.points;
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return std::abs(a.point) < std::abs(b.point); });
  CHECK(std::abs(pts[0].point) < 1e-12);
  CHECK(std::abs(pts[0].multiplier) < 1e-12);
  CHECK(std::abs(pts[1].point - cplx{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(pts[1].multiplier - cplx{2.0, 0.0}) < 1e-12);
}

TEST_CASE("fixed points of the worked degree-2 examples") {
  SECTION("interior attractor and boundary repeller") {
    const auto fps = blaschke::fixed_points(r1());
    const cplx interior{(-3.0 + std::sqrt(5.0)) / 2.0, 0.0};
    bool saw_interior = false, saw_boundary = false;
    for (const auto& fp : fps.points) {
      if (std::abs(fp.point - interior) < 1e-9) {
        saw_interior = true;
        CHECK(std::abs(fp.multiplier) < 1.0);
      }
      if (std::abs(fp.point - cplx{1.0, 0.0}) < 1e-9) {
        saw_boundary = true;
        CHECK(std::abs(fp.multiplier - cplx{6.0, 0.0}) < 1e-9);
      }
    }
    CHECK(saw_interior);
    CHECK(saw_boundary);
  }
  SECTION("boundary-attracting example has multiplier 2/3 at 1") {
    const auto fps = blaschke::fixed_points(r2());
    bool saw = false;
    for (const auto& fp : fps.points)
      if (std::abs(fp.point - cplx{1.0, 0.0}) < 1e-9) {
        saw = true;
        CHECK(std::abs(fp.multiplier - cplx{2.0 / 3.0, 0.0}) < 1e-9);
      }
    CHECK(saw);
  }
  SECTION("two-petal parabolic point is a refined triple cluster") {
    const auto fps = blaschke::fixed_points(r3());
    bool saw = false;
    for (const auto& fp : fps.points)
      if (fp.multiplicity == 3) {
        saw = true;
        CHECK(std::abs(fp.point - cplx{1.0, 0.0}) < 1e-10);
        CHECK(std::abs(fp.multiplier - cplx{1.0, 0.0}) < 1e-9);
      }
    CHECK(saw);
  }
  SECTION("one-petal parabolic point is a double cluster") {
    const auto fps = blaschke::fixed_points(r4());
    bool saw_double = false, saw_repeller = false;
    for (const auto& fp : fps.points) {
      if (fp.multiplicity == 2) {
        saw_double = true;
        CHECK(std::abs(fp.point - cplx{1.0, 0.0}) < 1e-10);
      }
      if (fp.multiplicity == 1) {
        saw_repeller = true;
        CHECK(std::abs(fp.point - cplx{0.0, -1.0}) < 1e-9);
        CHECK(std::abs(fp.multiplier) > 1.0);
      }
    }
    CHECK(saw_double);
    CHECK(saw_repeller);
  }
}

TEST_CASE("fixed point residuals are small") {
  blaschke::splitmix64 rng(57);
  for (int trial = 0; trial < 20; ++trial) {
    const auto B = random_product(rng, 4);
    const auto fps = blaschke::fixed_points(B);
    for (const auto& fp : fps.points)
      if (std::abs(fp.point) <= 1.0 + 1e-9)  // exterior points may sit near the pole
        CHECK(std::abs(B(fp.point) - fp.point) <= 1e-9);
  }
}

TEST_CASE("the identity map has no isolated fixed points") {
  const auto I = blaschke::make_blaschke(cplx{1.0, 0.0}, {cplx{0.0, 0.0}});
  CHECK_THROWS_AS(blaschke::fixed_points(I), std::invalid_argument);
}

TEST_CASE("monomial fixed-point polynomial drops degree") {
  const auto fps = blaschke::fixed_points(blaschke::monomial_product(3));
  CHECK(fps.degree_drop);
  CHECK(fps.polynomial_degree == 3);
}

TEST_CASE("composition") {
  SECTION("squaring twice is the fourth power") {
    const auto P2 = blaschke::monomial_product(2);
    const auto C = blaschke::compose(P2, P2);
    CHECK(C.degree() == 4);
    const cplx z{0.4, -0.2};
    CHECK(std::abs(C(z) - P2(P2(z))) < 1e-12);
  }
  SECTION("generic composition evaluates as the nested maps") {
    blaschke::splitmix64 rng(71);
    const auto B1 = random_product(rng, 3);
    const auto B2 = random_product(rng, 3);
    const auto C = blaschke::compose(B1, B2);
    CHECK(C.degree() == B1.degree() * B2.degree());
    for (int i = 0; i < 20; ++i) {
      const double r = 0.9 * std::sqrt(rng.uniform());
      const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const cplx z = r * cplx{std::cos(t), std::sin(t)};
      CHECK(std::abs(C(z) - B1(B2(z))) < 1e-10);
    }
  }
  SECTION("associativity") {
    blaschke::splitmix64 rng(83);
    const auto A = random_product(rng, 3);
    const auto B = random_product(rng, 3);
    const auto C = random_product(rng, 3);
    const auto left = blaschke::compose(blaschke::compose(A, B), C);
    const auto right = blaschke::compose(A, blaschke::compose(B, C));
    for (int i = 0; i < 10; ++i) {
      const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const cplx z = 0.7 * cplx{std::cos(t), std::sin(t)};
      CHECK(std::abs(left(z) - right(z)) < 1e-8);
    }
  }
}

TEST_CASE("iteration") {
  const auto P2 = blaschke::monomial_product(2);
  SECTION("second iterate agrees with explicit composition") {
    const auto it2 = blaschke::iterate(P2, 2);
    CHECK(it2.degree() == 4);
    const cplx z{0.3, 0.1};
    CHECK(std::abs(it2(z) - P2(P2(z))) < 1e-12);
  }
  SECTION("degree explosion is rejected up front") {
    CHECK_THROWS_AS(blaschke::iterate(P2, 13), std::invalid_argument);  // 2^13 > 4096
    CHECK(blaschke::iterate(P2, 5).degree() == 32);                     // 2^5 well inside
  }
}
