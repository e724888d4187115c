#include <cmath>
#include <vector>

#include "blaschke/polynomial.hpp"
#include "catch2/catch_amalgamated.hpp"

using blaschke::cplx;
using blaschke::polynomial;

TEST_CASE("evaluation matches direct expansion") {
  // p(z) = 1 + 2z + 3z^2
  const polynomial p(std::vector<cplx>{{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}});
  const cplx z{0.5, -0.25};
  CHECK(std::abs(p(z) - (cplx{1.0, 0.0} + 2.0 * z + 3.0 * z * z)) < 1e-15);
  CHECK(p.degree() == 2);
}

TEST_CASE("derivative drops the constant and scales coefficients") {
  const polynomial p(std::vector<cplx>{{5.0, 0.0}, {1.0, 0.0}, {0.0, 2.0}, {4.0, 0.0}});
  const polynomial dp = p.derivative();
  REQUIRE(dp.degree() == 2);
  CHECK(std::abs(dp.coeffs()[0] - cplx{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(dp.coeffs()[1] - cplx{0.0, 4.0}) < 1e-15);
  CHECK(std::abs(dp.coeffs()[2] - cplx{12.0, 0.0}) < 1e-15);
}

TEST_CASE("ring operations") {
  const polynomial a(std::vector<cplx>{{1.0, 0.0}, {1.0, 0.0}});   // 1 + z
  const polynomial b(std::vector<cplx>{{-1.0, 0.0}, {1.0, 0.0}});  // z - 1

  SECTION("product is z^2 - 1") {
    const polynomial c = a * b;
    REQUIRE(c.degree() == 2);
    CHECK(std::abs(c.coeffs()[0] - cplx{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(c.coeffs()[1]) < 1e-15);
    CHECK(std::abs(c.coeffs()[2] - cplx{1.0, 0.0}) < 1e-15);
  }
  SECTION("sum is 2z") {
    const polynomial c = (a + b).trimmed();
    REQUIRE(c.degree() == 1);
    CHECK(std::abs(c.coeffs()[0]) < 1e-15);
    CHECK(std::abs(c.coeffs()[1] - cplx{2.0, 0.0}) < 1e-15);
  }
  SECTION("difference is constant 2") {
    const polynomial c = (a - b).trimmed();
    REQUIRE(c.degree() == 0);
    CHECK(std::abs(c.coeffs()[0] - cplx{2.0, 0.0}) < 1e-15);
  }
}

TEST_CASE("taylor jet at a shifted center") {
  // p(z) = z^2 + 1/3 about z0 = 1: p(1+h) = 4/3 + 2h + h^2.
  const polynomial p(std::vector<cplx>{{1.0 / 3.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
  const auto jet = p.taylor_jet(cplx{1.0, 0.0}, 3);
  REQUIRE(jet.size() == 4);
  CHECK(std::abs(jet[0] - cplx{4.0 / 3.0, 0.0}) < 1e-15);
  CHECK(std::abs(jet[1] - cplx{2.0, 0.0}) < 1e-15);
  CHECK(std::abs(jet[2] - cplx{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(jet[3]) < 1e-15);
}

TEST_CASE("taylor jet agrees with derivatives at a complex center") {
  // p(z) = (2+i) + 3z - z^3
  const polynomial p(std::vector<cplx>{{2.0, 1.0}, {3.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}});
  const cplx z0{0.4, -0.7};
  const auto jet = p.taylor_jet(z0, 3);
  const polynomial dp = p.derivative();
  const polynomial ddp = dp.derivative();
  const polynomial dddp = ddp.derivative();
  CHECK(std::abs(jet[0] - p(z0)) < 1e-14);
  CHECK(std::abs(jet[1] - dp(z0)) < 1e-14);
  CHECK(std::abs(2.0 * jet[2] - ddp(z0)) < 1e-14);
  CHECK(std::abs(6.0 * jet[3] - dddp(z0)) < 1e-14);
}

TEST_CASE("power series division") {
  // 1/(1 - z) = 1 + z + z^2 + ...
  const std::vector<cplx> num{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  const std::vector<cplx> den{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  const auto q = blaschke::series_divide(num, den);
  REQUIRE(q.size() == 4);
  for (const auto& c : q) CHECK(std::abs(c - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("trimming removes a negligible leading coefficient") {
  const polynomial p(std::vector<cplx>{{1.0, 0.0}, {1.0, 0.0}, {1e-16, 0.0}});
  CHECK(p.trimmed().degree() == 1);
}
