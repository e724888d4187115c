#include <cmath>
#include <complex>

#include "blaschke/blaschke_product.hpp"
#include "blaschke/moebius.hpp"
#include "catch2/catch_amalgamated.hpp"

using blaschke::cplx;
using blaschke::moebius_kind;

TEST_CASE("identity map") {
  const auto I = blaschke::make_blaschke(cplx{1.0, 0.0}, {cplx{0.0, 0.0}});
  const auto rep = blaschke::moebius_classify(I);
  CHECK(rep.kind == moebius_kind::identity);
}

TEST_CASE("rotations") {
  SECTION("third root of unity has order 3") {
    const auto rot = blaschke::make_blaschke(cplx{-0.5, 0.86602540378443865}, {cplx{0.0, 0.0}});
    const auto rep = blaschke::moebius_classify(rot);
    CHECK(rep.kind == moebius_kind::elliptic_finite_order);
    CHECK(rep.order == 3);
  }
  SECTION("minus one has order 2") {
    const auto rot = blaschke::make_blaschke(cplx{-1.0, 0.0}, {cplx{0.0, 0.0}});
    const auto rep = blaschke::moebius_classify(rot);
    CHECK(rep.kind == moebius_kind::elliptic_finite_order);
    CHECK(rep.order == 2);
  }
  SECTION("rotation by one radian finds no order within the scan bound") {
    const auto rot = blaschke::make_blaschke(
        cplx{0.54030230586813972, 0.84147098480789651}, {cplx{0.0, 0.0}});
    const auto rep = blaschke::moebius_classify(rot, 10000);
    CHECK(rep.kind == moebius_kind::elliptic_infinite_or_long);
  }
}

TEST_CASE("hyperbolic map") {
  // B(z) = (z - 1/2)/(1 - z/2): coefficient matrix has eigenvalue ratio 3
  const auto B = blaschke::make_blaschke(cplx{1.0, 0.0}, {cplx{0.5, 0.0}});
  const auto rep = blaschke::moebius_classify(B);
  CHECK(rep.kind == moebius_kind::hyperbolic);
  CHECK(std::abs(rep.rotation_certificate - cplx{3.0, 0.0}) < 1e-9);
}

TEST_CASE("parabolic map") {
  // lambda = e^{2 i theta}, zero = sin(theta) makes the eigenvalues collide
  const double theta = 0.3;
  const cplx lam = std::exp(cplx{0.0, 2.0 * theta});
  const auto B = blaschke::make_blaschke(lam, {cplx{std::sin(theta), 0.0}});
  const auto rep = blaschke::moebius_classify(B);
  CHECK(rep.kind == moebius_kind::parabolic);
}

TEST_CASE("degree-2 products are rejected") {
  const auto P2 = blaschke::monomial_product(2);
  CHECK_THROWS_AS(blaschke::moebius_classify(P2), std::invalid_argument);
}

TEST_CASE("kind names") {
  CHECK(std::string(blaschke::to_string(moebius_kind::identity)) == "Identity");
  CHECK(std::string(blaschke::to_string(moebius_kind::elliptic_finite_order)) ==
        "EllipticFiniteOrder");
  CHECK(std::string(blaschke::to_string(moebius_kind::hyperbolic)) == "Hyperbolic");
}
