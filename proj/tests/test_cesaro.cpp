#include <catch2/catch_amalgamated.hpp>

#include "gft/cesaro.hpp"

using gft::CesaroFlavor;
using gft::CesaroParams;
using gft::Complex;
using gft::NormalizedSeries;
using gft::TaylorSeries;

TEST_CASE("generalized binomial", "[cesaro]") {
  REQUIRE(gft::generalized_binomial(5.0, 2) == 10.0);
  REQUIRE(gft::generalized_binomial(2.5, 2) == Catch::Approx(1.875).epsilon(1e-15));
  REQUIRE(gft::generalized_binomial(-1.0, 2) == Catch::Approx(1.0).epsilon(1e-15));
  REQUIRE(gft::generalized_binomial(0.75, 0) == 1.0);
  REQUIRE(gft::generalized_binomial(3.0, 5) == 0.0);
  REQUIRE_THROWS_AS(gft::generalized_binomial(1.0, -1), std::invalid_argument);
}

TEST_CASE("operator parameters validate", "[cesaro]") {
  REQUIRE_THROWS_AS(CesaroParams(0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(CesaroParams(2, -0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(CesaroParams(2, std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
  REQUIRE_NOTHROW(CesaroParams(1, 0.0));
}

TEST_CASE("normalized weights anchor the ends at one", "[cesaro]") {
  for (int k = 2; k <= 20; ++k) {
    for (double alpha : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      const CesaroParams p{k, alpha};
      REQUIRE(gft::cesaro_factor(p, 1) == 1.0);
      REQUIRE(gft::cesaro_factor(p, k) == 1.0);
    }
  }
}

TEST_CASE("weight values", "[cesaro]") {
  const CesaroParams p{3, 1.0};
  REQUIRE(gft::cesaro_factor(p, 2) == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
  REQUIRE_THROWS_AS(gft::cesaro_factor(p, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(gft::cesaro_factor(p, 4), std::invalid_argument);

  SECTION("classical flavor at order zero is the partial sum") {
    const CesaroParams q{4, 0.0};
    for (int n = 1; n <= 4; ++n)
      REQUIRE(gft::cesaro_factor(q, n, CesaroFlavor::Classical) == 1.0);
  }
  SECTION("classical flavor hand values") {
    const CesaroParams q{3, 1.0};
    REQUIRE(gft::cesaro_factor(q, 1, CesaroFlavor::Classical) ==
            Catch::Approx(0.75).epsilon(1e-15));
    REQUIRE(gft::cesaro_factor(q, 2, CesaroFlavor::Classical) ==
            Catch::Approx(0.5).epsilon(1e-15));
    REQUIRE(gft::cesaro_factor(q, 3, CesaroFlavor::Classical) ==
            Catch::Approx(0.25).epsilon(1e-15));
  }
}

TEST_CASE("applying the mean scales and truncates", "[cesaro]") {
  const std::vector<Complex> tail{2.0, 3.0, 4.0, 5.0};
  const NormalizedSeries koebe_start = NormalizedSeries::from_tail(tail, 6);

  SECTION("k = 2 keeps the quadratic part for every order") {
    for (double alpha : {0.0, 1.0, 2.5}) {
      const TaylorSeries out = gft::apply_cesaro(koebe_start, CesaroParams{2, alpha});
      REQUIRE(out.coeff(1) == Complex(1.0));
      REQUIRE(out.coeff(2) == Complex(2.0));
      for (int n = 3; n <= 6; ++n) REQUIRE(out.coeff(n) == Complex(0.0));
    }
  }

  SECTION("k = 3, alpha = 1 hand values") {
    const TaylorSeries out = gft::apply_cesaro(koebe_start, CesaroParams{3, 1.0});
    REQUIRE(out.coeff(1) == Complex(1.0));
    REQUIRE(std::abs(out.coeff(2) - Complex(4.0 / 3.0)) < 1e-15);
    REQUIRE(out.coeff(3) == Complex(3.0));
    REQUIRE(out.coeff(4) == Complex(0.0));
  }

  SECTION("order must cover k") {
    const NormalizedSeries shorty = NormalizedSeries::from_tail(std::vector<Complex>{2.0}, 2);
    REQUIRE_THROWS_AS(gft::apply_cesaro(shorty, CesaroParams{3, 1.0}),
                      std::invalid_argument);
  }

  SECTION("identity series passes through") {
    const TaylorSeries out =
        gft::apply_cesaro(NormalizedSeries::identity(5), CesaroParams{4, 2.0});
    REQUIRE(out.coeff(1) == Complex(1.0));
    for (int n = 2; n <= 5; ++n) REQUIRE(out.coeff(n) == Complex(0.0));
  }
}
