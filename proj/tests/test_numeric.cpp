#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "suplord/numeric.hpp"

using namespace suplord;

TEST_CASE("adaptive quadrature on smooth integrands") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-10) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-10) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-8) == 0.0);
}

TEST_CASE("quadrature rejects a bad tolerance") {
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("quadrature reports a blown recursion budget") {
    // A kink at an irrational point with a tiny budget cannot converge.
    auto f = [](double x) { return x < 0.3333333 ? 0.0 : 1.0; };
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, 1e-14, 3), std::runtime_error);
}

TEST_CASE("bisection finds bracketed roots") {
    const double root = bisect([](double x) { return std::cos(x); }, 0.0, 2.0);
    CHECK(root == doctest::Approx(M_PI / 2.0).epsilon(1e-9));
    CHECK(bisect([](double x) { return x * x * x - 2.0; }, 0.0, 2.0) ==
          doctest::Approx(std::cbrt(2.0)).epsilon(1e-9));
}

TEST_CASE("bisection rejects an unbracketed interval") {
    CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("kahan accumulation keeps small terms") {
    KahanAccumulator acc;
    acc.add(1.0);
    for (int i = 0; i < 1000000; ++i) acc.add(1e-16);
    CHECK(acc.value() == doctest::Approx(1.0 + 1e-10).epsilon(1e-12));
}
