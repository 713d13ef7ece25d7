#include <doctest.h>

#include <cmath>

#include "wmlg/errors.hpp"
#include "wmlg/model.hpp"
#include "wmlg/quadrature.hpp"
#include "wmlg/stats.hpp"

using namespace wmlg;

TEST_CASE("simpson is exact on cubics") {
    auto f = [](double x) { return 3.0 * x * x * x - x + 2.0; };
    // int_0^2 = 3*4 - 2 + 4 = 14
    CHECK(simpson(f, 0.0, 2.0, 3) == doctest::Approx(14.0).epsilon(1e-15));
    CHECK(simpson(f, 0.0, 2.0, 129) == doctest::Approx(14.0).epsilon(1e-15));
    CHECK_THROWS_AS(simpson(f, 0.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("refined integration of smooth functions") {
    QuadratureOptions q;
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, q) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI, q) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, q) == 0.0);
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 0.0, q), std::invalid_argument);
}

TEST_CASE("refinement ladder gives up honestly") {
    QuadratureOptions q;
    q.base_nodes = 5;
    q.max_refinements = 1;
    q.rtol = 1e-14;
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(100.0 * x); }, 0.0, 3.0, q),
                    QuadratureError);
}

TEST_CASE("probability-segment integration matches the direct form on smooth integrands") {
    QuadratureOptions q;
    auto f = [](double p) { return p * p; };
    CHECK(integrate_prob(f, 0.2, 0.7, q) ==
          doctest::Approx((0.343 - 0.008) / 3.0).epsilon(1e-9));
    // full segment with clipped tails: mass error ~1e-16
    CHECK(integrate_prob([](double) { return 1.0; }, 0.0, 1.0, q) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate_prob(f, 0.4, 0.4, q) == 0.0);
    CHECK_THROWS_AS(integrate_prob(f, 0.7, 0.2, q), std::invalid_argument);
    CHECK_THROWS_AS(integrate_prob(f, -0.1, 0.5, q), std::invalid_argument);
    CHECK_THROWS_AS(integrate_prob(f, 0.5, 1.5, q), std::invalid_argument);
}

TEST_CASE("probability-segment integration absorbs quantile endpoint singularities") {
    // int_0^{1/2} (1 - G^{-1}(p)) dp for lognormal(0, 1/2):
    // = Phi(0) - e^{1/8} Phi(-1/2), and dG^{-1}/dp blows up at p -> 0,
    // which is exactly the case the normal-score substitution handles.
    LognormalMarginal m(0.0, 0.5);
    QuadratureOptions q;
    double got = integrate_prob([&](double p) { return 1.0 - m.quantile(p); }, 0.0, 0.5, q);
    double want = 0.5 - std::exp(0.125) * norm_cdf(-0.5);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("tail integral table") {
    // f = cos: Psi(x) = sin(b) - sin(x)
    TailIntegralTable tab([](double x) { return std::cos(x); }, 0.0, 1.0, 257);
    CHECK(tab.full() == doctest::Approx(std::sin(1.0)).epsilon(1e-10));
    for (double x : {0.0, 0.1, 0.25, 0.333, 0.5, 0.777, 0.999, 1.0})
        CHECK(tab(x) == doctest::Approx(std::sin(1.0) - std::sin(x)).epsilon(1e-9));
    CHECK(tab(-5.0) == tab(0.0));   // clamped
    CHECK(tab(7.0) == 0.0);         // beyond the right end
    CHECK(TailIntegralTable().empty());
    CHECK_THROWS_AS(TailIntegralTable([](double) { return 1.0; }, 0.0, 1.0, 4),
                    std::invalid_argument);
}
