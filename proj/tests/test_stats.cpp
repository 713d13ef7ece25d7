#include <doctest.h>

#include <cmath>

#include "wmlg/stats.hpp"
#include "wmlg/util.hpp"

using namespace wmlg;

TEST_CASE("normal quantile against tabulated values") {
    // Abramowitz/Stegun-grade reference points; the implementation's contract
    // is 1e-10, the Newton polish in practice lands within ~2 ulps.
    CHECK(norm_quantile(0.5) == 0.0);
    CHECK(norm_quantile(0.975) == doctest::Approx(1.9599639845400545).epsilon(1e-14));
    CHECK(norm_quantile(0.84) == doctest::Approx(0.9944578832097532).epsilon(1e-14));
    CHECK(norm_quantile(0.95) == doctest::Approx(1.6448536269514722).epsilon(1e-14));
    CHECK(norm_quantile(0.025) == doctest::Approx(-1.9599639845400545).epsilon(1e-14));
    for (double p : {1e-6, 0.01, 0.3, 0.77, 0.9999})
        CHECK(norm_quantile(1.0 - p) == doctest::Approx(-norm_quantile(p)).epsilon(1e-12));
    // deeper in the tail 1 - p itself quantizes: the argument error ulp(1)/2
    // maps to ~ulp(1)/(2 phi(x)) in the quantile, ~1.5e-5 at p = 1e-12
    CHECK(norm_quantile(1.0 - 1e-12) == doctest::Approx(-norm_quantile(1e-12)).epsilon(1e-5));
}

TEST_CASE("normal cdf/quantile round trip") {
    for (double p : {1e-10, 1e-4, 0.1, 0.25, 0.5, 0.9, 0.999999}) {
        CHECK(norm_cdf(norm_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(norm_cdf(-8.3) > 0.0);
    CHECK(norm_cdf(-8.3) < 1e-15);
    CHECK(norm_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
}

TEST_CASE("bivariate normal cdf oracles") {
    CHECK(binorm_cdf(0.0, 0.0, 0.0) == doctest::Approx(0.25).epsilon(1e-10));
    // P(X<=0, Y<=0) = 1/4 + asin(rho)/(2 pi)
    for (double rho : {0.3, 0.6, -0.5}) {
        double want = 0.25 + std::asin(rho) / (2.0 * M_PI);
        CHECK(binorm_cdf(0.0, 0.0, rho) == doctest::Approx(want).epsilon(1e-9));
    }
    // independence factorizes
    CHECK(binorm_cdf(0.7, -0.4, 0.0) ==
          doctest::Approx(norm_cdf(0.7) * norm_cdf(-0.4)).epsilon(1e-10));
    // comonotone rails
    CHECK(binorm_cdf(0.5, 1.5, 1.0) == doctest::Approx(norm_cdf(0.5)).epsilon(1e-12));
    CHECK(binorm_cdf(0.5, -0.5, -1.0) ==
          doctest::Approx(std::max(0.0, norm_cdf(0.5) + norm_cdf(-0.5) - 1.0)).epsilon(1e-9));
    // symmetry in the arguments
    CHECK(binorm_cdf(0.3, 1.1, 0.6) == doctest::Approx(binorm_cdf(1.1, 0.3, 0.6)).epsilon(1e-11));
}

TEST_CASE("kolmogorov p-values") {
    // sqrt(n) d ~ 1.358 is the classical 5% point of the K distribution.
    std::size_t n = 10000;
    double d = 1.358 / std::sqrt((double)n);
    CHECK(ks_pvalue(d, n) == doctest::Approx(0.05).epsilon(0.03));
    CHECK(ks_pvalue(0.5 / std::sqrt((double)n), n) > 0.9);
    CHECK(ks_pvalue(3.0 / std::sqrt((double)n), n) < 1e-6);
    // monotone in d
    double prev = 1.0;
    for (double x = 0.2; x < 3.0; x += 0.2) {
        double p = ks_pvalue(x / std::sqrt((double)n), n);
        CHECK(p <= prev);
        prev = p;
    }
}

TEST_CASE("ks statistic on a perfect normal grid") {
    // plugging exact normal quantiles at (i-1/2)/n leaves only the n^{-1}
    // discretization gap
    std::size_t n = 1000;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = norm_quantile((i + 0.5) / n);
    CHECK(ks_statistic_normal(v) == doctest::Approx(0.5 / n).epsilon(1e-6));
}

TEST_CASE("sha1 known vectors") {
    CHECK(sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");
    CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
    CHECK(sha1_hex("The quick brown fox jumps over the lazy dog") ==
          "2fd4e1c67a2d28fced849ee1bb76e7391b93eb12");
}

TEST_CASE("key=value parsing") {
    auto kv = parse_keyvalues("# comment\n a = 1 \n\nb=two words\na=3\n");
    CHECK(kv.size() == 2);
    CHECK(kv.at("a") == "3"); // later key wins
    CHECK(kv.at("b") == "two words");
    CHECK(canonical_keyvalues(kv) == "a=3\nb=two words\n");
}

TEST_CASE("string helpers") {
    CHECK(trim("  x y\t") == "x y");
    auto parts = split("a,,b", ',');
    REQUIRE(parts.size() == 3);
    CHECK(parts[1].empty());
    CHECK(strfmt("%d-%s", 7, "x") == "7-x");
}
