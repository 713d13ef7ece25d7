#include <doctest.h>

#include <cmath>
#include <memory>

#include "wmlg/asymptotics.hpp"
#include "wmlg/errors.hpp"
#include "wmlg/index.hpp"
#include "wmlg/model.hpp"
#include "wmlg/stats.hpp"

using namespace wmlg;

namespace {

DistributionModel uniform_model(double z_unused = 0.0) {
    (void)z_unused;
    return DistributionModel::iid_copula({0.0}, std::make_shared<UniformMarginal>(0.0, 1.0),
                                         CorrelationKind::Exchangeable, 0.0);
}

DistributionModel lognormal_model() {
    return DistributionModel::iid_copula({0.0}, std::make_shared<LognormalMarginal>(0.0, 0.5),
                                         CorrelationKind::Exchangeable, 0.0);
}

} // namespace

TEST_CASE("population values on the uniform model, identity cost") {
    auto model = uniform_model();
    auto zs = ThresholdSchedule::constant(0.5);

    // closed forms at q = 1/2: Shorrocks integral of 2(1-s)(1-2s) over [0,q]
    // divided by nothing (simple route) = 5/12; Kakwani moments below
    CHECK(exact_index(model, 0.0, zs, IndexSpec::shorrocks()) ==
          doctest::Approx(5.0 / 12.0).epsilon(1e-8));
    CHECK(exact_index(model, 0.0, zs, IndexSpec::thon()) ==
          doctest::Approx(5.0 / 12.0).epsilon(1e-8));

    // FGT(a) = int_0^q (1 - 2s)^a ds = q^{a+1} ... for z = q = 1/2:
    CHECK(exact_index(model, 0.0, zs, IndexSpec::fgt(0.0)) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(exact_index(model, 0.0, zs, IndexSpec::fgt(1.0)) == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(exact_index(model, 0.0, zs, IndexSpec::fgt(2.0)) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-8));

    // Kakwani(k) = (k+1) q^{-k} r_k with r_k = int_0^q (q-s)^k (1 - s/q) ds
    CHECK(exact_index(model, 0.0, zs, IndexSpec::kakwani(1)) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(exact_index(model, 0.0, zs, IndexSpec::kakwani(2)) ==
          doctest::Approx(0.375).epsilon(1e-8));
}

TEST_CASE("gap moments and the ratio identity") {
    auto model = uniform_model();
    auto zs = ThresholdSchedule::constant(0.5);
    auto id = CostFunction::identity();
    // r_0 = int_0^q (1 - 2s) ds = q - q^2 = 1/4; r_1 = int_0^q (q-s)(1-2s) ds = 1/12
    CHECK(rk_moment(model, 0.0, zs, id, 0) == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(rk_moment(model, 0.0, zs, id, 1) == doctest::Approx(1.0 / 12.0).epsilon(1e-8));
    for (int k : {1, 2}) {
        double lhs = exact_index(model, 0.0, zs, IndexSpec::kakwani(k));
        double rhs = (k + 1) * std::pow(0.5, -k) * rk_moment(model, 0.0, zs, id, k);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("bundle: shorrocks on uniform(0,1), z = 0.5") {
    auto b = theorem_one_bundle(uniform_model(), 0.0, ThresholdSchedule::constant(0.5),
                                IndexSpec::shorrocks());
    CHECK_FALSE(b.ratio_route);
    CHECK(b.q == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.J == doctest::Approx(5.0 / 12.0).epsilon(1e-8));
    CHECK(b.H_pi == 1.0);
    CHECK(b.K == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(b.eta == doctest::Approx(b.J).epsilon(1e-9)); // simple route: eta = J
    CHECK(b.EGnu == doctest::Approx(-1.0 / 12.0).epsilon(1e-8));
    // influence pieces at interior points: g(s) = 2(1-s) gamma~(s) on the
    // p-scale; at s = 0.2 the gap is 1 - 0.2/0.5 = 0.6, so g = 2*0.8*0.6
    CHECK(b.g_p(0.2) == doctest::Approx(0.96).epsilon(1e-9));
    CHECK(b.g_p(0.7) == 0.0); // above q
    CHECK(b.nu_p(0.2) == doctest::Approx(-1.2).epsilon(1e-8));
    // outcome-space versions agree through the quantile map: y = 0.2 has s = 0.2
    CHECK(b.g(0.2) == doctest::Approx(0.96).epsilon(1e-9));
    CHECK(b.g(0.9) == 0.0);
}

TEST_CASE("bundle: kakwani on uniform(0,1), z = 0.5") {
    auto b1 = theorem_one_bundle(uniform_model(), 0.0, ThresholdSchedule::constant(0.5),
                                 IndexSpec::kakwani(1));
    CHECK(b1.ratio_route);
    CHECK(b1.J == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(b1.H_pi == doctest::Approx(0.25).epsilon(1e-9)); // q^k/(k+1) = 1/4 at k=1
    CHECK(b1.K == doctest::Approx(5.0 / 3.0).epsilon(1e-7));

    auto b2 = theorem_one_bundle(uniform_model(), 0.0, ThresholdSchedule::constant(0.5),
                                 IndexSpec::kakwani(2));
    CHECK(b2.J == doctest::Approx(0.375).epsilon(1e-8));
    CHECK(b2.H_pi == doctest::Approx(1.0 / 12.0).epsilon(1e-9)); // q^2/3
    CHECK(b2.K == doctest::Approx(2.75).epsilon(1e-7));
    CHECK(b2.eta == doctest::Approx(1.375).epsilon(1e-7)); // ratio route: eta = K q
    CHECK(b2.EGnu == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("bundle: fgt has no drift") {
    auto b = theorem_one_bundle(uniform_model(), 0.0, ThresholdSchedule::constant(0.5),
                                IndexSpec::fgt(1.0));
    CHECK_FALSE(b.ratio_route);
    CHECK(b.J == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(b.K == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(b.EGnu == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("lognormal closed forms") {
    auto model = lognormal_model();
    auto zs = ThresholdSchedule::constant(1.0);
    // FGT(1) at z = 1: q - E[Y 1{Y<=1}] = Phi(0) - e^{1/8} Phi(-1/2)
    double want = norm_cdf(0.0) - std::exp(0.125) * norm_cdf(-0.5);
    CHECK(exact_index(model, 0.0, zs, IndexSpec::fgt(1.0)) ==
          doctest::Approx(want).epsilon(1e-8));
    CHECK(exact_index(model, 0.0, zs, IndexSpec::shorrocks()) ==
          doctest::Approx(0.25202271).epsilon(1e-6));
    auto b = theorem_one_bundle(model, 0.0, zs, IndexSpec::kakwani(2));
    CHECK(b.J == doctest::Approx(0.23176432).epsilon(1e-6));
    CHECK(b.K == doctest::Approx(1.683227).epsilon(1e-5));
}

TEST_CASE("threshold below the support") {
    auto model = DistributionModel::iid_copula(
        {0.0}, std::make_shared<UniformMarginal>(1.0, 2.0), CorrelationKind::Exchangeable, 0.0);
    auto zs = ThresholdSchedule::constant(0.5);
    CHECK(exact_index(model, 0.0, zs, IndexSpec::shorrocks()) == 0.0);
    CHECK(exact_index(model, 0.0, zs, IndexSpec::fgt(1.0)) == 0.0);
    CHECK_THROWS_AS(theorem_one_bundle(model, 0.0, zs, IndexSpec::shorrocks()), DegenerateModel);
}

TEST_CASE("general specs need their own kernels") {
    auto spec = IndexSpec::general(WeightScheme::unit(), CostFunction::identity());
    CHECK_THROWS_AS(limit_functions_for(spec), std::invalid_argument);
    // with kernels attached the asymptotic layer accepts it: unit weights with
    // identity cost are fgt(1)
    auto with = IndexSpec::general(WeightScheme::unit(), CostFunction::identity(),
                                   LimitFunctions::fgt());
    CHECK(exact_index(uniform_model(), 0.0, ThresholdSchedule::constant(0.5), with) ==
          doctest::Approx(0.25).epsilon(1e-8));
}
