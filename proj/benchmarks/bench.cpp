// Microbenchmarks for the hot paths: index evaluation, plug-in covariance,
// the analytic quadratures and trajectory sampling. Sizes are chosen so a
// full run stays under a minute on one core.
#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "wmlg/covariance.hpp"
#include "wmlg/index.hpp"
#include "wmlg/limits.hpp"
#include "wmlg/panel.hpp"
#include "wmlg/rng.hpp"
#include "wmlg/simulate.hpp"

namespace {

using namespace wmlg;

CrossSection make_section(std::size_t n, std::uint64_t seed) {
    RandomStream rs(stream_key(seed, 0, 0));
    std::vector<double> v(n);
    for (auto& x : v) x = rs.uniform01();
    return make_cross_section(std::move(v));
}

DistributionModel two_time_model(double rho) {
    std::vector<std::shared_ptr<const Marginal>> ms{
        std::make_shared<UniformMarginal>(0.0, 1.0), std::make_shared<UniformMarginal>(0.0, 1.0)};
    return DistributionModel({0.0, 1.0}, ms, CorrelationKind::Exchangeable, rho);
}

void bm_index_kakwani2(benchmark::State& state) {
    auto s = make_section((std::size_t)state.range(0), 17);
    auto spec = IndexSpec::kakwani(2);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_index(s, 0.5, spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_index_kakwani2)->Arg(1000)->Arg(10000)->Arg(100000);

void bm_index_shorrocks(benchmark::State& state) {
    auto s = make_section((std::size_t)state.range(0), 17);
    auto spec = IndexSpec::shorrocks();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_index(s, 0.5, spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_index_shorrocks)->Arg(1000)->Arg(10000)->Arg(100000);

void bm_plugin_slice(benchmark::State& state) {
    auto s = make_section((std::size_t)state.range(0), 29);
    auto spec = IndexSpec::shorrocks();
    for (auto _ : state) {
        auto sl = plugin_slice(s, 0.5, spec);
        benchmark::DoNotOptimize(sl.eta_hat);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_plugin_slice)->Arg(1000)->Arg(10000)->Arg(100000);

void bm_plugin_covariance_2x2(benchmark::State& state) {
    const std::size_t n = (std::size_t)state.range(0);
    ProcessModel pm{two_time_model(0.6), 3};
    auto vals = simulate_values(pm, n, 0);
    std::vector<CrossSection> secs;
    secs.push_back(make_cross_section(vals[0], 0.0));
    secs.push_back(make_cross_section(vals[1], 1.0));
    auto spec = IndexSpec::shorrocks();
    for (auto _ : state) {
        auto cov = covariance_plugin(secs, {0.5, 0.6}, spec);
        benchmark::DoNotOptimize(cov.gamma[0]);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_plugin_covariance_2x2)->Arg(1000)->Arg(10000)->Arg(100000);

void bm_exact_index_quadrature(benchmark::State& state) {
    auto model = two_time_model(0.6);
    auto th = ThresholdSchedule::constant(0.5);
    auto spec = IndexSpec::kakwani(2);
    for (auto _ : state) benchmark::DoNotOptimize(exact_index(model, 0.0, th, spec));
}
BENCHMARK(bm_exact_index_quadrature);

void bm_analytic_covariance_2x2(benchmark::State& state) {
    auto model = two_time_model(0.6);
    auto th = ThresholdSchedule::from_pairs({{0.0, 0.5}, {1.0, 0.6}});
    auto spec = IndexSpec::shorrocks();
    for (auto _ : state) {
        auto cov = covariance_analytic(model, {0.0, 1.0}, th, spec);
        benchmark::DoNotOptimize(cov.gamma[0]);
    }
}
BENCHMARK(bm_analytic_covariance_2x2);

void bm_simulate_values(benchmark::State& state) {
    const std::size_t n = (std::size_t)state.range(0);
    ProcessModel pm{two_time_model(0.6), 11};
    std::uint64_t rep = 0;
    for (auto _ : state) {
        auto vals = simulate_values(pm, n, rep++);
        benchmark::DoNotOptimize(vals[0][0]);
    }
    state.SetItemsProcessed(state.iterations() * n * 2);
}
BENCHMARK(bm_simulate_values)->Arg(1000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
