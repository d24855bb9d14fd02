#include <benchmark/benchmark.h>

#include <limits>
#include <random>

#include "bellscope/asymptotics.hpp"
#include "bellscope/lhv_oracle.hpp"
#include "bellscope/nelder_mead.hpp"
#include "bellscope/optimizer.hpp"
#include "bellscope/quantum_model.hpp"

using namespace bellscope;

namespace {

std::array<UnitaryParams, 4> random_settings(int d, Scheme scheme, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::array<UnitaryParams, 4> out;
    for (auto& up : out) {
        up.scheme = scheme;
        up.params.resize(param_count(scheme, d));
        for (auto& v : up.params) v = dist(rng);
    }
    return out;
}

void BM_JointProbabilities(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto psi = nopa_truncated_state(d, 1.5);
    const auto U = cglmp_settings(d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(joint_probabilities(psi, U[0], U[2]).p.sum());
    }
}
BENCHMARK(BM_JointProbabilities)->Arg(3)->Arg(10)->Arg(25);

void BM_EvaluateSettings(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto psi = nopa_truncated_state(d, std::numeric_limits<double>::infinity());
    const auto settings = random_settings(d, Scheme::Full, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_settings(psi, settings));
    }
}
BENCHMARK(BM_EvaluateSettings)->Arg(3)->Arg(10);

void BM_ParametrizeFull(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto settings = random_settings(d, Scheme::Full, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(parametrize_unitary(settings[0], d).matrix(0, 0));
    }
}
BENCHMARK(BM_ParametrizeFull)->Arg(3)->Arg(10)->Arg(25);

void BM_ClosedFormEpr(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(closed_form_epr(d));
    }
}
BENCHMARK(BM_ClosedFormEpr)->Arg(25)->Arg(1000);

void BM_LhvEnumeration(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_lhv_extrema(d).max);
    }
}
BENCHMARK(BM_LhvEnumeration)->Arg(4)->Arg(6)->Arg(8);

void BM_NelderMeadQuadratic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    NelderMeadOptions opts;
    opts.max_evals = 5000;
    const Eigen::VectorXd start = Eigen::VectorXd::Ones(n);
    auto f = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(nelder_mead(f, start, opts).value);
    }
}
BENCHMARK(BM_NelderMeadQuadratic)->Arg(8)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
