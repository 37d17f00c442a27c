#include <benchmark/benchmark.h>

#include "pncomm/protocol.hpp"
#include "pncomm/special_functions.hpp"

using namespace pncomm;

namespace {

StateKind kind_arg(const benchmark::State& state) {
    switch (state.range(0)) {
        case 0:
            return StateKind::Tmc;
        case 1:
            return StateKind::Twb;
        default:
            return StateKind::Tth;
    }
}

void BM_closed_form_joint(benchmark::State& state) {
    const StateKind kind = kind_arg(state);
    const double parameter = kind == StateKind::Tmc   ? lambda_for_mean(10.0)
                             : kind == StateKind::Twb ? x_for_mean(10.0)
                                                      : 10.0;
    const ChannelParams channel(0.85, 0.6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lossy_joint(kind, parameter, channel));
    }
}
BENCHMARK(BM_closed_form_joint)->Arg(0)->Arg(1)->Arg(2);

void BM_thinning_oracle(benchmark::State& state) {
    const StateKind kind = kind_arg(state);
    const double parameter = kind == StateKind::Tmc   ? lambda_for_mean(10.0)
                             : kind == StateKind::Twb ? x_for_mean(10.0)
                                                      : 10.0;
    const ChannelParams channel(0.85, 0.6);
    const JointDistribution ideal = ideal_joint(kind, parameter);
    for (auto _ : state) {
        benchmark::DoNotOptimize(thinning_oracle(ideal, channel));
    }
}
BENCHMARK(BM_thinning_oracle)->Arg(0)->Arg(1)->Arg(2);

void BM_capacity_search(benchmark::State& state) {
    const JointDistribution joint =
        joint_twb(x_for_mean(10.0), ChannelParams(0.9, 0.9));
    const int alphabet = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(capacity(joint, alphabet));
    }
}
BENCHMARK(BM_capacity_search)->Arg(2)->Arg(4);

void BM_bessel_series(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_bessel_i_scaled(3, 250.0));
    }
}
BENCHMARK(BM_bessel_series);

void BM_hypergeometric_series(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyp2f1_equal(7, 2, 0.7));
    }
}
BENCHMARK(BM_hypergeometric_series);

void BM_mutual_information_kernel(benchmark::State& state) {
    const double table[16] = {0.10, 0.02, 0.01, 0.00, 0.03, 0.20, 0.02, 0.01,
                              0.01, 0.03, 0.25, 0.02, 0.00, 0.01, 0.02, 0.27};
    for (auto _ : state) {
        benchmark::DoNotOptimize(detail::mutual_information_unchecked(table, 4));
    }
}
BENCHMARK(BM_mutual_information_kernel);

}  // namespace

BENCHMARK_MAIN();
