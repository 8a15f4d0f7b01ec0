// Parallel kernels against their serial references.

#include "plw/hankel_cholesky.hpp"
#include "plw/moments.hpp"
#include "plw/quadrature.hpp"

#include <benchmark/benchmark.h>

using namespace plw;

namespace {

Parameters bench_params(int n_max) { return Parameters::make("1", "1", make_policy(n_max + 1, 30)); }

struct Powers {
    void operator()(const QuadratureNode& node, std::span<Real> acc) const {
        Real p = node.weight / node.x;
        for (auto& a : acc) {
            a += p;
            p *= node.x;
        }
    }
};

template <bool Parallel>
void node_sums(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    DeQuadrature q(bench_params(n_max), -2, 2 * n_max + 2);
    while (q.levels() < 6) q.add_level();
    const auto nodes = q.level_nodes(5);
    const Bits prec = q.params().precision();
    const auto width = static_cast<std::size_t>(2 * n_max + 5);
    for (auto _ : state) {
        auto sums = Parallel ? sum_nodes(nodes, width, prec, Powers{}) : sum_nodes_serial(nodes, width, prec, Powers{});
        benchmark::DoNotOptimize(sums);
    }
    state.counters["nodes"] = static_cast<double>(nodes.size());
}

template <bool Parallel>
void moments(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    const Parameters p = bench_params(n_max);
    for (auto _ : state) {
        auto table = Parallel ? compute_moments(p, -2, 2 * n_max + 2) : compute_moments_serial(p, -2, 2 * n_max + 2);
        benchmark::DoNotOptimize(table);
    }
}

template <bool Parallel>
void cholesky(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    const Parameters p = bench_params(n_max);
    const MomentTable table = compute_moments(p, -2, 2 * n_max + 2);
    const HankelEntry entry = [&table](std::size_t i, std::size_t j) -> const Real& {
        return table.mu(static_cast<int>(i + j));
    };
    const auto size = static_cast<std::size_t>(n_max + 2);
    for (auto _ : state) {
        auto l = Parallel ? cholesky_hankel(entry, size, p.precision()) : cholesky_hankel_serial(entry, size, p.precision());
        benchmark::DoNotOptimize(l);
    }
}

}  // namespace

BENCHMARK(node_sums<true>)->Name("node_sums/parallel")->Arg(50)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(node_sums<false>)->Name("node_sums/serial")->Arg(50)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(moments<true>)->Name("moments/parallel")->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(moments<false>)->Name("moments/serial")->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(cholesky<true>)->Name("cholesky/parallel")->Arg(50)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(cholesky<false>)->Name("cholesky/serial")->Arg(50)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
