// Microbenchmarks for the three pipeline stages over unary spines
// f^k(a) vs f^k(b), which drive exactly k decomposition steps.

#include "auproof/antiunify.hpp"
#include "auproof/proof_check.hpp"
#include "auproof/proof_gen.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace auproof;

Signature spine_signature() {
    Signature sig;
    sig.declare_symbol("f", 1);
    sig.declare_symbol("a", 0);
    sig.declare_symbol("b", 0);
    return sig;
}

TermPtr spine(std::size_t k, const char* base) {
    TermPtr t = TermPattern::app(SymbolId{base, 0}, {});
    for (std::size_t i = 0; i < k; ++i) {
        t = TermPattern::app(SymbolId{"f", 1}, {t});
    }
    return t;
}

void bench_antiunify(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const Signature sig = spine_signature();
    const TermPtr t1 = spine(k, "a");
    const TermPtr t2 = spine(k, "b");
    for (auto _ : state) {
        benchmark::DoNotOptimize(antiunify(t1, t2, sig));
    }
}

void bench_generate(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const Signature sig = spine_signature();
    const AuResult result =
        antiunify(spine(k, "a"), spine(k, "b"), sig);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen_full(result, sig));
    }
}

void bench_check(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const Signature sig = spine_signature();
    const ProofObject proof =
        gen_full(antiunify(spine(k, "a"), spine(k, "b"), sig), sig);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_proof(proof));
    }
}

} // namespace

BENCHMARK(bench_antiunify)->Arg(1)->Arg(10)->Arg(50)->Arg(100);
BENCHMARK(bench_generate)->Arg(1)->Arg(10)->Arg(50)->Arg(100);
BENCHMARK(bench_check)->Arg(1)->Arg(10)->Arg(50)->Arg(100);

BENCHMARK_MAIN();
