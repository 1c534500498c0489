#include <benchmark/benchmark.h>

#include <random>

#include "braidhom/constructions.hpp"
#include "braidhom/homology.hpp"
#include "braidhom/unwinder.hpp"

namespace {

using namespace braidhom;

const SurfaceSystem& torusSystem() {
    static SurfaceSystem sys(buildStandardSurface(1));
    return sys;
}

const SurfaceSystem& genus2System() {
    static SurfaceSystem sys(buildStandardSurface(2));
    return sys;
}

EdgeBraidWord randomWord(const SurfaceSystem& sys, std::mt19937_64& rng, int letters) {
    const auto& edges = sys.base().edges();
    std::uniform_int_distribution<size_t> pick(0, edges.size() - 1);
    std::uniform_int_distribution<int> flip(0, 1);
    EdgeBraidWord w;
    for (int i = 0; i < letters; ++i) {
        const Edge& e = edges[pick(rng)];
        DirectedEdge d = flip(rng) ? DirectedEdge{e.a, e.b} : DirectedEdge{e.b, e.a};
        w.letters.push_back({d, flip(rng) ? 1 : -1});
    }
    return w;
}

void BM_SmithNormalForm(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-5, 5);
    const int n = static_cast<int>(state.range(0));
    IMatrix a(n, std::vector<BigInt>(n));
    for (auto& row : a) {
        for (auto& x : row) x = entry(rng);
    }
    for (auto _ : state) {
        SnfResult snf = smithNormalForm(a);
        benchmark::DoNotOptimize(snf.d);
    }
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(24);

void BM_HomologyBasis(benchmark::State& state) {
    SimplicialSurface s = buildStandardSurface(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        SdSurface sd = subdivide(s);
        HomologyBasis basis(sd);
        benchmark::DoNotOptimize(basis.rank());
    }
}
BENCHMARK(BM_HomologyBasis)->Arg(1)->Arg(2);

void BM_PuncturedCollapse(benchmark::State& state) {
    const SurfaceSystem& sys = genus2System();
    for (auto _ : state) {
        PuncturedComplex pc(sys.sd(), sys.homology(), {0, 1, 2});
        benchmark::DoNotOptimize(pc.spineRank());
    }
}
BENCHMARK(BM_PuncturedCollapse);

void BM_ExpandAndFingerprint(benchmark::State& state) {
    const SurfaceSystem& sys = torusSystem();
    std::mt19937_64 rng(11);
    EdgeBraidWord w = randomWord(sys, rng, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        MoveSequence ms = expand(sys.sd(), w);
        ms.append(ms.reversed());  // force a pure closed braid
        BraidFingerprint fp = fingerprint(sys, ms);
        benchmark::DoNotOptimize(fp.strands);
    }
}
BENCHMARK(BM_ExpandAndFingerprint)->Arg(8)->Arg(32);

void BM_KernelCertificate(benchmark::State& state) {
    const SurfaceSystem& sys = torusSystem();
    std::mt19937_64 rng(13);
    EdgeBraidWord w = randomWord(sys, rng, 12);
    MoveSequence ms = expand(sys.sd(), w);
    for (auto _ : state) {
        KernelDecision d = kernelCertificate(sys, ms);
        benchmark::DoNotOptimize(d.certificate);
    }
}
BENCHMARK(BM_KernelCertificate);

}  // namespace

BENCHMARK_MAIN();
