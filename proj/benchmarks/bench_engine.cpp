// Microbenchmarks for the hot paths: single-word convolve under each engine,
// sectioned bank dispatch, ledger appends and a full small conv layer.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "csram/adder_tree.hpp"
#include "csram/array.hpp"
#include "csram/bits.hpp"
#include "csram/charge_share.hpp"
#include "csram/cost.hpp"
#include "csram/inference.hpp"
#include "csram/network.hpp"

using namespace csram;

namespace {

std::vector<std::pair<BitWord, BitWord>> word_pairs(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<BitWord, BitWord>> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i)
        out.emplace_back(BitWord(rng(), kWordBits), BitWord(rng(), kWordBits));
    return out;
}

void BM_PackedPopcount(benchmark::State& state) {
    auto pairs = word_pairs(1024, 1);
    size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ & 1023];
        benchmark::DoNotOptimize(xnor_popcount(a, b));
    }
}
BENCHMARK(BM_PackedPopcount);

void BM_AdderTreeConvolve(benchmark::State& state) {
    AdderTreeEngine eng;
    auto pairs = word_pairs(1024, 2);
    size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ & 1023];
        benchmark::DoNotOptimize(eng.convolve64(a, b));
    }
}
BENCHMARK(BM_AdderTreeConvolve);

void BM_ChargeShareConvolve(benchmark::State& state) {
    ChargeShareEngine eng(state.range(0) == 0 ? 0.0 : 0.4359, 3);
    auto pairs = word_pairs(1024, 4);
    size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ & 1023];
        benchmark::DoNotOptimize(eng.convolve64(a, b));
    }
}
BENCHMARK(BM_ChargeShareConvolve)->Arg(0)->Arg(1); // noise-free vs sigma=0.4359

void BM_SectionedConvolve(benchmark::State& state) {
    // one pseudo-read shared by `sections` kernel rows
    const int sections = int(state.range(0));
    ArrayGeometry g;
    g.sections = sections;
    CostLedger ledger;
    SectionedBank bank(g, ledger);
    std::mt19937_64 rng(5);
    std::vector<RowAddress> rows;
    for (int s = 0; s < sections; ++s) {
        RowAddress r{0, s, 0};
        bank.write_row(r, BitWord(rng(), kWordBits));
        rows.push_back(r);
    }
    bank.write_activation(0, BitWord(rng(), kWordBits));
    ChargeShareEngine eng(0.4359, 6);
    std::vector<int> out;
    for (auto _ : state) {
        LineState line = bank.pseudo_read(0);
        benchmark::DoNotOptimize(bank.sectioned_convolve(line, rows, eng));
    }
    state.SetItemsProcessed(state.iterations() * sections);
}
BENCHMARK(BM_SectionedConvolve)->Arg(1)->Arg(2)->Arg(4);

void BM_LedgerRecord(benchmark::State& state) {
    CostLedger ledger;
    ledger.set_layer("bench");
    for (auto _ : state)
        ledger.record(EventKind::adc_conversion, EventDetail::none, 1);
    benchmark::DoNotOptimize(ledger.totals());
}
BENCHMARK(BM_LedgerRecord);

void BM_ConvLayerInference(benchmark::State& state) {
    // 16x16x16 -> 16 channels, k3 pad1: 4096 output elements, N=144
    NetworkSpec net;
    net.name = "bench";
    net.input = {16, 16, 16};
    net.classes = 16 * 16 * 16;
    LayerSpec l;
    l.name = "c";
    l.kind = LayerKind::conv;
    l.k = 3;
    l.in_channels = 16;
    l.out_channels = 16;
    l.padding = 1;
    l.binarized = true;
    net.layers = {l};
    net.validate();
    Weights w = random_weights(net, 7);
    std::mt19937_64 rng(8);
    FeatureMap img;
    img.shape = net.input;
    img.binarized = true;
    img.planes.assign(16, BinaryVector(256));
    for (auto& p : img.planes)
        for (size_t i = 0; i < 256; ++i)
            p.set_bit(i, rng() & 1);
    EngineSettings s;
    s.kind = state.range(0) == 0 ? EngineKind::oracle : EngineKind::proposal_a;
    for (auto _ : state)
        benchmark::DoNotOptimize(infer(net, w, img, s, CostConstants()));
    state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_ConvLayerInference)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
