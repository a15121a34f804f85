#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <vector>

#include "csram/errors.hpp"
#include "csram/inference.hpp"
#include "csram/network.hpp"
#include "support/reference.hpp"

using namespace csram;

namespace {

FeatureMap to_feature(const ref::Map& m) {
    FeatureMap f = FeatureMap::bits({m.c, m.h, m.w});
    for (int c = 0; c < m.c; ++c)
        for (int y = 0; y < m.h; ++y)
            for (int x = 0; x < m.w; ++x) f.set_bit_at(c, y, x, m.at(c, y, x) > 0);
    return f;
}

ref::Map random_map(std::mt19937_64& rng, int c, int h, int w) {
    ref::Map m{c, h, w, {}};
    m.v = ref::random_bipolar(rng, size_t(c) * h * w);
    return m;
}

std::vector<BinaryVector> pack_kernels(const std::vector<std::vector<int>>& kernels) {
    std::vector<BinaryVector> out;
    out.reserve(kernels.size());
    for (const auto& k : kernels) out.push_back(pack_bipolar(k));
    return out;
}

EngineSettings oracle_settings() {
    EngineSettings s;
    s.kind = EngineKind::oracle;
    return s;
}

NetworkSpec conv_net(Shape in, int k, int out_channels, int stride, int pad) {
    NetworkSpec net;
    net.name = "t";
    net.input = in;
    LayerSpec l;
    l.name = "c1";
    l.kind = LayerKind::conv;
    l.binarized = true;
    l.k = k;
    l.in_channels = in.c;
    l.out_channels = out_channels;
    l.stride = stride;
    l.padding = pad;
    net.layers.push_back(l);
    net.classes = int(net.shapes().back().elements());
    return net;
}

NetworkSpec fc_net(Shape in, int out_channels) {
    NetworkSpec net;
    net.name = "t";
    net.input = in;
    LayerSpec l;
    l.name = "f1";
    l.kind = LayerKind::fc;
    l.binarized = true;
    l.in_channels = int(in.elements());
    l.out_channels = out_channels;
    net.layers.push_back(l);
    net.classes = out_channels;
    return net;
}

} // namespace

TEST_CASE("tile plans split N bits into 64-bit ops") {
    TilePlan p = plan_tiles(1152);
    CHECK(p.tiles == 18);
    CHECK(p.tail_bits == 64);
    CHECK(p.half_phases == 36);

    p = plan_tiles(64);
    CHECK(p.tiles == 1);
    CHECK(p.tail_bits == 64);
    CHECK(p.half_phases == 2);

    p = plan_tiles(100);
    CHECK(p.tiles == 2);
    CHECK(p.tail_bits == 36);
    CHECK(p.half_phases == 4);

    p = plan_tiles(1);
    CHECK(p.tiles == 1);
    CHECK(p.tail_bits == 1);
    CHECK(p.half_phases == 1);

    CHECK_THROWS_AS(plan_tiles(0), std::invalid_argument);
}

TEST_CASE("padding correction matches the engine half-phase policy") {
    OracleEngine oracle;
    CHECK(padding_correction(plan_tiles(100), oracle) == 28);
    CHECK(padding_correction(plan_tiles(64), oracle) == 0);
    CHECK(padding_correction(plan_tiles(96), oracle) == 0);  // 32-bit tail, no skip
    CHECK(padding_correction(plan_tiles(65), oracle) == 31); // 1 payload bit in the tail
    CHECK(padding_correction(plan_tiles(20), oracle) == 12);

    EngineSettings s;
    s.kind = EngineKind::proposal_b;
    s.geometry.sections = 1;
    auto b = make_engine(s);
    CHECK(padding_correction(plan_tiles(100), *b) == 28);
    CHECK(padding_correction(plan_tiles(20), *b) == 44); // full word, no half skip
}

TEST_CASE("corrected tile sums equal the unsplit reference for N in 1..256") {
    std::mt19937_64 rng(21);
    EngineSettings s = oracle_settings();
    auto engine = make_engine(s);
    for (int n = 1; n <= 256; ++n) {
        std::vector<int> av = ref::random_bipolar(rng, size_t(n));
        std::vector<int> kv = ref::random_bipolar(rng, size_t(n));
        std::vector<BinaryVector> kernels{pack_bipolar(kv)};
        CostLedger ledger;
        auto disp = make_dispatcher(s, engine.get(), kernels, n, ledger);
        std::vector<int64_t> sums;
        disp->field_sums(pack_bipolar(av), sums);
        REQUIRE(sums.size() == 1);
        CHECK(sums[0] == ref::match_count(av, kv));
    }
}

TEST_CASE("randomized conv and fc layers match the dense reference") {
    std::mt19937_64 rng(1234);
    EngineSettings s = oracle_settings();
    int cases = 0;
    for (int iter = 0; iter < 60; ++iter) {
        if (iter % 3 == 2) {
            int c = 1 + int(rng() % 6), h = 1 + int(rng() % 4), w = 1 + int(rng() % 4);
            int o = 1 + int(rng() % 8);
            NetworkSpec net = fc_net({c, h, w}, o);
            ref::Map in = random_map(rng, c, h, w);
            std::vector<std::vector<int>> rows;
            for (int i = 0; i < o; ++i) rows.push_back(ref::random_bipolar(rng, in.v.size()));
            Weights wts;
            wts.by_layer["f1"].kernels = pack_kernels(rows);
            InferenceResult r = infer(net, wts, to_feature(in), s, CostConstants{});
            std::vector<int> want = ref::fc_dot(in.v, rows);
            REQUIRE(r.logits.size() == size_t(o));
            for (int i = 0; i < o; ++i) CHECK(r.logits[size_t(i)] == want[size_t(i)]);
        } else {
            int c = 1 + int(rng() % 6), h = 3 + int(rng() % 8), w = 3 + int(rng() % 8);
            int k = 1 + int(rng() % 3);
            int pad = int(rng() % 2);
            int stride = 1 + int(rng() % 2);
            if (h + 2 * pad < k || w + 2 * pad < k) continue;
            int o = 1 + int(rng() % 8);
            NetworkSpec net = conv_net({c, h, w}, k, o, stride, pad);
            ref::Map in = random_map(rng, c, h, w);
            std::vector<std::vector<int>> kernels;
            for (int i = 0; i < o; ++i) {
                kernels.push_back(ref::random_bipolar(rng, size_t(k) * k * c));
            }
            Weights wts;
            wts.by_layer["c1"].kernels = pack_kernels(kernels);
            InferenceResult r = infer(net, wts, to_feature(in), s, CostConstants{});
            ref::Map want = ref::conv_dot(in, kernels, k, stride, pad);
            REQUIRE(r.logits.size() == want.v.size());
            for (size_t i = 0; i < want.v.size(); ++i) {
                CHECK(r.logits[i] == want.v[i]); // logits are the raw bipolar dots
            }
        }
        ++cases;
    }
    CHECK(cases >= 50);
}

TEST_CASE("all-ones input and kernels activate every output") {
    NetworkSpec net = conv_net({2, 4, 4}, 3, 3, 1, 0);
    ref::Map ones{2, 4, 4, std::vector<int>(32, 1)};
    std::vector<std::vector<int>> kernels(3, std::vector<int>(18, 1));
    Weights wts;
    wts.by_layer["c1"].kernels = pack_kernels(kernels);
    InferenceResult r = infer(net, wts, to_feature(ones), oracle_settings(), CostConstants{});
    for (int64_t logit : r.logits) CHECK(logit == 18); // popcount == N
}

TEST_CASE("fc with weights equal to the input activates every output") {
    std::mt19937_64 rng(5);
    ref::Map in = random_map(rng, 3, 2, 2);
    NetworkSpec net = fc_net({3, 2, 2}, 4);
    Weights wts;
    wts.by_layer["f1"].kernels = pack_kernels({in.v, in.v, in.v, in.v});
    InferenceResult r = infer(net, wts, to_feature(in), oracle_settings(), CostConstants{});
    for (int64_t logit : r.logits) CHECK(logit == 12);
}

TEST_CASE("three-layer network matches the reference chain end to end") {
    std::mt19937_64 rng(77);
    NetworkSpec net;
    net.name = "toy3";
    net.input = {4, 8, 8};
    net.classes = 10;
    LayerSpec conv;
    conv.name = "c1";
    conv.kind = LayerKind::conv;
    conv.binarized = true;
    conv.k = 3;
    conv.in_channels = 4;
    conv.out_channels = 6;
    conv.padding = 1;
    LayerSpec pool;
    pool.name = "p1";
    pool.kind = LayerKind::pool;
    pool.in_channels = 6;
    pool.out_channels = 6;
    LayerSpec fc;
    fc.name = "f1";
    fc.kind = LayerKind::fc;
    fc.binarized = true;
    fc.in_channels = 6 * 4 * 4;
    fc.out_channels = 10;
    net.layers = {conv, pool, fc};
    net.validate();

    std::vector<std::vector<int>> ck, fk;
    for (int i = 0; i < 6; ++i) ck.push_back(ref::random_bipolar(rng, 36));
    for (int i = 0; i < 10; ++i) fk.push_back(ref::random_bipolar(rng, 96));
    Weights wts;
    wts.by_layer["c1"].kernels = pack_kernels(ck);
    wts.by_layer["f1"].kernels = pack_kernels(fk);

    for (int trial = 0; trial < 100; ++trial) {
        ref::Map in = random_map(rng, 4, 8, 8);
        ref::Map pooled = ref::or_pool(ref::binarize(ref::conv_dot(in, ck, 3, 1, 1)));
        std::vector<int> logits = ref::fc_dot(pooled.v, fk);
        int want = int(std::max_element(logits.begin(), logits.end()) - logits.begin());

        InferenceResult r = infer(net, wts, to_feature(in), oracle_settings(), CostConstants{});
        for (int i = 0; i < 10; ++i) CHECK(r.logits[size_t(i)] == logits[size_t(i)]);
        CHECK(r.predicted == want);
        CHECK(r.popcount_error.stddev() == 0.0);
    }
}

TEST_CASE("engines agree bit for bit at sigma zero") {
    std::mt19937_64 rng(31);
    NetworkSpec net = conv_net({3, 6, 6}, 3, 5, 1, 1);
    ref::Map in = random_map(rng, 3, 6, 6);
    std::vector<std::vector<int>> kernels;
    for (int i = 0; i < 5; ++i) kernels.push_back(ref::random_bipolar(rng, 27));
    Weights wts;
    wts.by_layer["c1"].kernels = pack_kernels(kernels);
    FeatureMap img = to_feature(in);

    EngineSettings oracle = oracle_settings();
    InferenceResult want = infer(net, wts, img, oracle, CostConstants{});

    EngineSettings a = oracle;
    a.kind = EngineKind::proposal_a;
    a.sigma = 0.0;
    CHECK(infer(net, wts, img, a, CostConstants{}).logits == want.logits);

    EngineSettings a1 = a;
    a1.geometry.dual_rwl = false;
    CHECK(infer(net, wts, img, a1, CostConstants{}).logits == want.logits);

    EngineSettings b = oracle;
    b.kind = EngineKind::proposal_b;
    b.geometry.sections = 1;
    CHECK(infer(net, wts, img, b, CostConstants{}).logits == want.logits);

    EngineSettings base = oracle;
    base.kind = EngineKind::baseline;
    CHECK(infer(net, wts, img, base, CostConstants{}).logits == want.logits);
}

TEST_CASE("per-element popcount error scales as sigma root M") {
    std::mt19937_64 rng(8);
    const double sigma = 0.4359;
    struct Case {
        int k, channels, pad, m;
    };
    for (Case c : {Case{1, 64, 0, 2}, Case{1, 256, 0, 8}, Case{3, 128, 1, 36}}) {
        int h = 100, w = 100;
        NetworkSpec net = conv_net({c.channels, h, w}, c.k, 1, 1, c.pad);
        CHECK(plan_tiles(net.layers[0].n_bits()).half_phases == c.m);
        Weights wts = random_weights(net, rng());
        ref::Map in = random_map(rng, c.channels, h, w);
        EngineSettings s;
        s.kind = EngineKind::proposal_a;
        s.sigma = sigma;
        s.seed = rng();
        InferenceResult r = infer(net, wts, to_feature(in), s, CostConstants{});
        CHECK(r.popcount_error.n == 10000);
        double want = sigma * std::sqrt(double(c.m));
        CHECK(r.popcount_error.stddev() == doctest::Approx(want).epsilon(0.15));
        CHECK(std::abs(r.popcount_error.mean) < 0.25 * want); // no gross bias
    }
}

TEST_CASE("inference is deterministic per seed") {
    std::mt19937_64 rng(91);
    NetworkSpec net = conv_net({2, 5, 5}, 3, 4, 1, 1);
    Weights wts = random_weights(net, 7);
    ref::Map in = random_map(rng, 2, 5, 5);
    FeatureMap img = to_feature(in);
    EngineSettings s;
    s.kind = EngineKind::proposal_a;
    s.sigma = 1.5;
    s.seed = 42;
    InferenceResult r1 = infer(net, wts, img, s, CostConstants{});
    InferenceResult r2 = infer(net, wts, img, s, CostConstants{});
    CHECK(r1.logits == r2.logits);
    CHECK(r1.popcount_error.mean == r2.popcount_error.mean);
    CHECK(r1.popcount_error.m2 == r2.popcount_error.m2);

    s.seed = 43;
    InferenceResult r3 = infer(net, wts, img, s, CostConstants{});
    CHECK(r1.logits != r3.logits); // 100 noisy elements; collision is implausible
}

TEST_CASE("sectioned dispatch shares pseudo-reads across output channels") {
    NetworkSpec net = conv_net({64, 2, 2}, 1, 8, 1, 0);
    Weights wts = random_weights(net, 3);
    FeatureMap img = FeatureMap::bits({64, 2, 2});

    auto run = [&](int sections) {
        EngineSettings s = oracle_settings();
        s.geometry.sections = sections;
        InferenceResult r = infer(net, wts, img, s, CostConstants{});
        return r.ledger.totals();
    };
    LayerCosts four = run(4);
    LayerCosts one = run(1);
    // 4 positions, 8 channels, 1 tile each.
    CHECK(four.count(EventKind::adc_conversion) == 32);
    CHECK(one.count(EventKind::adc_conversion) == 32);
    CHECK(four.count(EventKind::pseudo_read_batch) == 8);
    CHECK(one.count(EventKind::pseudo_read_batch) == 32);
    CHECK(one.count(EventKind::pseudo_read_batch) == 4 * four.count(EventKind::pseudo_read_batch));
}

TEST_CASE("adder-tree engine refuses sectioned geometry") {
    EngineSettings s;
    s.kind = EngineKind::proposal_b;
    s.geometry.sections = 4;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.geometry.sections = 1;
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("baseline ledger counts follow the software cost recipe") {
    NetworkSpec net = conv_net({2, 4, 4}, 3, 3, 1, 0);
    Weights wts = random_weights(net, 11);
    FeatureMap img = FeatureMap::bits({2, 4, 4});
    EngineSettings s;
    s.kind = EngineKind::baseline;
    CostConstants cc;
    InferenceResult r = infer(net, wts, img, s, cc);
    // 4 positions, 3 channels, N = 18 -> 1 tile per element.
    int64_t words = 4 * 3;
    LayerCosts t = r.ledger.totals();
    CHECK(t.count(EventKind::sram_read) == 2 * words);
    CHECK(t.count(EventKind::host_instr, EventDetail::xnor) == words);
    CHECK(t.count(EventKind::host_instr, EventDetail::popcount_loop) ==
          words * cc.host_instrs_per_popcount);
    CHECK(t.count(EventKind::pseudo_read_batch) == 0);
    CHECK(t.count(EventKind::dual_read) == 0);
}

TEST_CASE("per-channel thresholds override the majority rule") {
    NetworkSpec net;
    net.name = "th";
    net.input = {1, 1, 1};
    net.classes = 2;
    LayerSpec conv;
    conv.name = "c1";
    conv.kind = LayerKind::conv;
    conv.binarized = true;
    conv.k = 1;
    conv.in_channels = 1;
    conv.out_channels = 2;
    LayerSpec fc;
    fc.name = "f1";
    fc.kind = LayerKind::fc;
    fc.binarized = true;
    fc.in_channels = 2;
    fc.out_channels = 2;
    net.layers = {conv, fc};

    Weights wts;
    wts.by_layer["c1"].kernels = pack_kernels({{1}, {1}});
    wts.by_layer["f1"].kernels = pack_kernels({{1, 1}, {1, -1}});
    FeatureMap img = FeatureMap::bits({1, 1, 1});
    img.set_bit_at(0, 0, 0, true);

    // Default rule: both channels fire (1 > 1/2), fc sees (+1,+1).
    net.validate();
    InferenceResult plain = infer(net, wts, img, oracle_settings(), CostConstants{});
    CHECK(plain.logits == std::vector<int64_t>{2, 0});

    // Override: channel 1 needs popcount > 5, which never happens with N = 1.
    net.layers[0].thresholds = {-1, 5};
    net.validate();
    InferenceResult forced = infer(net, wts, img, oracle_settings(), CostConstants{});
    CHECK(forced.logits == std::vector<int64_t>{0, 2});
}

TEST_CASE("host layers compute in integer arithmetic") {
    // 2x2 input, one host conv k=1 with weights (2, -3), then the layer is last.
    NetworkSpec net;
    net.name = "h";
    net.input = {2, 1, 1};
    net.classes = 2;
    LayerSpec l;
    l.name = "hc";
    l.kind = LayerKind::host_conv;
    l.k = 1;
    l.in_channels = 2;
    l.out_channels = 2;
    net.layers = {l};
    net.validate();

    Weights wts;
    wts.by_layer["hc"].host = {2, -3, -1, 4}; // rows: [2,-3], [-1,4]
    FeatureMap img = FeatureMap::ints({2, 1, 1});
    img.set_int_at(0, 0, 0, 10);
    img.set_int_at(1, 0, 0, 7);
    InferenceResult r = infer(net, wts, img, oracle_settings(), CostConstants{});
    CHECK(r.logits == std::vector<int64_t>{10 * 2 + 7 * -3, 10 * -1 + 7 * 4});
    CHECK(r.ledger.totals().count(EventKind::host_instr, EventDetail::mac) == 4);
}

TEST_CASE("host conv matches an independent zero-padded loop") {
    std::mt19937_64 rng(15);
    NetworkSpec net;
    net.name = "h2";
    net.input = {3, 5, 5};
    LayerSpec l;
    l.name = "hc";
    l.kind = LayerKind::host_conv;
    l.k = 3;
    l.in_channels = 3;
    l.out_channels = 4;
    l.padding = 1;
    net.layers = {l};
    net.classes = int(net.shapes().back().elements());
    net.validate();

    FeatureMap img = FeatureMap::ints({3, 5, 5});
    std::vector<int32_t> w(size_t(4) * 27);
    for (auto& x : img.values) x = int32_t(rng() % 17) - 8;
    for (auto& x : w) x = int32_t(rng() % 7) - 3;
    Weights wts;
    wts.by_layer["hc"].host = w;

    InferenceResult r = infer(net, wts, img, oracle_settings(), CostConstants{});
    for (int o = 0; o < 4; ++o) {
        for (int oy = 0; oy < 5; ++oy) {
            for (int ox = 0; ox < 5; ++ox) {
                int64_t sum = 0;
                int idx = 0;
                for (int c = 0; c < 3; ++c)
                    for (int ky = 0; ky < 3; ++ky)
                        for (int kx = 0; kx < 3; ++kx, ++idx) {
                            int iy = oy - 1 + ky, ix = ox - 1 + kx;
                            if (iy < 0 || iy >= 5 || ix < 0 || ix >= 5) continue;
                            sum += img.int_at(c, iy, ix) * w[size_t(o) * 27 + idx];
                        }
                CHECK(r.logits[(size_t(o) * 5 + oy) * 5 + ox] == sum);
            }
        }
    }
}

TEST_CASE("weights save and load round-trip") {
    auto dir = std::filesystem::temp_directory_path() / "csram_wts_test";
    std::filesystem::remove_all(dir);
    NetworkSpec net;
    net.name = "w";
    net.input = {2, 4, 4};
    net.classes = 3;
    LayerSpec hc;
    hc.name = "h1";
    hc.kind = LayerKind::host_conv;
    hc.k = 3;
    hc.in_channels = 2;
    hc.out_channels = 2;
    hc.padding = 1;
    LayerSpec pool;
    pool.name = "p1";
    pool.kind = LayerKind::pool;
    pool.in_channels = 2;
    pool.out_channels = 2;
    LayerSpec fc;
    fc.name = "f1";
    fc.kind = LayerKind::fc;
    fc.binarized = true;
    fc.in_channels = 8;
    fc.out_channels = 3;
    net.layers = {hc, pool, fc};
    net.validate();

    Weights w = random_weights(net, 99);
    save_weights(dir, net, w);
    Weights back = load_weights(dir, net);
    CHECK(back.by_layer.at("h1").host == w.by_layer.at("h1").host);
    CHECK(back.by_layer.at("f1").kernels == w.by_layer.at("f1").kernels);
    CHECK(back.by_layer.find("p1") == back.by_layer.end());

    // A mismatched network must refuse the stored shapes.
    net.layers[2].out_channels = 5;
    net.classes = 5;
    CHECK_THROWS_AS(load_weights(dir, net), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("evaluation merges identically across job counts") {
    std::mt19937_64 rng(55);
    NetworkSpec net = conv_net({2, 6, 6}, 3, 4, 1, 1);
    net.layers[0].name = "c1";
    Weights wts = random_weights(net, 4);
    Dataset data;
    for (int i = 0; i < 9; ++i) {
        ref::Map m = random_map(rng, 2, 6, 6);
        data.images.push_back(to_feature(m));
        data.labels.push_back(i % net.classes);
    }
    EngineSettings s;
    s.kind = EngineKind::proposal_a;
    s.sigma = 0.9;
    s.seed = 1000;
    EvaluationResult one = evaluate(net, wts, data, s, CostConstants{}, 1);
    EvaluationResult four = evaluate(net, wts, data, s, CostConstants{}, 4);
    CHECK(one.predictions == four.predictions);
    CHECK(one.correct == four.correct);
    CHECK(one.popcount_error.n == four.popcount_error.n);
    CHECK(one.popcount_error.mean == four.popcount_error.mean);
    CHECK(one.popcount_error.m2 == four.popcount_error.m2);
    CHECK(one.ledger.totals().energy_pj == four.ledger.totals().energy_pj);
    CHECK(one.ledger.totals().latency_ns == four.ledger.totals().latency_ns);

    // Exact engine: evaluation accuracy equals the oracle's.
    EngineSettings z = s;
    z.sigma = 0.0;
    EvaluationResult zero = evaluate(net, wts, data, z, CostConstants{}, 2);
    EvaluationResult oracle = evaluate(net, wts, data, oracle_settings(), CostConstants{}, 2);
    CHECK(zero.predictions == oracle.predictions);
    CHECK(zero.accuracy == oracle.accuracy);
}

TEST_CASE("noise statistics accumulate like a population") {
    NoiseStats a;
    for (double x : {1.0, 2.0, 3.0, 4.0}) a.add(x);
    CHECK(a.n == 4);
    CHECK(a.mean == doctest::Approx(2.5));
    CHECK(a.stddev() == doctest::Approx(ref::stddev({1, 2, 3, 4})));

    NoiseStats b;
    for (double x : {10.0, 0.0, -3.0}) b.add(x);
    NoiseStats merged = a;
    merged.merge(b);
    CHECK(merged.n == 7);
    CHECK(merged.stddev() == doctest::Approx(ref::stddev({1, 2, 3, 4, 10, 0, -3})));
}

TEST_CASE("inference validates inputs") {
    NetworkSpec net = conv_net({2, 4, 4}, 3, 2, 1, 0);
    Weights wts = random_weights(net, 1);
    SUBCASE("image shape mismatch") {
        FeatureMap img = FeatureMap::bits({2, 5, 5});
        CHECK_THROWS_AS(infer(net, wts, img, oracle_settings(), CostConstants{}), ConfigError);
    }
    SUBCASE("host map into a binarized layer") {
        FeatureMap img = FeatureMap::ints({2, 4, 4});
        CHECK_THROWS_AS(infer(net, wts, img, oracle_settings(), CostConstants{}), ConfigError);
    }
    SUBCASE("missing layer weights") {
        Weights empty;
        FeatureMap img = FeatureMap::bits({2, 4, 4});
        CHECK_THROWS_AS(infer(net, empty, img, oracle_settings(), CostConstants{}), ConfigError);
    }
    SUBCASE("empty dataset") {
        Dataset data;
        CHECK_THROWS_AS(evaluate(net, wts, data, oracle_settings(), CostConstants{}, 1),
                        ConfigError);
    }
}
