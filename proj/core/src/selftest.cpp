#include "csram/selftest.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "csram/adder_tree.hpp"
#include "csram/bits.hpp"
#include "csram/charge_share.hpp"
#include "csram/cost.hpp"
#include "csram/inference.hpp"
#include "csram/network.hpp"

namespace csram {
namespace {

bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

bool adc_round_trip() {
    for (int cells : {32, 64}) {
        AdcModel adc(0.0, 11, cells);
        for (int p = 0; p <= cells; ++p)
            if (adc.convert(make_level(p, cells)) != p)
                return false;
    }
    return true;
}

bool adc_code_space() {
    AdcModel adc(0.0, 11, 32);
    std::set<int> decoded;
    int codes = 0;
    for (Subclass sc : {Subclass::SC1, Subclass::SC2, Subclass::SC3, Subclass::SC4}) {
        auto [lo, hi] = adc.legal_count_range(sc);
        for (int c = lo; c <= hi; ++c) {
            int p = adc.decode(sc, c);
            if (p < 0 || p > 32)
                return false;
            decoded.insert(p);
            ++codes;
        }
    }
    return codes == 33 && decoded.size() == 33;
}

bool tree_exact() {
    AdderTreeEngine tree;
    std::mt19937_64 rng(21);
    for (int i = 0; i < 10000; ++i) {
        BitWord a(rng(), kWordBits), b(rng(), kWordBits);
        if (tree.convolve64(a, b) != xnor_popcount(a, b))
            return false;
    }
    return true;
}

bool analog_noise_free_exact() {
    std::mt19937_64 rng(22);
    for (bool dual : {true, false}) {
        ChargeShareEngine eng(0.0, 7, dual);
        for (int i = 0; i < 1000; ++i) {
            BitWord a(rng(), kWordBits), b(rng(), kWordBits);
            if (eng.convolve64(a, b) != xnor_popcount(a, b))
                return false;
        }
    }
    return true;
}

bool split_distributive() {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        size_t len = 65 + rng() % 576;
        BinaryVector a(len), b(len);
        for (size_t j = 0; j < len; ++j) {
            a.set_bit(j, rng() & 1);
            b.set_bit(j, rng() & 1);
        }
        int sum = 0;
        for (size_t w = 0; w < a.word_count(); ++w)
            sum += xnor_popcount(a.word(w), b.word(w));
        if (sum != xnor_popcount(a, b))
            return false;
    }
    return true;
}

bool cost_calibration() {
    CostConstants c;
    c.validate();
    if (!near(op_energy_pj(OpKind::charge_share, 4, c), 0.767))
        return false;
    if (!near(op_energy_pj(OpKind::charge_share, 1, c), 1.914))
        return false;
    double e2 = op_energy_pj(OpKind::charge_share, 2, c);
    if (!(0.767 < e2 && e2 < 1.914))
        return false;
    double tree = op_energy_pj(OpKind::adder_tree, 1, c);
    if (!near(tree, 64 * 29.67e-3 + 0.26 * 0.3, 1e-6))
        return false;
    if (!near(op_latency_ns(OpKind::charge_share, 8, c), 45.0))
        return false;
    if (!near(op_latency_ns(OpKind::adder_tree, 1, c), 1.3))
        return false;
    return true;
}

NetworkSpec tiny_net() {
    NetworkSpec net;
    net.name = "selftest";
    net.input = {2, 4, 4};
    net.classes = 10;
    LayerSpec conv;
    conv.name = "c1";
    conv.kind = LayerKind::conv;
    conv.k = 3;
    conv.in_channels = 2;
    conv.out_channels = 4;
    conv.padding = 1;
    conv.binarized = true;
    LayerSpec fc;
    fc.name = "f1";
    fc.kind = LayerKind::fc;
    fc.in_channels = 64;
    fc.out_channels = 10;
    fc.binarized = true;
    net.layers = {conv, fc};
    net.validate();
    return net;
}

FeatureMap random_image(std::mt19937_64& rng) {
    FeatureMap img;
    img.shape = {2, 4, 4};
    img.binarized = true;
    img.planes.assign(2, BinaryVector(16));
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 16; ++i)
            img.planes[size_t(c)].set_bit(size_t(i), rng() & 1);
    return img;
}

bool engines_agree() {
    NetworkSpec net = tiny_net();
    Weights w = random_weights(net, 5);
    std::mt19937_64 rng(24);
    CostConstants c;
    for (int trial = 0; trial < 5; ++trial) {
        FeatureMap img = random_image(rng);
        std::vector<std::vector<int64_t>> logits;
        for (EngineKind kind : {EngineKind::oracle, EngineKind::proposal_a, EngineKind::proposal_b,
                                EngineKind::baseline}) {
            EngineSettings s;
            s.kind = kind;
            s.sigma = 0.0;
            s.seed = 1;
            if (kind == EngineKind::proposal_b)
                s.geometry.sections = 1;
            logits.push_back(infer(net, w, img, s, c).logits);
        }
        for (size_t i = 1; i < logits.size(); ++i)
            if (logits[i] != logits[0])
                return false;
    }
    return true;
}

bool known_dot_products() {
    // All-matching and all-differing operands bound the dot product exactly.
    NetworkSpec net;
    net.name = "dots";
    net.input = {1, 1, 96};
    net.classes = 2;
    LayerSpec fc;
    fc.name = "f";
    fc.kind = LayerKind::fc;
    fc.in_channels = 96;
    fc.out_channels = 2;
    fc.binarized = true;
    net.layers = {fc};
    net.validate();

    Weights w;
    LayerWeights& lw = w.by_layer["f"];
    BinaryVector ones(96);
    for (size_t i = 0; i < 96; ++i)
        ones.set_bit(i, true);
    lw.kernels = {ones, BinaryVector(96)}; // all +1 and all -1

    FeatureMap img;
    img.shape = {1, 1, 96};
    img.binarized = true;
    img.planes = {ones};

    EngineSettings s;
    s.kind = EngineKind::proposal_a;
    s.sigma = 0.0;
    auto logits = infer(net, w, img, s, CostConstants()).logits;
    return logits == std::vector<int64_t>{96, -96};
}

bool noise_behaviour() {
    // Same seed, same stream; and the default noise is visible but bounded.
    std::mt19937_64 rng(25);
    std::vector<std::pair<BitWord, BitWord>> inputs;
    for (int i = 0; i < 2000; ++i)
        inputs.emplace_back(BitWord(rng(), kWordBits), BitWord(rng(), kWordBits));

    ChargeShareEngine e1(0.4359, 99), e2(0.4359, 99);
    double sum = 0, sum2 = 0;
    int diffs = 0;
    for (const auto& [a, b] : inputs) {
        int c1 = e1.convolve64(a, b);
        int c2 = e2.convolve64(a, b);
        if (c1 != c2)
            return false;
        double err = c1 - xnor_popcount(a, b);
        if (err != 0)
            ++diffs;
        sum += err;
        sum2 += err * err;
    }
    if (diffs == 0)
        return false;
    double n = double(inputs.size());
    double std = std::sqrt((sum2 - sum * sum / n) / (n - 1));
    return 0.3 < std && std < 1.0;
}

} // namespace

bool run_selftest(std::ostream& out) {
    struct Check {
        const char* name;
        bool (*fn)();
    };
    const Check checks[] = {
        {"adc round-trip (sigma=0)", adc_round_trip},
        {"adc code space is a 33-code bijection", adc_code_space},
        {"adder tree matches packed popcount", tree_exact},
        {"charge-share sigma=0 matches packed popcount", analog_noise_free_exact},
        {"word-split popcounts sum to the full dot product", split_distributive},
        {"cost model hits its calibration points", cost_calibration},
        {"all engines agree on a noise-free network", engines_agree},
        {"hand-checked dot products", known_dot_products},
        {"noise is deterministic per seed and in range", noise_behaviour},
    };
    bool all = true;
    for (const Check& c : checks) {
        bool ok = false;
        std::string note;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        out << (ok ? "ok   " : "FAIL ") << c.name << note << '\n';
        all = all && ok;
    }
    return all;
}

} // namespace csram
