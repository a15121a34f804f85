#include "csram/inference.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "csram/adder_tree.hpp"
#include "csram/charge_share.hpp"
#include "csram/errors.hpp"
#include "csram/rng.hpp"
#include "csram/tensor_io.hpp"

namespace csram {

const char* to_string(EngineKind k) {
    switch (k) {
    case EngineKind::proposal_a: return "proposal_a";
    case EngineKind::proposal_b: return "proposal_b";
    case EngineKind::oracle: return "oracle";
    case EngineKind::baseline: return "baseline";
    }
    return "?";
}

EngineKind engine_kind_from_string(const std::string& s) {
    if (s == "proposal_a") return EngineKind::proposal_a;
    if (s == "proposal_b") return EngineKind::proposal_b;
    if (s == "oracle") return EngineKind::oracle;
    if (s == "baseline") return EngineKind::baseline;
    throw ConfigError("unknown engine '" + s + "' (proposal_a, proposal_b, oracle, baseline)");
}

void EngineSettings::validate() const {
    geometry.validate();
    if (sigma < 0.0) throw ConfigError("sigma must be >= 0");
    if (kind == EngineKind::proposal_b && geometry.sections > 1) {
        throw ConfigError("proposal_b senses each row pair itself; sections must be 1");
    }
}

std::unique_ptr<PopcountEngine> make_engine(const EngineSettings& s) {
    s.validate();
    switch (s.kind) {
    case EngineKind::proposal_a:
        return std::make_unique<ChargeShareEngine>(s.sigma, s.seed, s.geometry.dual_rwl);
    case EngineKind::proposal_b: return std::make_unique<AdderTreeEngine>();
    case EngineKind::oracle: return std::make_unique<OracleEngine>();
    case EngineKind::baseline: return nullptr;
    }
    throw ConfigError("unknown engine kind");
}

TilePlan plan_tiles(int64_t n_bits) {
    if (n_bits < 1) throw std::invalid_argument("tile plan needs at least one bit");
    TilePlan p;
    p.n_bits = n_bits;
    p.tiles = int((n_bits + kWordBits - 1) / kWordBits);
    p.tail_bits = int(n_bits - int64_t(p.tiles - 1) * kWordBits);
    p.half_phases = int((n_bits + 31) / 32);
    return p;
}

int64_t padding_correction(const TilePlan& plan, const PopcountEngine& engine) {
    // Full tiles contribute no padding; only the tail can.
    return engine.processed_bits(plan.tail_bits) - plan.tail_bits;
}

void NoiseStats::add(double x) {
    n += 1;
    double d = x - mean;
    mean += d / double(n);
    m2 += d * (x - mean);
}

void NoiseStats::merge(const NoiseStats& other) {
    if (other.n == 0) return;
    if (n == 0) {
        *this = other;
        return;
    }
    double d = other.mean - mean;
    int64_t total = n + other.n;
    mean += d * double(other.n) / double(total);
    m2 += other.m2 + d * d * double(n) * double(other.n) / double(total);
    n = total;
}

double NoiseStats::variance() const {
    return n > 0 ? m2 / double(n) : 0.0;
}

double NoiseStats::stddev() const {
    return std::sqrt(variance());
}

namespace {

// Widen one 64-bit slice to full word width; bits past the payload stay zero
// in both operands, so they read as matches.
BitWord tile_word(const BinaryVector& v, int t) {
    return BitWord(v.word(size_t(t)).bits(), kWordBits);
}

// Analog/oracle path: kernels for `sections` output channels stack in one
// subarray column so a single pseudo-read feeds all of them. Slot g*tiles + t
// holds tile t of channel group g.
class SectionedDispatcher : public TileDispatcher {
public:
    SectionedDispatcher(const ArrayGeometry& geom, PopcountEngine& engine,
                        const std::vector<BinaryVector>& kernels, int64_t n_bits,
                        CostLedger& ledger)
        : engine_(engine), ledger_(ledger), plan_(plan_tiles(n_bits)),
          correction_(padding_correction(plan_, engine)), channels_(int(kernels.size())) {
        ArrayGeometry g = geom;
        groups_ = (channels_ + g.sections - 1) / g.sections;
        int64_t slots = int64_t(groups_) * plan_.tiles;
        int64_t needed = (slots + g.rows_per_section - 1) / g.rows_per_section;
        // The bank grows to keep a whole layer's kernels resident.
        g.subarrays_per_bank = int(std::max<int64_t>(g.subarrays_per_bank, needed));
        bank_ = std::make_unique<SectionedBank>(g, ledger);
        for (int gi = 0; gi < groups_; ++gi) {
            for (int t = 0; t < plan_.tiles; ++t) {
                for (int s = 0; s < g.sections; ++s) {
                    int o = gi * g.sections + s;
                    if (o >= channels_) break;
                    bank_->write_row(slot_address(gi, t, s), tile_word(kernels[size_t(o)], t));
                }
            }
        }
    }

    void field_sums(const BinaryVector& field, std::vector<int64_t>& out) override {
        out.assign(size_t(channels_), -correction_);
        const int sections = bank_->geometry().sections;
        std::vector<RowAddress> rows;
        for (int t = 0; t < plan_.tiles; ++t) {
            bank_->write_activation(0, tile_word(field, t));
            int rb = t + 1 == plan_.tiles ? plan_.tail_bits : kWordBits;
            for (int gi = 0; gi < groups_; ++gi) {
                rows.clear();
                for (int s = 0; s < sections && gi * sections + s < channels_; ++s) {
                    rows.push_back(slot_address(gi, t, s));
                }
                LineState line = bank_->pseudo_read(0);
                std::vector<int> counts = bank_->sectioned_convolve(line, rows, engine_, rb);
                for (size_t i = 0; i < counts.size(); ++i) {
                    out[size_t(gi) * sections + i] += counts[i];
                }
            }
        }
        ledger_.record(EventKind::host_instr, EventDetail::accumulate,
                       int64_t(channels_) * plan_.tiles);
    }

private:
    RowAddress slot_address(int group, int tile, int section) const {
        int64_t slot = int64_t(group) * plan_.tiles + tile;
        int rps = bank_->geometry().rows_per_section;
        return RowAddress{int(slot / rps), section, int(slot % rps)};
    }

    PopcountEngine& engine_;
    CostLedger& ledger_;
    TilePlan plan_;
    int64_t correction_;
    int channels_;
    int groups_ = 0;
    std::unique_ptr<SectionedBank> bank_;
};

// Digital path: every (channel, tile) op fires the activation row against one
// kernel row through the sense amps and the bit tree.
class DualReadDispatcher : public TileDispatcher {
public:
    DualReadDispatcher(const ArrayGeometry& geom, PopcountEngine& engine,
                       const std::vector<BinaryVector>& kernels, int64_t n_bits,
                       CostLedger& ledger)
        : engine_(engine), ledger_(ledger), plan_(plan_tiles(n_bits)),
          correction_(padding_correction(plan_, engine)), channels_(int(kernels.size())) {
        ArrayGeometry g = geom;
        int64_t slots = int64_t(channels_) * plan_.tiles;
        int64_t per_sub = int64_t(g.sections) * g.rows_per_section;
        int64_t needed = (slots + per_sub - 1) / per_sub;
        g.subarrays_per_bank = int(std::max<int64_t>(g.subarrays_per_bank, needed));
        bank_ = std::make_unique<SectionedBank>(g, ledger);
        for (int o = 0; o < channels_; ++o) {
            for (int t = 0; t < plan_.tiles; ++t) {
                bank_->write_row(slot_address(o, t), tile_word(kernels[size_t(o)], t));
            }
        }
    }

    void field_sums(const BinaryVector& field, std::vector<int64_t>& out) override {
        out.assign(size_t(channels_), -correction_);
        for (int t = 0; t < plan_.tiles; ++t) {
            bank_->write_activation(0, tile_word(field, t));
            int rb = t + 1 == plan_.tiles ? plan_.tail_bits : kWordBits;
            for (int o = 0; o < channels_; ++o) {
                out[size_t(o)] += bank_->dual_read_convolve(0, slot_address(o, t), engine_, rb);
            }
        }
        ledger_.record(EventKind::host_instr, EventDetail::accumulate,
                       int64_t(channels_) * plan_.tiles);
    }

private:
    RowAddress slot_address(int channel, int tile) const {
        const ArrayGeometry& g = bank_->geometry();
        int64_t slot = int64_t(channel) * plan_.tiles + tile;
        int64_t per_sub = int64_t(g.sections) * g.rows_per_section;
        int64_t rem = slot % per_sub;
        return RowAddress{int(slot / per_sub), int(rem / g.rows_per_section),
                          int(rem % g.rows_per_section)};
    }

    PopcountEngine& engine_;
    CostLedger& ledger_;
    TilePlan plan_;
    int64_t correction_;
    int channels_;
    std::unique_ptr<SectionedBank> bank_;
};

// Conventional path: fetch both words from SRAM, XNOR them in a register, run
// a software popcount loop. Exact by construction.
class BaselineDispatcher : public TileDispatcher {
public:
    BaselineDispatcher(const std::vector<BinaryVector>& kernels, int64_t n_bits,
                       CostLedger& ledger)
        : ledger_(ledger), kernels_(kernels), plan_(plan_tiles(n_bits)),
          correction_(int64_t(plan_.tiles) * kWordBits - plan_.n_bits) {}

    void field_sums(const BinaryVector& field, std::vector<int64_t>& out) override {
        const int channels = int(kernels_.size());
        out.assign(size_t(channels), -correction_);
        for (int o = 0; o < channels; ++o) {
            for (int t = 0; t < plan_.tiles; ++t) {
                out[size_t(o)] += popcount(xnor(tile_word(field, t), tile_word(kernels_[size_t(o)], t)));
            }
        }
        int64_t word_ops = int64_t(channels) * plan_.tiles;
        ledger_.record(EventKind::sram_read, EventDetail::none, 2 * word_ops);
        ledger_.record(EventKind::host_instr, EventDetail::xnor, word_ops);
        ledger_.record(EventKind::host_instr, EventDetail::popcount_loop,
                       word_ops * ledger_.constants().host_instrs_per_popcount);
    }

private:
    CostLedger& ledger_;
    const std::vector<BinaryVector>& kernels_;
    TilePlan plan_;
    int64_t correction_;
};

void gather_conv_field(const FeatureMap& in, const LayerSpec& l, int oy, int ox,
                       BinaryVector& field) {
    size_t idx = 0;
    for (int c = 0; c < l.in_channels; ++c) {
        for (int ky = 0; ky < l.k; ++ky) {
            for (int kx = 0; kx < l.k; ++kx, ++idx) {
                int iy = oy * l.stride - l.padding + ky;
                int ix = ox * l.stride - l.padding + kx;
                bool bit = iy >= 0 && iy < in.shape.h && ix >= 0 && ix < in.shape.w &&
                           in.bit_at(c, iy, ix);
                field.set_bit(idx, bit);
            }
        }
    }
}

void flatten_bits(const FeatureMap& in, BinaryVector& field) {
    size_t idx = 0;
    for (int c = 0; c < in.shape.c; ++c) {
        for (int y = 0; y < in.shape.h; ++y) {
            for (int x = 0; x < in.shape.w; ++x, ++idx) field.set_bit(idx, in.bit_at(c, y, x));
        }
    }
}

int32_t host_input_value(const FeatureMap& in, int c, int y, int x) {
    if (in.binarized) return in.bit_at(c, y, x) ? 1 : -1;
    return in.int_at(c, y, x);
}

struct LayerContext {
    const LayerSpec& layer;
    const LayerWeights& weights;
    Shape out_shape;
    bool last = false;
    bool probe_exact = false; // engine adds noise: measure it against the oracle
    CostLedger& ledger;
    NoiseStats& probe;
    std::vector<int64_t>& logits;
};

FeatureMap forward_binarized(const LayerContext& ctx, const FeatureMap& in,
                             TileDispatcher& dispatcher) {
    const LayerSpec& l = ctx.layer;
    const int64_t n = l.n_bits();
    FeatureMap out = FeatureMap::bits(ctx.out_shape);
    BinaryVector field{size_t(n)};
    std::vector<int64_t> sums;
    for (int oy = 0; oy < ctx.out_shape.h; ++oy) {
        for (int ox = 0; ox < ctx.out_shape.w; ++ox) {
            if (l.kind == LayerKind::fc) {
                flatten_bits(in, field);
            } else {
                gather_conv_field(in, l, oy, ox, field);
            }
            dispatcher.field_sums(field, sums);
            for (int o = 0; o < l.out_channels; ++o) {
                int64_t s = sums[size_t(o)];
                if (ctx.probe_exact) {
                    ctx.probe.add(double(s - xnor_popcount(field, ctx.weights.kernels[size_t(o)])));
                } else {
                    ctx.probe.add(0.0);
                }
                bool bit;
                if (!l.thresholds.empty()) {
                    bit = s > l.thresholds[size_t(o)];
                } else {
                    int64_t clamped = std::clamp<int64_t>(s, 0, n);
                    bit = threshold_activation(int(clamped), int(n)) == 1;
                }
                out.set_bit_at(o, oy, ox, bit);
                if (ctx.last) {
                    size_t flat = (size_t(o) * ctx.out_shape.h + oy) * ctx.out_shape.w + ox;
                    ctx.logits[flat] = 2 * s - n;
                }
            }
            // The final layer's counts leave as logits; no threshold applies.
            if (!ctx.last)
                ctx.ledger.record(EventKind::host_instr, EventDetail::compare, l.out_channels);
        }
    }
    return out;
}

FeatureMap forward_host(const LayerContext& ctx, const FeatureMap& in) {
    const LayerSpec& l = ctx.layer;
    const int64_t n = l.n_bits();
    FeatureMap out =
        ctx.last ? FeatureMap::ints(ctx.out_shape) : FeatureMap::bits(ctx.out_shape);
    std::vector<int32_t> flat_in;
    if (l.kind == LayerKind::host_fc) {
        flat_in.reserve(size_t(in.shape.elements()));
        for (int c = 0; c < in.shape.c; ++c) {
            for (int y = 0; y < in.shape.h; ++y) {
                for (int x = 0; x < in.shape.w; ++x) flat_in.push_back(host_input_value(in, c, y, x));
            }
        }
    }
    for (int o = 0; o < l.out_channels; ++o) {
        const int32_t* w = ctx.weights.host.data() + size_t(o) * n;
        for (int oy = 0; oy < ctx.out_shape.h; ++oy) {
            for (int ox = 0; ox < ctx.out_shape.w; ++ox) {
                int32_t sum = 0;
                if (l.kind == LayerKind::host_fc) {
                    for (int64_t i = 0; i < n; ++i) sum += flat_in[size_t(i)] * w[i];
                } else {
                    int64_t idx = 0;
                    for (int c = 0; c < l.in_channels; ++c) {
                        for (int ky = 0; ky < l.k; ++ky) {
                            for (int kx = 0; kx < l.k; ++kx, ++idx) {
                                int iy = oy * l.stride - l.padding + ky;
                                int ix = ox * l.stride - l.padding + kx;
                                if (iy < 0 || iy >= in.shape.h || ix < 0 || ix >= in.shape.w) continue;
                                sum += host_input_value(in, c, iy, ix) * w[idx];
                            }
                        }
                    }
                }
                if (ctx.last) {
                    size_t flat = (size_t(o) * ctx.out_shape.h + oy) * ctx.out_shape.w + ox;
                    ctx.logits[flat] = sum;
                    out.set_int_at(o, oy, ox, sum);
                } else {
                    out.set_bit_at(o, oy, ox, sum > 0);
                }
            }
        }
    }
    int64_t elements = ctx.out_shape.elements();
    ctx.ledger.record(EventKind::host_instr, EventDetail::mac, elements * n);
    if (!ctx.last) ctx.ledger.record(EventKind::host_instr, EventDetail::compare, elements);
    return out;
}

FeatureMap forward_pool(const LayerContext& ctx, const FeatureMap& in) {
    if (!in.binarized) throw ConfigError("layer " + ctx.layer.name + ": pool needs a binarized map");
    FeatureMap out = FeatureMap::bits(ctx.out_shape);
    for (int c = 0; c < ctx.out_shape.c; ++c) {
        for (int y = 0; y < ctx.out_shape.h; ++y) {
            for (int x = 0; x < ctx.out_shape.w; ++x) {
                bool v = in.bit_at(c, 2 * y, 2 * x) || in.bit_at(c, 2 * y, 2 * x + 1) ||
                         in.bit_at(c, 2 * y + 1, 2 * x) || in.bit_at(c, 2 * y + 1, 2 * x + 1);
                out.set_bit_at(c, y, x, v);
            }
        }
    }
    ctx.ledger.record(EventKind::host_instr, EventDetail::pool, ctx.out_shape.elements());
    return out;
}

} // namespace

std::unique_ptr<TileDispatcher> make_dispatcher(const EngineSettings& settings,
                                                PopcountEngine* engine,
                                                const std::vector<BinaryVector>& kernels,
                                                int64_t n_bits, CostLedger& ledger) {
    if (kernels.empty()) throw std::invalid_argument("dispatcher needs at least one kernel");
    for (const BinaryVector& k : kernels) {
        if (int64_t(k.length()) != n_bits) {
            throw std::invalid_argument("kernel length does not match the tile plan");
        }
    }
    switch (settings.kind) {
    case EngineKind::baseline: return std::make_unique<BaselineDispatcher>(kernels, n_bits, ledger);
    case EngineKind::proposal_b:
        return std::make_unique<DualReadDispatcher>(settings.geometry, *engine, kernels, n_bits,
                                                    ledger);
    case EngineKind::proposal_a:
    case EngineKind::oracle:
        return std::make_unique<SectionedDispatcher>(settings.geometry, *engine, kernels, n_bits,
                                                     ledger);
    }
    throw ConfigError("unknown engine kind");
}

InferenceResult infer(const NetworkSpec& net, const Weights& weights, const FeatureMap& image,
                      const EngineSettings& settings, const CostConstants& constants) {
    net.validate();
    settings.validate();
    if (!(image.shape == net.input)) {
        throw ConfigError("image shape " + to_string(image.shape) + " does not match network input " +
                          to_string(net.input));
    }
    std::unique_ptr<PopcountEngine> engine = make_engine(settings);
    const bool noisy = engine && !engine->exact();

    InferenceResult result;
    result.ledger = CostLedger(constants);
    result.logits.assign(size_t(net.classes), 0);

    const std::vector<Shape> shapes = net.shapes();
    FeatureMap cur = image;
    for (size_t i = 0; i < net.layers.size(); ++i) {
        const LayerSpec& l = net.layers[i];
        result.ledger.set_layer(l.name);
        const bool last = i + 1 == net.layers.size();
        LayerWeights none;
        const LayerWeights* lw = &none;
        if (l.kind != LayerKind::pool) {
            auto it = weights.by_layer.find(l.name);
            if (it == weights.by_layer.end()) {
                throw ConfigError("no weights for layer " + l.name);
            }
            lw = &it->second;
        }
        LayerContext ctx{l, *lw, shapes[i + 1], last, noisy, result.ledger,
                         result.popcount_error, result.logits};
        switch (l.kind) {
        case LayerKind::conv:
        case LayerKind::fc: {
            if (!cur.binarized) {
                throw ConfigError("layer " + l.name + ": binarized layer fed a host map");
            }
            if (int64_t(lw->kernels.size()) != l.out_channels) {
                throw ConfigError("layer " + l.name + ": kernel count does not match channels");
            }
            std::unique_ptr<TileDispatcher> disp =
                make_dispatcher(settings, engine.get(), lw->kernels, l.n_bits(), result.ledger);
            cur = forward_binarized(ctx, cur, *disp);
            break;
        }
        case LayerKind::pool: cur = forward_pool(ctx, cur); break;
        case LayerKind::host_conv:
        case LayerKind::host_fc: {
            if (int64_t(lw->host.size()) != int64_t(l.out_channels) * l.n_bits()) {
                throw ConfigError("layer " + l.name + ": host weight size mismatch");
            }
            cur = forward_host(ctx, cur);
            break;
        }
        }
    }
    result.predicted =
        int(std::max_element(result.logits.begin(), result.logits.end()) - result.logits.begin());
    return result;
}

Weights random_weights(const NetworkSpec& net, uint64_t seed) {
    net.validate();
    Weights w;
    std::mt19937_64 rng(seed);
    for (const LayerSpec& l : net.layers) {
        if (l.kind == LayerKind::pool) continue;
        LayerWeights lw;
        const int64_t n = l.n_bits();
        if (l.binarized) {
            lw.kernels.reserve(size_t(l.out_channels));
            for (int o = 0; o < l.out_channels; ++o) {
                BinaryVector v{size_t(n)};
                for (size_t wi = 0; wi < v.word_count(); ++wi) {
                    int width = v.word(wi).width();
                    v.word(wi) = BitWord(rng() & width_mask(width), width);
                }
                lw.kernels.push_back(std::move(v));
            }
        } else {
            lw.host.resize(size_t(l.out_channels) * n);
            for (int32_t& x : lw.host) x = (rng() & 1) ? 1 : -1;
        }
        w.by_layer.emplace(l.name, std::move(lw));
    }
    return w;
}

Weights load_weights(const std::filesystem::path& dir, const NetworkSpec& net) {
    net.validate();
    Weights w;
    for (const LayerSpec& l : net.layers) {
        if (l.kind == LayerKind::pool) continue;
        Tensor t = read_tensor(dir / (l.name + ".xrt"));
        if (t.dims.size() != 2 || int64_t(t.dims[0]) != l.out_channels ||
            int64_t(t.dims[1]) != l.n_bits()) {
            throw IoError("weights for layer " + l.name + " have the wrong shape");
        }
        LayerWeights lw;
        if (l.binarized) {
            if (t.dtype != Dtype::bits) throw IoError("layer " + l.name + " expects bit weights");
            lw.kernels = std::move(t.rows);
        } else {
            if (t.dtype != Dtype::i32) throw IoError("layer " + l.name + " expects integer weights");
            lw.host = std::move(t.values);
        }
        w.by_layer.emplace(l.name, std::move(lw));
    }
    return w;
}

void save_weights(const std::filesystem::path& dir, const NetworkSpec& net, const Weights& w) {
    std::filesystem::create_directories(dir);
    for (const LayerSpec& l : net.layers) {
        if (l.kind == LayerKind::pool) continue;
        auto it = w.by_layer.find(l.name);
        if (it == w.by_layer.end()) throw ConfigError("no weights for layer " + l.name);
        Tensor t;
        t.dims = {uint32_t(l.out_channels), uint32_t(l.n_bits())};
        if (l.binarized) {
            t.dtype = Dtype::bits;
            t.rows = it->second.kernels;
        } else {
            t.dtype = Dtype::i32;
            t.values = it->second.host;
        }
        write_tensor(dir / (l.name + ".xrt"), t);
    }
}

Dataset load_dataset(const std::filesystem::path& dir) {
    std::ifstream labels(dir / "labels.csv");
    if (!labels) throw IoError("cannot open " + (dir / "labels.csv").string());
    Dataset data;
    std::string line;
    int lineno = 0;
    while (std::getline(labels, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        size_t comma = line.rfind(',');
        if (comma == std::string::npos) {
            throw IoError("labels.csv line " + std::to_string(lineno) + ": expected file,label");
        }
        std::string file = line.substr(0, comma);
        int label = 0;
        try {
            label = std::stoi(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw IoError("labels.csv line " + std::to_string(lineno) + ": bad label");
        }
        data.images.push_back(feature_from_tensor(read_tensor(dir / file)));
        data.labels.push_back(label);
    }
    if (data.images.empty()) throw IoError("dataset in " + dir.string() + " is empty");
    return data;
}

EvaluationResult evaluate(const NetworkSpec& net, const Weights& weights, const Dataset& data,
                          const EngineSettings& settings, const CostConstants& constants,
                          int jobs) {
    if (data.images.empty()) throw ConfigError("empty dataset");
    if (data.images.size() != data.labels.size()) throw ConfigError("labels do not match images");
    const int n = int(data.images.size());
    jobs = std::clamp(jobs, 1, 64);

    std::vector<InferenceResult> per_image{size_t(n)};
    auto run_range = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            EngineSettings s = settings;
            s.seed = derive_seed(settings.seed, uint64_t(i));
            per_image[size_t(i)] = infer(net, weights, data.images[size_t(i)], s, constants);
        }
    };
    if (jobs == 1 || n == 1) {
        run_range(0, n);
    } else {
        std::vector<std::thread> pool;
        int per = (n + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            int b = j * per;
            int e = std::min(n, b + per);
            if (b >= e) break;
            pool.emplace_back(run_range, b, e);
        }
        for (std::thread& t : pool) t.join();
    }

    EvaluationResult out;
    out.images = n;
    out.ledger = CostLedger(constants);
    out.predictions.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
        const InferenceResult& r = per_image[size_t(i)];
        out.predictions.push_back(r.predicted);
        if (r.predicted == data.labels[size_t(i)]) out.correct += 1;
        out.popcount_error.merge(r.popcount_error);
        out.ledger.merge(r.ledger);
    }
    out.accuracy = double(out.correct) / double(n);
    return out;
}

} // namespace csram
