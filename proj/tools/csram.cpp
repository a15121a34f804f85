// Command-line front end: run inference under a chosen engine, sweep noise or
// section counts, self-test, and generate self-contained toy datasets.
//
// Exit codes: 0 success, 1 validation error, 2 runtime failure, 3 selftest
// failure.
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csram/errors.hpp"
#include "csram/inference.hpp"
#include "csram/keyval.hpp"
#include "csram/network.hpp"
#include "csram/report.hpp"
#include "csram/rng.hpp"
#include "csram/selftest.hpp"
#include "csram/tensor_io.hpp"

namespace fs = std::filesystem;
using namespace csram;

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

// Everything that affects a run. The echo in every report round-trips through
// the config parser back to an equivalent RunConfig (out/explain are output
// plumbing and stay out of the echo).
struct RunConfig {
    RunConfig() { settings.kind = EngineKind::proposal_a; }
    EngineSettings settings;
    CostConstants constants;
    std::string network;
    std::string weights; // empty: deterministic random weights from the seed
    std::string data;    // empty: one synthetic image, cost-only run
    std::string out;
    std::string format = "table";
    int jobs = 1;
    int trials = 1;
    bool baseline = false;
    bool explain = false;
};

void apply_config_map(RunConfig& cfg, const KeyValueMap& m) {
    ArrayGeometry& g = cfg.settings.geometry;
    CostConstants& c = cfg.constants;
    for (const auto& [k, v] : m) {
        if (k == "engine") cfg.settings.kind = engine_kind_from_string(v);
        else if (k == "network") cfg.network = v;
        else if (k == "weights") cfg.weights = v;
        else if (k == "data") cfg.data = v;
        else if (k == "format") cfg.format = v;
        else if (k == "out") cfg.out = v;
        else if (k == "jobs") cfg.jobs = int(kv_parse_int(k, v));
        else if (k == "trials") cfg.trials = int(kv_parse_int(k, v));
        else if (k == "seed") cfg.settings.seed = uint64_t(kv_parse_int(k, v));
        else if (k == "baseline") cfg.baseline = kv_parse_bool(k, v);
        else if (k == "adc.sigma") cfg.settings.sigma = kv_parse_double(k, v);
        else if (k == "geometry.columns") g.columns = int(kv_parse_int(k, v));
        else if (k == "geometry.rows_per_section") g.rows_per_section = int(kv_parse_int(k, v));
        else if (k == "geometry.sections") g.sections = int(kv_parse_int(k, v));
        else if (k == "geometry.subarrays_per_bank") g.subarrays_per_bank = int(kv_parse_int(k, v));
        else if (k == "geometry.dual_rwl") g.dual_rwl = kv_parse_bool(k, v);
        else if (k == "cost.a_energy_sectioned_pj") c.a_energy_sectioned_pj = kv_parse_double(k, v);
        else if (k == "cost.a_energy_unsectioned_pj") c.a_energy_unsectioned_pj = kv_parse_double(k, v);
        else if (k == "cost.a_latency_ns") c.a_latency_ns = kv_parse_double(k, v);
        else if (k == "cost.b_xnor_energy_fj_per_bit") c.b_xnor_energy_fj_per_bit = kv_parse_double(k, v);
        else if (k == "cost.b_xnor_latency_ns") c.b_xnor_latency_ns = kv_parse_double(k, v);
        else if (k == "cost.b_adder_power_mw") c.b_adder_power_mw = kv_parse_double(k, v);
        else if (k == "cost.b_adder_latency_ns") c.b_adder_latency_ns = kv_parse_double(k, v);
        else if (k == "cost.baseline_read_energy_pj") c.baseline_read_energy_pj = kv_parse_double(k, v);
        else if (k == "cost.baseline_read_latency_ns") c.baseline_read_latency_ns = kv_parse_double(k, v);
        else if (k == "cost.sram_write_energy_pj") c.sram_write_energy_pj = kv_parse_double(k, v);
        else if (k == "cost.sram_write_latency_ns") c.sram_write_latency_ns = kv_parse_double(k, v);
        else if (k == "cost.host_instr_energy_pj") c.host_instr_energy_pj = kv_parse_double(k, v);
        else if (k == "cost.host_instr_latency_ns") c.host_instr_latency_ns = kv_parse_double(k, v);
        else if (k == "cost.dram_access_energy_pj") c.dram_access_energy_pj = kv_parse_double(k, v);
        else if (k == "cost.dram_access_latency_ns") c.dram_access_latency_ns = kv_parse_double(k, v);
        else if (k == "cost.host_instrs_per_popcount") c.host_instrs_per_popcount = int(kv_parse_int(k, v));
        else throw ConfigError("unknown config key '" + k + "'");
    }
}

KeyValueMap effective_config(const RunConfig& cfg) {
    const ArrayGeometry& g = cfg.settings.geometry;
    const CostConstants& c = cfg.constants;
    KeyValueMap m;
    m["engine"] = to_string(cfg.settings.kind);
    m["format"] = cfg.format;
    m["jobs"] = std::to_string(cfg.jobs);
    m["trials"] = std::to_string(cfg.trials);
    m["seed"] = std::to_string(cfg.settings.seed);
    m["baseline"] = cfg.baseline ? "true" : "false";
    if (!cfg.network.empty()) m["network"] = cfg.network;
    if (!cfg.weights.empty()) m["weights"] = cfg.weights;
    if (!cfg.data.empty()) m["data"] = cfg.data;
    m["adc.sigma"] = fmt_double(cfg.settings.sigma);
    m["geometry.columns"] = std::to_string(g.columns);
    m["geometry.rows_per_section"] = std::to_string(g.rows_per_section);
    m["geometry.sections"] = std::to_string(g.sections);
    m["geometry.subarrays_per_bank"] = std::to_string(g.subarrays_per_bank);
    m["geometry.dual_rwl"] = g.dual_rwl ? "true" : "false";
    m["cost.a_energy_sectioned_pj"] = fmt_double(c.a_energy_sectioned_pj);
    m["cost.a_energy_unsectioned_pj"] = fmt_double(c.a_energy_unsectioned_pj);
    m["cost.a_latency_ns"] = fmt_double(c.a_latency_ns);
    m["cost.b_xnor_energy_fj_per_bit"] = fmt_double(c.b_xnor_energy_fj_per_bit);
    m["cost.b_xnor_latency_ns"] = fmt_double(c.b_xnor_latency_ns);
    m["cost.b_adder_power_mw"] = fmt_double(c.b_adder_power_mw);
    m["cost.b_adder_latency_ns"] = fmt_double(c.b_adder_latency_ns);
    m["cost.baseline_read_energy_pj"] = fmt_double(c.baseline_read_energy_pj);
    m["cost.baseline_read_latency_ns"] = fmt_double(c.baseline_read_latency_ns);
    m["cost.sram_write_energy_pj"] = fmt_double(c.sram_write_energy_pj);
    m["cost.sram_write_latency_ns"] = fmt_double(c.sram_write_latency_ns);
    m["cost.host_instr_energy_pj"] = fmt_double(c.host_instr_energy_pj);
    m["cost.host_instr_latency_ns"] = fmt_double(c.host_instr_latency_ns);
    m["cost.dram_access_energy_pj"] = fmt_double(c.dram_access_energy_pj);
    m["cost.dram_access_latency_ns"] = fmt_double(c.dram_access_latency_ns);
    m["cost.host_instrs_per_popcount"] = std::to_string(c.host_instrs_per_popcount);
    return m;
}

void validate_config(const RunConfig& cfg) {
    cfg.settings.validate();
    cfg.constants.validate();
    if (cfg.format != "table" && cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format must be table, csv or json, got '" + cfg.format + "'");
    if (cfg.jobs < 1)
        throw ConfigError("jobs must be >= 1");
    if (cfg.trials < 1)
        throw ConfigError("trials must be >= 1");
}

// Shared flag set for run and sweep. Precedence: defaults < --config file <
// explicit flags.
struct CommonFlags {
    std::string config, engine, network, weights, data, format, out;
    int sections = 0, jobs = 0, trials = 0;
    double sigma = 0.0;
    uint64_t seed = 0;
    bool baseline = false, explain = false;
    CLI::Option *oe = nullptr, *osec = nullptr, *osig = nullptr, *osd = nullptr, *on = nullptr,
                *ow = nullptr, *od = nullptr, *of = nullptr, *oo = nullptr, *oj = nullptr,
                *ot = nullptr;

    void attach(CLI::App& cmd) {
        cmd.add_option("--config", config, "config file (key = value text)");
        oe = cmd.add_option("--engine", engine, "proposal_a | proposal_b | oracle | baseline");
        osec = cmd.add_option("--sections", sections,
                              "kernel rows sharing one pseudo-read (proposal_a / oracle)");
        osig = cmd.add_option("--sigma", sigma, "ADC count-noise standard deviation");
        osd = cmd.add_option("--seed", seed, "base RNG seed");
        on = cmd.add_option("--network", network, "network spec file");
        ow = cmd.add_option("--weights", weights, "weights directory (default: random from seed)");
        od = cmd.add_option("--data", data, "dataset directory with labels.csv");
        cmd.add_flag("--baseline", baseline, "also run the conventional baseline and report ratios");
        oo = cmd.add_option("--out", out, "write the report to this file instead of stdout");
        of = cmd.add_option("--format", format, "table | csv | json")
                 ->check(CLI::IsMember({"table", "csv", "json"}));
        oj = cmd.add_option("--jobs", jobs, "worker threads across images");
        ot = cmd.add_option("--trials", trials, "noise trials; accuracy is averaged");
        cmd.add_flag("--explain", explain, "dump the per-layer event breakdown to stderr");
    }

    RunConfig build() const {
        RunConfig cfg;
        bool sections_set = osec->count() > 0;
        if (!config.empty()) {
            KeyValueMap m = parse_keyval_file(config);
            sections_set = sections_set || kv_has(m, "geometry.sections");
            apply_config_map(cfg, m);
        }
        if (oe->count()) cfg.settings.kind = engine_kind_from_string(engine);
        if (osec->count()) cfg.settings.geometry.sections = sections;
        if (osig->count()) cfg.settings.sigma = sigma;
        if (osd->count()) cfg.settings.seed = seed;
        if (on->count()) cfg.network = network;
        if (ow->count()) cfg.weights = weights;
        if (od->count()) cfg.data = data;
        if (of->count()) cfg.format = format;
        if (oo->count()) cfg.out = out;
        if (oj->count()) cfg.jobs = jobs;
        if (ot->count()) cfg.trials = trials;
        if (baseline) cfg.baseline = true;
        if (explain) cfg.explain = true;
        // These engines have no pseudo-read to share; sectioning only applies
        // when the user asked for it explicitly (then validate() rejects it).
        if (!sections_set && (cfg.settings.kind == EngineKind::proposal_b ||
                              cfg.settings.kind == EngineKind::baseline))
            cfg.settings.geometry.sections = 1;
        validate_config(cfg);
        return cfg;
    }
};

FeatureMap synthetic_image(const NetworkSpec& net, uint64_t seed) {
    std::mt19937_64 rng(derive_seed(seed, 0xDA7A));
    FeatureMap img;
    img.shape = net.input;
    img.binarized = true;
    img.planes.assign(size_t(net.input.c), BinaryVector(size_t(net.input.h) * net.input.w));
    for (auto& p : img.planes)
        for (size_t i = 0; i < p.length(); ++i)
            p.set_bit(i, rng() & 1);
    return img;
}

uint64_t trial_seed(uint64_t base, int trial) {
    return trial == 0 ? base : derive_seed(base, uint64_t(trial));
}

// One full workload under one engine. Counts and energies are identical
// across trials (noise never changes the event stream), so the ledger comes
// from trial 0 and only accuracy/noise statistics are averaged.
struct WorkloadOutcome {
    CostLedger ledger;
    NoiseStats popcount_error;
    std::optional<double> accuracy;
    int images = 0;
};

WorkloadOutcome run_workload(const RunConfig& cfg, const NetworkSpec& net, const Weights& w,
                             EngineKind kind) {
    WorkloadOutcome out;
    EngineSettings s = cfg.settings;
    s.kind = kind;
    if (kind == EngineKind::proposal_b || kind == EngineKind::baseline)
        s.geometry.sections = 1;
    double acc_sum = 0.0;
    if (!cfg.data.empty()) {
        Dataset data = load_dataset(cfg.data);
        for (int t = 0; t < cfg.trials; ++t) {
            s.seed = trial_seed(cfg.settings.seed, t);
            EvaluationResult r = evaluate(net, w, data, s, cfg.constants, cfg.jobs);
            if (t == 0) {
                out.ledger = std::move(r.ledger);
                out.images = r.images;
            }
            acc_sum += r.accuracy;
            out.popcount_error.merge(r.popcount_error);
        }
        out.accuracy = acc_sum / cfg.trials;
    } else {
        FeatureMap img = synthetic_image(net, cfg.settings.seed);
        for (int t = 0; t < cfg.trials; ++t) {
            s.seed = trial_seed(cfg.settings.seed, t);
            InferenceResult r = infer(net, w, img, s, cfg.constants);
            if (t == 0) {
                out.ledger = std::move(r.ledger);
                out.images = 1;
            }
            out.popcount_error.merge(r.popcount_error);
        }
    }
    return out;
}

Weights make_weights(const RunConfig& cfg, const NetworkSpec& net) {
    if (cfg.weights.empty())
        return random_weights(net, derive_seed(cfg.settings.seed, 0x5eed));
    return load_weights(cfg.weights, net);
}

RunReport execute(const RunConfig& cfg, CostLedger* explain_ledger = nullptr) {
    if (cfg.network.empty())
        throw ConfigError("a network spec is required (--network or config key 'network')");
    NetworkSpec net = load_network(cfg.network);
    Weights w = make_weights(cfg, net);

    WorkloadOutcome main = run_workload(cfg, net, w, cfg.settings.kind);

    RunReport rep = build_report(to_string(cfg.settings.kind), effective_config(cfg), &net,
                                 main.ledger);
    rep.images = main.images;
    rep.accuracy = main.accuracy;
    rep.popcount_error = main.popcount_error;

    if (cfg.baseline && cfg.settings.kind != EngineKind::baseline) {
        RunConfig base = cfg;
        base.trials = 1; // the baseline event stream carries no noise
        WorkloadOutcome ref = run_workload(base, net, w, EngineKind::baseline);
        rep.vs_baseline = speedup(main.ledger.totals(), ref.ledger.totals());
    }

    if (explain_ledger != nullptr)
        *explain_ledger = std::move(main.ledger);
    return rep;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw IoError("cannot open output file: " + out_path);
    f << text;
    if (!f)
        throw IoError("short write: " + out_path);
}

int cmd_run(const CommonFlags& flags) {
    RunConfig cfg = flags.build();
    CostLedger ledger;
    RunReport rep = execute(cfg, &ledger);
    std::string text = cfg.format == "csv"    ? to_csv(rep)
                       : cfg.format == "json" ? to_json(rep)
                                              : to_table(rep);
    write_output(text, cfg.out);
    if (cfg.explain)
        std::cerr << explain_events(ledger);
    return 0;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int cmd_sweep(const CommonFlags& flags, const std::string& param, const std::string& values) {
    RunConfig cfg = flags.build();
    std::vector<std::string> items = split_list(values);
    if (items.empty())
        throw ConfigError("sweep needs a non-empty comma-separated value list");
    if (param == "sections") {
        if (cfg.settings.kind != EngineKind::proposal_a && cfg.settings.kind != EngineKind::oracle)
            throw ConfigError("sections sweep requires an engine with shared pseudo-reads "
                              "(proposal_a or oracle)");
    } else if (param == "sigma") {
        if (cfg.settings.kind != EngineKind::proposal_a)
            throw ConfigError("sigma sweep requires the noisy engine (proposal_a)");
    } else {
        throw ConfigError("unknown sweep parameter '" + param + "' (sigma | sections)");
    }

    std::ostringstream csv;
    csv << "parameter,value,images,accuracy,energy_pj,latency_ns,array_energy_pj,pseudo_reads,"
           "conversions,popcount_stddev\n";
    for (const std::string& item : items) {
        RunConfig point = cfg;
        if (param == "sections")
            point.settings.geometry.sections = int(kv_parse_int("values", item));
        else
            point.settings.sigma = kv_parse_double("values", item);
        validate_config(point);
        RunReport rep = execute(point);
        csv << param << ',' << item << ',' << rep.images << ',';
        if (rep.accuracy)
            csv << fmt_double(*rep.accuracy);
        csv << ',' << fmt_double(rep.total.energy_pj) << ',' << fmt_double(rep.total.latency_ns)
            << ',' << fmt_double(rep.total.array_energy_pj) << ',' << rep.total.pseudo_reads << ','
            << rep.total.conversions << ',' << fmt_double(rep.popcount_error.stddev()) << '\n';
    }
    write_output(csv.str(), cfg.out);
    return 0;
}

int cmd_selftest() {
    bool ok = run_selftest(std::cout);
    if (!ok)
        return 3;
    std::cout << "all checks passed\n";
    return 0;
}

// ---- toy data generation ----------------------------------------------

struct GenOptions {
    std::string out;
    int images = 200;
    double flip = 0.1;
    uint64_t seed = 1;
    bool conv = false;
};

NetworkSpec toy_fc_net() {
    NetworkSpec net;
    net.name = "toy_fc";
    net.input = {1, 1, 96};
    net.classes = 10;
    LayerSpec fc;
    fc.name = "f1";
    fc.kind = LayerKind::fc;
    fc.in_channels = 96;
    fc.out_channels = 10;
    fc.binarized = true;
    net.layers = {fc};
    net.validate();
    return net;
}

NetworkSpec toy_conv_net() {
    NetworkSpec net;
    net.name = "toy_conv";
    net.input = {1, 12, 12};
    net.classes = 10;
    LayerSpec conv;
    conv.name = "c1";
    conv.kind = LayerKind::conv;
    conv.k = 3;
    conv.in_channels = 1;
    conv.out_channels = 4;
    conv.padding = 1;
    conv.binarized = true;
    LayerSpec fc;
    fc.name = "f1";
    fc.kind = LayerKind::fc;
    fc.in_channels = 4 * 12 * 12;
    fc.out_channels = 10;
    fc.binarized = true;
    net.layers = {conv, fc};
    net.validate();
    return net;
}

// Class prototypes: one shared random base vector, with a disjoint block of
// bits flipped per class, so classes sit at a controlled Hamming distance.
std::vector<BinaryVector> make_prototypes(size_t length, int classes, std::mt19937_64& rng) {
    BinaryVector base(length);
    for (size_t i = 0; i < length; ++i)
        base.set_bit(i, rng() & 1);
    size_t block = std::max<size_t>(3, length / 12);
    if (block * size_t(classes) > length)
        block = length / size_t(classes);
    std::vector<BinaryVector> protos(size_t(classes), base);
    for (int c = 0; c < classes; ++c)
        for (size_t i = 0; i < block; ++i) {
            size_t pos = size_t(c) * block + i;
            protos[size_t(c)].set_bit(pos, !base.bit(pos));
        }
    return protos;
}

// Dense +-1 convolution of the toy conv layer (pad = -1), used only to derive
// classifier weights from prototype images.
BinaryVector conv_feature_signature(const BinaryVector& image, const NetworkSpec& net,
                                    const std::vector<BinaryVector>& kernels) {
    const LayerSpec& l = net.layers[0];
    int h = net.input.h, w = net.input.w;
    BinaryVector out(size_t(l.out_channels) * size_t(h) * size_t(w));
    size_t idx = 0;
    for (int o = 0; o < l.out_channels; ++o)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                int dot = 0;
                size_t kbit = 0;
                for (int ky = 0; ky < l.k; ++ky)
                    for (int kx = 0; kx < l.k; ++kx, ++kbit) {
                        int yy = y + ky - l.padding, xx = x + kx - l.padding;
                        bool a = false; // out of bounds reads -1
                        if (yy >= 0 && yy < h && xx >= 0 && xx < w)
                            a = image.bit(size_t(yy) * size_t(w) + size_t(xx));
                        bool k = kernels[size_t(o)].bit(kbit);
                        dot += (a == k) ? 1 : -1;
                    }
                out.set_bit(idx++, dot > 0);
            }
    return out;
}

int cmd_gen(const GenOptions& g) {
    if (g.images < 1)
        throw ConfigError("--images must be >= 1");
    if (g.flip < 0.0 || g.flip >= 0.5)
        throw ConfigError("--flip must be in [0, 0.5)");

    NetworkSpec net = g.conv ? toy_conv_net() : toy_fc_net();
    fs::path dir(g.out);
    fs::create_directories(dir / "data");
    fs::create_directories(dir / "weights");

    std::mt19937_64 rng(derive_seed(g.seed, 0x70));
    size_t input_bits = size_t(net.input.h) * size_t(net.input.w);
    std::vector<BinaryVector> protos = make_prototypes(input_bits, net.classes, rng);

    Weights w;
    if (g.conv) {
        // Fixed random projection, then one classifier kernel per class: the
        // projected signature of that class's prototype.
        w = random_weights(net, derive_seed(g.seed, 0x77));
        std::vector<BinaryVector> sigs;
        for (const BinaryVector& p : protos)
            sigs.push_back(conv_feature_signature(p, net, w.by_layer["c1"].kernels));
        w.by_layer["f1"].kernels = sigs;
    } else {
        w.by_layer["f1"].kernels = protos;
    }
    save_weights(dir / "weights", net, w);

    {
        std::ofstream f(dir / "network.net", std::ios::binary);
        if (!f)
            throw IoError("cannot write " + (dir / "network.net").string());
        f << emit_network(net);
    }

    std::ofstream labels(dir / "data" / "labels.csv", std::ios::binary);
    if (!labels)
        throw IoError("cannot write labels.csv");
    std::bernoulli_distribution flip(g.flip);
    for (int i = 0; i < g.images; ++i) {
        int cls = i % net.classes;
        FeatureMap img;
        img.shape = net.input;
        img.binarized = true;
        BinaryVector bits = protos[size_t(cls)];
        for (size_t b = 0; b < bits.length(); ++b)
            if (flip(rng))
                bits.set_bit(b, !bits.bit(b));
        img.planes = {bits};
        char name[32];
        std::snprintf(name, sizeof name, "img_%04d.xrt", i);
        write_tensor(dir / "data" / name, feature_to_tensor(img));
        labels << name << ',' << cls << '\n';
    }
    labels.close();

    KeyValueMap cfg;
    cfg["engine"] = "proposal_a";
    cfg["network"] = (dir / "network.net").string();
    cfg["weights"] = (dir / "weights").string();
    cfg["data"] = (dir / "data").string();
    cfg["seed"] = std::to_string(g.seed);
    {
        std::ofstream f(dir / "run.cfg", std::ios::binary);
        if (!f)
            throw IoError("cannot write run.cfg");
        f << emit_keyval(cfg);
    }

    std::cout << "wrote " << g.images << " images, " << net.classes << " classes, network '"
              << net.name << "' under " << dir.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"compute-in-SRAM BNN inference simulator"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "run inference and report per-layer costs");
    CommonFlags run_flags;
    run_flags.attach(*run);

    CLI::App* sweep = app.add_subcommand("sweep", "re-run across a parameter list, emit CSV");
    CommonFlags sweep_flags;
    sweep_flags.attach(*sweep);
    std::string param, values;
    sweep->add_option("--param", param, "sigma | sections")->required();
    sweep->add_option("--values", values, "comma-separated list")->required();

    CLI::App* selftest = app.add_subcommand("selftest", "embedded consistency checks");

    CLI::App* gen = app.add_subcommand("gen-toy-data", "write a self-contained toy dataset");
    GenOptions gopt;
    gen->add_option("--out", gopt.out, "output directory")->required();
    gen->add_option("--images", gopt.images, "number of images");
    gen->add_option("--flip", gopt.flip, "per-bit corruption probability");
    gen->add_option("--seed", gopt.seed, "generator seed");
    gen->add_flag("--conv", gopt.conv, "two-layer conv variant instead of single fc");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (run->parsed())
            return cmd_run(run_flags);
        if (sweep->parsed())
            return cmd_sweep(sweep_flags, param, values);
        if (selftest->parsed())
            return cmd_selftest();
        if (gen->parsed())
            return cmd_gen(gopt);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
