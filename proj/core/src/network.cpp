#include "csram/network.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "csram/errors.hpp"
#include "csram/keyval.hpp"

namespace csram {

const char* to_string(LayerKind k) {
    switch (k) {
    case LayerKind::conv: return "conv";
    case LayerKind::fc: return "fc";
    case LayerKind::pool: return "pool";
    case LayerKind::host_conv: return "host_conv";
    case LayerKind::host_fc: return "host_fc";
    }
    return "?";
}

LayerKind layer_kind_from_string(const std::string& s) {
    if (s == "conv") return LayerKind::conv;
    if (s == "fc") return LayerKind::fc;
    if (s == "pool") return LayerKind::pool;
    if (s == "host_conv") return LayerKind::host_conv;
    if (s == "host_fc") return LayerKind::host_fc;
    throw ConfigError("unknown layer kind '" + s + "'");
}

std::string to_string(const Shape& s) {
    std::ostringstream out;
    out << s.c << "x" << s.h << "x" << s.w;
    return out.str();
}

void LayerSpec::validate() const {
    if (name.empty()) throw ConfigError("layer has no name");
    auto fail = [&](const std::string& msg) { throw ConfigError("layer " + name + ": " + msg); };
    if (k < 1) fail("filter size must be >= 1");
    if (in_channels < 1 || out_channels < 1) fail("channel counts must be >= 1");
    if (stride < 1) fail("stride must be >= 1");
    if (padding < 0) fail("padding must be >= 0");
    if (binarized && kind != LayerKind::conv && kind != LayerKind::fc) {
        fail("only conv and fc layers can be binarized");
    }
    if (!binarized && (kind == LayerKind::conv || kind == LayerKind::fc)) {
        fail("conv and fc layers are binarized by definition; use host_conv/host_fc");
    }
    if (kind == LayerKind::fc || kind == LayerKind::host_fc) {
        if (k != 1 || padding != 0 || stride != 1) fail("fc layers take no k/stride/pad");
    }
    if (kind == LayerKind::pool && !thresholds.empty()) fail("pool layers take no thresholds");
    if (!thresholds.empty() && int(thresholds.size()) != out_channels) {
        fail("thresholds length must equal the output channel count");
    }
}

Shape LayerSpec::output_shape(const Shape& in) const {
    auto fail = [&](const std::string& msg) { throw ConfigError("layer " + name + ": " + msg); };
    if (in.c < 1 || in.h < 1 || in.w < 1) fail("bad input shape " + to_string(in));
    switch (kind) {
    case LayerKind::conv:
    case LayerKind::host_conv: {
        if (in.c != in_channels) fail("expects " + std::to_string(in_channels) + " channels");
        int h = (in.h + 2 * padding - k) / stride + 1;
        int w = (in.w + 2 * padding - k) / stride + 1;
        if (in.h + 2 * padding < k || in.w + 2 * padding < k || h < 1 || w < 1) {
            fail("filter does not fit input " + to_string(in));
        }
        return {out_channels, h, w};
    }
    case LayerKind::fc:
    case LayerKind::host_fc:
        if (in.elements() != in_channels) {
            fail("expects " + std::to_string(in_channels) + " inputs, got " + to_string(in));
        }
        return {out_channels, 1, 1};
    case LayerKind::pool:
        if (in.h % 2 != 0 || in.w % 2 != 0) fail("pool needs even spatial dims, got " + to_string(in));
        return {in.c, in.h / 2, in.w / 2};
    }
    fail("unknown kind");
    return {};
}

void NetworkSpec::validate() const {
    if (layers.empty()) throw ConfigError("network has no layers");
    if (classes < 1) throw ConfigError("network class count must be >= 1");
    if (input.c < 1 || input.h < 1 || input.w < 1) {
        throw ConfigError("bad network input shape " + to_string(input));
    }
    std::set<std::string> names;
    for (const LayerSpec& l : layers) {
        l.validate();
        if (!names.insert(l.name).second) throw ConfigError("duplicate layer name " + l.name);
    }
    if (layers.back().kind == LayerKind::pool) {
        throw ConfigError("final layer may not be a pool; logits need a conv or fc");
    }
    Shape out = shapes().back();
    if (out.elements() != classes) {
        throw ConfigError("final layer produces " + std::to_string(out.elements()) +
                          " values, expected " + std::to_string(classes) + " classes");
    }
}

std::vector<Shape> NetworkSpec::shapes() const {
    std::vector<Shape> out;
    out.reserve(layers.size() + 1);
    out.push_back(input);
    for (const LayerSpec& l : layers) out.push_back(l.output_shape(out.back()));
    return out;
}

namespace {

Shape parse_shape(const std::string& key, const std::string& text) {
    Shape s;
    char x1 = 0, x2 = 0;
    std::istringstream in(text);
    if (!(in >> s.c >> x1 >> s.h >> x2 >> s.w) || x1 != 'x' || x2 != 'x' || !(in >> std::ws).eof()) {
        throw ConfigError("key '" + key + "': '" + text + "' is not a CxHxW shape");
    }
    return s;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        std::istringstream trimmer(item);
        std::string word;
        while (trimmer >> word) out.push_back(word);
    }
    return out;
}

} // namespace

NetworkSpec parse_network(std::istream& in) {
    KeyValueMap kv = parse_keyval(in);
    NetworkSpec net;
    net.name = kv_get(kv, "net.name", "unnamed");
    net.input = parse_shape("net.input", kv_require(kv, "net.input"));
    net.classes = int(kv_parse_int("net.classes", kv_require(kv, "net.classes")));
    std::vector<std::string> order = split_list(kv_require(kv, "net.layers"));
    if (order.empty()) throw ConfigError("net.layers lists no layers");

    std::set<std::string> known;
    Shape cur = net.input;
    for (const std::string& name : order) {
        if (name == "net") throw ConfigError("'net' is a reserved section name");
        LayerSpec l;
        l.name = name;
        std::string prefix = name + ".";
        l.kind = layer_kind_from_string(kv_require(kv, prefix + "kind"));
        l.binarized = l.kind == LayerKind::conv || l.kind == LayerKind::fc;
        if (l.kind == LayerKind::pool) {
            l.in_channels = cur.c;
            l.out_channels = cur.c;
        } else {
            l.out_channels = int(kv_parse_int(prefix + "out", kv_require(kv, prefix + "out")));
            if (l.kind == LayerKind::fc || l.kind == LayerKind::host_fc) {
                if (cur.elements() > INT32_MAX) throw ConfigError("fc input too large");
                l.in_channels = int(cur.elements());
            } else {
                l.in_channels = cur.c;
                l.k = int(kv_get_int(kv, prefix + "k", 3));
                l.stride = int(kv_get_int(kv, prefix + "stride", 1));
                l.padding = int(kv_get_int(kv, prefix + "pad", 0));
            }
        }
        if (kv_has(kv, prefix + "thresholds")) {
            for (const std::string& v : split_list(kv_require(kv, prefix + "thresholds"))) {
                l.thresholds.push_back(int32_t(kv_parse_int(prefix + "thresholds", v)));
            }
        }
        l.validate();
        cur = l.output_shape(cur);
        net.layers.push_back(std::move(l));
        known.insert(name);
    }
    // Reject sections that name no layer: they are silent typos otherwise.
    for (const auto& [key, value] : kv) {
        size_t dot = key.find('.');
        if (dot == std::string::npos) throw ConfigError("stray key '" + key + "' outside a section");
        std::string sec = key.substr(0, dot);
        if (sec != "net" && known.find(sec) == known.end()) {
            throw ConfigError("section [" + sec + "] does not appear in net.layers");
        }
    }
    net.validate();
    return net;
}

NetworkSpec load_network(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open network file: " + file.string());
    return parse_network(in);
}

std::string emit_network(const NetworkSpec& net) {
    KeyValueMap kv;
    kv["net.name"] = net.name;
    kv["net.input"] = to_string(net.input);
    kv["net.classes"] = std::to_string(net.classes);
    std::string order;
    for (const LayerSpec& l : net.layers) {
        if (!order.empty()) order += ", ";
        order += l.name;
        std::string prefix = l.name + ".";
        kv[prefix + "kind"] = to_string(l.kind);
        if (l.kind == LayerKind::pool) continue;
        kv[prefix + "out"] = std::to_string(l.out_channels);
        if (l.kind == LayerKind::conv || l.kind == LayerKind::host_conv) {
            kv[prefix + "k"] = std::to_string(l.k);
            kv[prefix + "stride"] = std::to_string(l.stride);
            kv[prefix + "pad"] = std::to_string(l.padding);
        }
        if (!l.thresholds.empty()) {
            std::string ts;
            for (int32_t t : l.thresholds) {
                if (!ts.empty()) ts += ",";
                ts += std::to_string(t);
            }
            kv[prefix + "thresholds"] = ts;
        }
    }
    kv["net.layers"] = order;
    return emit_keyval(kv);
}

FeatureMap FeatureMap::bits(Shape s) {
    FeatureMap m;
    m.shape = s;
    m.binarized = true;
    m.planes.assign(size_t(s.c), BinaryVector(size_t(s.h) * s.w));
    return m;
}

FeatureMap FeatureMap::ints(Shape s) {
    FeatureMap m;
    m.shape = s;
    m.binarized = false;
    m.values.assign(size_t(s.elements()), 0);
    return m;
}

bool FeatureMap::bit_at(int c, int y, int x) const {
    return planes[size_t(c)].bit(size_t(y) * shape.w + x);
}

void FeatureMap::set_bit_at(int c, int y, int x, bool v) {
    planes[size_t(c)].set_bit(size_t(y) * shape.w + x, v);
}

int32_t FeatureMap::int_at(int c, int y, int x) const {
    return values[(size_t(c) * shape.h + y) * shape.w + x];
}

void FeatureMap::set_int_at(int c, int y, int x, int32_t v) {
    values[(size_t(c) * shape.h + y) * shape.w + x] = v;
}

FeatureMap feature_from_tensor(const Tensor& t) {
    t.validate();
    if (t.dims.size() != 3) throw IoError("feature tensor must be rank 3 (CxHxW)");
    Shape s{int(t.dims[0]), int(t.dims[1]), int(t.dims[2])};
    if (t.dtype == Dtype::i32) {
        FeatureMap m = FeatureMap::ints(s);
        m.values = t.values;
        return m;
    }
    FeatureMap m = FeatureMap::bits(s);
    for (int c = 0; c < s.c; ++c) {
        for (int y = 0; y < s.h; ++y) {
            const BinaryVector& row = t.rows[size_t(c) * s.h + y];
            for (int x = 0; x < s.w; ++x) m.set_bit_at(c, y, x, row.bit(size_t(x)));
        }
    }
    return m;
}

Tensor feature_to_tensor(const FeatureMap& m) {
    std::vector<uint32_t> dims{uint32_t(m.shape.c), uint32_t(m.shape.h), uint32_t(m.shape.w)};
    if (!m.binarized) {
        Tensor t = make_int_tensor(dims);
        t.values = m.values;
        t.validate();
        return t;
    }
    Tensor t = make_bit_tensor(dims);
    for (int c = 0; c < m.shape.c; ++c) {
        for (int y = 0; y < m.shape.h; ++y) {
            BinaryVector& row = t.rows[size_t(c) * m.shape.h + y];
            for (int x = 0; x < m.shape.w; ++x) row.set_bit(size_t(x), m.bit_at(c, y, x));
        }
    }
    return t;
}

} // namespace csram
