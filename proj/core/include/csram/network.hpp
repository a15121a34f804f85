#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "csram/bits.hpp"
#include "csram/tensor_io.hpp"

namespace csram {

// conv/fc run on the compute banks over bit-packed +-1 data; host_conv and
// host_fc run in 32-bit integer arithmetic on the host; pool is a 2x2 stride-2
// OR over a binarized map.
enum class LayerKind : int { conv, fc, pool, host_conv, host_fc };

const char* to_string(LayerKind k);
LayerKind layer_kind_from_string(const std::string& s); // throws ConfigError

struct Shape {
    int c = 0;
    int h = 0;
    int w = 0;

    int64_t elements() const { return int64_t(c) * h * w; }
    friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& s);

struct LayerSpec {
    std::string name;
    LayerKind kind = LayerKind::conv;
    int k = 1; // filter height/width; fc uses 1
    int in_channels = 1;
    int out_channels = 1;
    int stride = 1;
    int padding = 0;
    bool binarized = false;
    // Optional per-channel activation thresholds: output bit = (popcount > T_c).
    // Empty means the default rule, 1 iff 2*popcount > N.
    std::vector<int32_t> thresholds;

    // Bits per output element: N = k^2 * in_channels (fc: input length).
    int64_t n_bits() const { return int64_t(k) * k * in_channels; }

    void validate() const;                     // throws ConfigError
    Shape output_shape(const Shape& in) const; // throws ConfigError on mismatch
};

struct NetworkSpec {
    std::string name;
    Shape input;
    int classes = 0;
    std::vector<LayerSpec> layers;

    void validate() const;
    // input shape followed by each layer's output shape (layers.size() + 1).
    std::vector<Shape> shapes() const;
};

// Text format: a [net] section (name, input = CxHxW, classes, layers = list)
// plus one section per layer (kind, k, out, stride, pad, thresholds).
// in_channels is derived by chaining shapes.
NetworkSpec parse_network(std::istream& in);
NetworkSpec load_network(const std::filesystem::path& file);
std::string emit_network(const NetworkSpec& net);

// One activation tensor flowing between layers. Binarized maps hold one
// bit-plane per channel (bit index y*w + x); host maps hold row-major i32.
struct FeatureMap {
    Shape shape;
    bool binarized = false;
    std::vector<BinaryVector> planes;
    std::vector<int32_t> values;

    static FeatureMap bits(Shape s);
    static FeatureMap ints(Shape s);

    bool bit_at(int c, int y, int x) const;
    void set_bit_at(int c, int y, int x, bool v);
    int32_t int_at(int c, int y, int x) const;
    void set_int_at(int c, int y, int x, int32_t v);
};

// Container mapping: rank-3 [C,H,W]; dtype bits for binarized maps (one row
// per (c, y) pair), dtype i32 otherwise.
FeatureMap feature_from_tensor(const Tensor& t);
Tensor feature_to_tensor(const FeatureMap& m);

} // namespace csram
