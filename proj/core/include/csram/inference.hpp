#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "csram/array.hpp"
#include "csram/bits.hpp"
#include "csram/cost.hpp"
#include "csram/engine.hpp"
#include "csram/network.hpp"

namespace csram {

// baseline is not an engine: it models the conventional software path (SRAM
// fetches plus host XNOR/popcount instructions) and stays exact.
enum class EngineKind : int { proposal_a, proposal_b, oracle, baseline };

const char* to_string(EngineKind k);
EngineKind engine_kind_from_string(const std::string& s); // throws ConfigError

struct EngineSettings {
    EngineKind kind = EngineKind::oracle;
    ArrayGeometry geometry;
    double sigma = 0.4359;
    uint64_t seed = 1;

    void validate() const; // the adder-tree path has no pseudo-read to share
};

// Null for baseline.
std::unique_ptr<PopcountEngine> make_engine(const EngineSettings& s);

// Tiling of an N-bit dot product onto 64-bit ops. Both operands of the tail
// tile are zero-padded, so every pad position counts as a match; the
// dispatcher subtracts that contribution once per output element.
struct TilePlan {
    int64_t n_bits = 0;
    int tiles = 0;
    int tail_bits = 0;   // payload bits in the last tile (64 when N % 64 == 0)
    int half_phases = 0; // M = ceil(N/32): noisy half-counts per element in dual mode
};

TilePlan plan_tiles(int64_t n_bits);
int64_t padding_correction(const TilePlan& plan, const PopcountEngine& engine);

// Online mean/std accumulator (Welford). Merging is associative but not
// commutative in float; callers merge in a canonical order.
struct NoiseStats {
    int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    void merge(const NoiseStats& other);
    double variance() const;
    double stddev() const;
};

// Binarized layers hold one packed kernel per output channel (length N, laid
// out [c][ky][kx]); host layers hold row-major i32 [O][N].
struct LayerWeights {
    std::vector<BinaryVector> kernels;
    std::vector<int32_t> host;
};

struct Weights {
    std::map<std::string, LayerWeights> by_layer;
};

Weights random_weights(const NetworkSpec& net, uint64_t seed);
// Directory of one tensor container per layer, named <layer>.xrt.
Weights load_weights(const std::filesystem::path& dir, const NetworkSpec& net);
void save_weights(const std::filesystem::path& dir, const NetworkSpec& net, const Weights& w);

// Runs every output channel of one layer against one receptive field.
// field_sums returns match counts with the padding correction applied; counts
// are noisy under a noisy engine and may stray outside [0, N].
class TileDispatcher {
public:
    virtual ~TileDispatcher() = default;
    virtual void field_sums(const BinaryVector& field, std::vector<int64_t>& out) = 0;
};

// engine may be null only for baseline. Kernels must outlive the dispatcher.
std::unique_ptr<TileDispatcher> make_dispatcher(const EngineSettings& settings,
                                                PopcountEngine* engine,
                                                const std::vector<BinaryVector>& kernels,
                                                int64_t n_bits, CostLedger& ledger);

struct InferenceResult {
    int predicted = -1;
    std::vector<int64_t> logits;
    CostLedger ledger;
    // Noisy minus exact match count per binarized output element.
    NoiseStats popcount_error;
};

InferenceResult infer(const NetworkSpec& net, const Weights& weights, const FeatureMap& image,
                      const EngineSettings& settings, const CostConstants& constants);

struct Dataset {
    std::vector<FeatureMap> images;
    std::vector<int> labels;
};

// Directory with labels.csv ("file,label" per line) next to the image tensors.
Dataset load_dataset(const std::filesystem::path& dir);

struct EvaluationResult {
    int images = 0;
    int correct = 0;
    double accuracy = 0.0;
    NoiseStats popcount_error;
    CostLedger ledger;
    std::vector<int> predictions;
};

// Image i draws its noise from derive_seed(settings.seed, i) and results merge
// in image order, so the outcome is independent of the job count.
EvaluationResult evaluate(const NetworkSpec& net, const Weights& weights, const Dataset& data,
                          const EngineSettings& settings, const CostConstants& constants,
                          int jobs = 1);

} // namespace csram
