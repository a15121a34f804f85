#pragma once

#include <vector>

#include "csram/bits.hpp"
#include "csram/engine.hpp"

namespace csram {

// Digital in-array popcount. Both wordlines fire at once and each column's
// pair of asymmetric sense amplifiers resolves AND and NOR of the two cells;
// OR-ing those two rails yields XNOR without ever exposing the raw bits. A
// pipelined bit-tree adder then reduces the 64 match bits to an exact count.

struct SenseAmpOutputs {
    BitWord and_bits;
    BitWord nor_bits;
    BitWord xnor_bits;
};

// Simultaneous dual-wordline read of two equal-width rows.
SenseAmpOutputs dual_rwl_sense(const BitWord& activation_row, const BitWord& kernel_row);

// Structural record of one reduction stage: `operand_count` inputs of
// `operand_bits` each, summed pairwise into operand_count/2 outputs.
struct AdderLayer {
    int operand_count;
    int operand_bits;
};

// Pairwise reduction tree over a power-of-two input width. A 64-input tree
// has log2(64) = 6 layers and a 7-bit output.
class AdderTree {
public:
    explicit AdderTree(int input_width);

    int input_width() const { return input_width_; }
    int output_width() const { return output_width_; }
    const std::vector<AdderLayer>& layers() const { return layers_; }

    // Exact popcount of `w`, evaluated layer by layer.
    int reduce(const BitWord& w) const;

private:
    int input_width_;
    int output_width_;
    std::vector<AdderLayer> layers_;
};

// Popcount through a tree whose input width must match the word width.
int bit_tree_popcount(const AdderTree& tree, const BitWord& w);

class AdderTreeEngine : public PopcountEngine {
public:
    AdderTreeEngine();

    std::string_view name() const override { return "proposal_b"; }
    bool exact() const override { return true; }
    // The digital scheme senses every row pair itself; nothing to share.
    bool supports_sections() const override { return false; }
    int convolve_tile(const BitWord& activation, const BitWord& kernel, int section,
                      int real_bits) override;
    int processed_bits(int real_bits) const override;

    const AdderTree& tree() const { return tree_; }

private:
    AdderTree tree_;
};

} // namespace csram
