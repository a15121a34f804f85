#include "csram/adder_tree.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace csram {

SenseAmpOutputs dual_rwl_sense(const BitWord& activation_row, const BitWord& kernel_row) {
    if (activation_row.width() != kernel_row.width())
        throw std::invalid_argument("dual_rwl_sense width mismatch");
    const int w = activation_row.width();
    const uint64_t a = activation_row.bits();
    const uint64_t k = kernel_row.bits();
    const uint64_t and_bits = a & k;
    const uint64_t nor_bits = ~(a | k) & width_mask(w);
    return SenseAmpOutputs{BitWord(and_bits, w), BitWord(nor_bits, w),
                           BitWord(and_bits | nor_bits, w)};
}

AdderTree::AdderTree(int input_width) : input_width_(input_width) {
    if (input_width < 2 || input_width > kWordBits || !std::has_single_bit(static_cast<unsigned>(input_width)))
        throw std::invalid_argument("adder tree input width must be a power of two in [2,64], got " +
                                    std::to_string(input_width));
    int count = input_width;
    int bits = 1;
    while (count > 1) {
        layers_.push_back(AdderLayer{count, bits});
        count /= 2;
        bits += 1;
    }
    output_width_ = bits; // log2(input_width) + 1
}

int AdderTree::reduce(const BitWord& w) const {
    if (w.width() != input_width_)
        throw std::invalid_argument("word width does not match tree input width");
    std::vector<int> operands(input_width_);
    for (int i = 0; i < input_width_; ++i)
        operands[i] = w.bit(i) ? 1 : 0;
    for (const AdderLayer& layer : layers_) {
        if (static_cast<int>(operands.size()) != layer.operand_count)
            throw std::logic_error("adder tree layer record out of sync");
        std::vector<int> next(layer.operand_count / 2);
        for (size_t i = 0; i < next.size(); ++i)
            next[i] = operands[2 * i] + operands[2 * i + 1];
        operands = std::move(next);
    }
    return operands[0];
}

int bit_tree_popcount(const AdderTree& tree, const BitWord& w) {
    return tree.reduce(w);
}

AdderTreeEngine::AdderTreeEngine() : tree_(kWordBits) {}

int AdderTreeEngine::processed_bits(int real_bits) const {
    if (real_bits < 1 || real_bits > kWordBits)
        throw std::invalid_argument("real_bits outside [1,64]");
    // The tree always consumes the full row; padding is corrected downstream.
    return kWordBits;
}

int AdderTreeEngine::convolve_tile(const BitWord& activation, const BitWord& kernel,
                                   int /*section*/, int real_bits) {
    if (activation.width() != kWordBits || kernel.width() != kWordBits)
        throw std::invalid_argument("adder-tree tiles are 64 bits wide");
    (void)processed_bits(real_bits);
    return tree_.reduce(dual_rwl_sense(activation, kernel).xnor_bits);
}

} // namespace csram
