#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace csram {

// Bipolar encoding used throughout: +1 maps to bit 1 (cell pulls the line HIGH
// on a match), -1 maps to bit 0. Bit index 0 is the lowest-order bit of a word
// and corresponds to the leftmost array column.

inline constexpr int kWordBits = 64;

constexpr uint64_t width_mask(int width) {
    return width >= 64 ? ~0ull : ((1ull << width) - 1ull);
}

// One array row (or a slice of one): up to 64 bits plus an explicit width.
// Bits at positions >= width are always zero.
class BitWord {
public:
    BitWord() = default;
    BitWord(uint64_t bits, int width);

    static BitWord all_ones(int width) { return BitWord(width_mask(width), width); }
    static BitWord zeros(int width) { return BitWord(0, width); }

    uint64_t bits() const { return bits_; }
    int width() const { return width_; }
    bool bit(int i) const;
    void set_bit(int i, bool v);

    friend bool operator==(const BitWord&, const BitWord&) = default;

private:
    uint64_t bits_ = 0;
    int width_ = kWordBits;
};

// Bitwise XNOR of two equal-width words. Counting the 1s gives the number of
// matching positions, i.e. the number of +1 products of the bipolar vectors.
BitWord xnor(const BitWord& a, const BitWord& b);

int popcount(const BitWord& w);

// A packed bipolar vector of arbitrary length. All words are 64 bits wide
// except possibly the last.
class BinaryVector {
public:
    BinaryVector() = default;
    explicit BinaryVector(size_t length);

    size_t length() const { return length_; }
    size_t word_count() const { return words_.size(); }
    const BitWord& word(size_t i) const { return words_[i]; }
    BitWord& word(size_t i) { return words_[i]; }

    bool bit(size_t i) const;
    void set_bit(size_t i, bool v);

    friend bool operator==(const BinaryVector&, const BinaryVector&) = default;

private:
    size_t length_ = 0;
    std::vector<BitWord> words_;
};

// Packs a +1/-1 vector; rejects empty input and any element not in {+1, -1}.
BinaryVector pack_bipolar(std::span<const int> values);
std::vector<int> unpack_bipolar(const BinaryVector& v);

// Number of positions where the two vectors agree. Reference engine for every
// popcount scheme in the simulator.
int xnor_popcount(const BinaryVector& a, const BinaryVector& b);
int xnor_popcount(const BitWord& a, const BitWord& b);

// Bipolar dot product via the popcount identity: dot = 2*matches - length.
int bipolar_dot(const BinaryVector& a, const BinaryVector& b);

} // namespace csram
