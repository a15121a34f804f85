#include "csram/bits.hpp"

#include <stdexcept>
#include <string>

namespace csram {

BitWord::BitWord(uint64_t bits, int width) : bits_(bits), width_(width) {
    if (width < 1 || width > kWordBits)
        throw std::invalid_argument("BitWord width must be in [1,64], got " + std::to_string(width));
    bits_ &= width_mask(width);
}

bool BitWord::bit(int i) const {
    if (i < 0 || i >= width_)
        throw std::out_of_range("bit index " + std::to_string(i) + " out of width " + std::to_string(width_));
    return (bits_ >> i) & 1ull;
}

void BitWord::set_bit(int i, bool v) {
    if (i < 0 || i >= width_)
        throw std::out_of_range("bit index " + std::to_string(i) + " out of width " + std::to_string(width_));
    if (v)
        bits_ |= (1ull << i);
    else
        bits_ &= ~(1ull << i);
}

BitWord xnor(const BitWord& a, const BitWord& b) {
    if (a.width() != b.width())
        throw std::invalid_argument("xnor width mismatch: " + std::to_string(a.width()) + " vs " +
                                    std::to_string(b.width()));
    return BitWord(~(a.bits() ^ b.bits()), a.width());
}

int popcount(const BitWord& w) {
    return std::popcount(w.bits());
}

BinaryVector::BinaryVector(size_t length) : length_(length) {
    if (length == 0)
        throw std::invalid_argument("BinaryVector length must be positive");
    const size_t full = length / kWordBits;
    const int rem = static_cast<int>(length % kWordBits);
    words_.assign(full, BitWord(0, kWordBits));
    if (rem != 0)
        words_.push_back(BitWord(0, rem));
}

bool BinaryVector::bit(size_t i) const {
    if (i >= length_)
        throw std::out_of_range("vector bit index out of range");
    return words_[i / kWordBits].bit(static_cast<int>(i % kWordBits));
}

void BinaryVector::set_bit(size_t i, bool v) {
    if (i >= length_)
        throw std::out_of_range("vector bit index out of range");
    words_[i / kWordBits].set_bit(static_cast<int>(i % kWordBits), v);
}

BinaryVector pack_bipolar(std::span<const int> values) {
    if (values.empty())
        throw std::invalid_argument("pack_bipolar: empty input");
    BinaryVector out(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        if (values[i] != 1 && values[i] != -1)
            throw std::invalid_argument("pack_bipolar: element at " + std::to_string(i) +
                                        " is not +1/-1: " + std::to_string(values[i]));
        if (values[i] == 1)
            out.set_bit(i, true);
    }
    return out;
}

std::vector<int> unpack_bipolar(const BinaryVector& v) {
    std::vector<int> out(v.length());
    for (size_t i = 0; i < v.length(); ++i)
        out[i] = v.bit(i) ? 1 : -1;
    return out;
}

int xnor_popcount(const BitWord& a, const BitWord& b) {
    return popcount(xnor(a, b));
}

int xnor_popcount(const BinaryVector& a, const BinaryVector& b) {
    if (a.length() != b.length())
        throw std::invalid_argument("xnor_popcount length mismatch");
    int total = 0;
    for (size_t i = 0; i < a.word_count(); ++i)
        total += xnor_popcount(a.word(i), b.word(i));
    return total;
}

int bipolar_dot(const BinaryVector& a, const BinaryVector& b) {
    return 2 * xnor_popcount(a, b) - static_cast<int>(a.length());
}

} // namespace csram
