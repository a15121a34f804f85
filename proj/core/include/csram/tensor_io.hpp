#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "csram/bits.hpp"

namespace csram {

// "XRT1" tensor container. Layout, all little-endian:
//   magic 'X' 'R' 'T' '1'
//   u32 rank, u32 dims[rank]
//   u8 dtype (0 = bit-packed, 1 = signed 32-bit integer)
//   payload
// dtype 0 treats the last dimension as the row: each row is packed LSB-first
// (bit 0 = first element, matching the array column order) and padded with
// zero bits to a 64-bit boundary. dtype 1 is plain row-major i32.

enum class Dtype : uint8_t { bits = 0, i32 = 1 };

struct Tensor {
    std::vector<uint32_t> dims;
    Dtype dtype = Dtype::bits;
    std::vector<BinaryVector> rows; // dtype bits: one per combination of outer indices
    std::vector<int32_t> values;    // dtype i32: row-major

    uint64_t row_length() const; // last dim
    uint64_t row_count() const;  // product of the outer dims
    uint64_t element_count() const;

    // Shape/payload consistency; throws std::invalid_argument.
    void validate() const;
};

// Zero-initialized tensors of a given shape.
Tensor make_bit_tensor(std::vector<uint32_t> dims);
Tensor make_int_tensor(std::vector<uint32_t> dims);

// Throw IoError on bad magic, truncation, unknown dtype, zero dims, oversized
// shapes, or nonzero padding bits.
Tensor read_tensor(std::istream& in);
Tensor read_tensor(const std::filesystem::path& file);

void write_tensor(std::ostream& out, const Tensor& t);
void write_tensor(const std::filesystem::path& file, const Tensor& t);

} // namespace csram
