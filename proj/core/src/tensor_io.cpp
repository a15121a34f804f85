#include "csram/tensor_io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "csram/errors.hpp"

namespace csram {
namespace {

constexpr char kMagic[4] = {'X', 'R', 'T', '1'};
constexpr uint32_t kMaxRank = 8;
constexpr uint64_t kMaxElements = 1ull << 34;

uint64_t words_per_row(uint64_t row_len) {
    return (row_len + kWordBits - 1) / kWordBits;
}

void put_u32(std::ostream& out, uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

void put_u64(std::ostream& out, uint64_t v) {
    put_u32(out, static_cast<uint32_t>(v & 0xffffffffu));
    put_u32(out, static_cast<uint32_t>(v >> 32));
}

uint32_t get_u32(std::istream& in, const char* what) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
        throw IoError(std::string("tensor container truncated reading ") + what);
    }
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

uint64_t get_u64(std::istream& in, const char* what) {
    uint64_t lo = get_u32(in, what);
    uint64_t hi = get_u32(in, what);
    return lo | (hi << 32);
}

} // namespace

uint64_t Tensor::row_length() const {
    return dims.empty() ? 0 : dims.back();
}

uint64_t Tensor::row_count() const {
    if (dims.empty()) return 0;
    uint64_t n = 1;
    for (size_t i = 0; i + 1 < dims.size(); ++i) n *= dims[i];
    return n;
}

uint64_t Tensor::element_count() const {
    return row_count() * row_length();
}

void Tensor::validate() const {
    if (dims.empty()) throw std::invalid_argument("tensor rank must be >= 1");
    for (uint32_t d : dims) {
        if (d == 0) throw std::invalid_argument("tensor dimension must be nonzero");
    }
    if (dtype == Dtype::bits) {
        if (!values.empty()) throw std::invalid_argument("bit tensor carries integer payload");
        if (rows.size() != row_count()) throw std::invalid_argument("bit tensor row count mismatch");
        for (const BinaryVector& r : rows) {
            if (r.length() != row_length()) {
                throw std::invalid_argument("bit tensor row length mismatch");
            }
        }
    } else if (dtype == Dtype::i32) {
        if (!rows.empty()) throw std::invalid_argument("integer tensor carries bit payload");
        if (values.size() != element_count()) {
            throw std::invalid_argument("integer tensor payload size mismatch");
        }
    } else {
        throw std::invalid_argument("unknown tensor dtype");
    }
}

Tensor make_bit_tensor(std::vector<uint32_t> dims) {
    Tensor t;
    t.dims = std::move(dims);
    t.dtype = Dtype::bits;
    if (t.dims.empty()) throw std::invalid_argument("tensor rank must be >= 1");
    t.rows.assign(t.row_count(), BinaryVector(t.row_length()));
    t.validate();
    return t;
}

Tensor make_int_tensor(std::vector<uint32_t> dims) {
    Tensor t;
    t.dims = std::move(dims);
    t.dtype = Dtype::i32;
    if (t.dims.empty()) throw std::invalid_argument("tensor rank must be >= 1");
    t.values.assign(t.element_count(), 0);
    t.validate();
    return t;
}

Tensor read_tensor(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4)) throw IoError("tensor container truncated reading magic");
    for (int i = 0; i < 4; ++i) {
        if (magic[i] != kMagic[i]) throw IoError("bad tensor container magic");
    }
    uint32_t rank = get_u32(in, "rank");
    if (rank == 0 || rank > kMaxRank) {
        throw IoError("tensor rank " + std::to_string(rank) + " out of range [1, " +
                      std::to_string(kMaxRank) + "]");
    }
    Tensor t;
    t.dims.resize(rank);
    uint64_t elems = 1;
    for (uint32_t i = 0; i < rank; ++i) {
        t.dims[i] = get_u32(in, "dims");
        if (t.dims[i] == 0) throw IoError("tensor dimension must be nonzero");
        elems *= t.dims[i];
        if (elems > kMaxElements) throw IoError("tensor too large");
    }
    char dtype_tag = 0;
    if (!in.read(&dtype_tag, 1)) throw IoError("tensor container truncated reading dtype");
    if (dtype_tag == 0) {
        t.dtype = Dtype::bits;
        const uint64_t len = t.row_length();
        const uint64_t nwords = words_per_row(len);
        t.rows.reserve(t.row_count());
        for (uint64_t r = 0; r < t.row_count(); ++r) {
            BinaryVector row(len);
            for (uint64_t w = 0; w < nwords; ++w) {
                uint64_t bits = get_u64(in, "bit payload");
                int width = row.word(w).width();
                if (bits & ~width_mask(width)) {
                    throw IoError("nonzero padding bits in bit-packed row");
                }
                row.word(w) = BitWord(bits, width);
            }
            t.rows.push_back(std::move(row));
        }
    } else if (dtype_tag == 1) {
        t.dtype = Dtype::i32;
        t.values.reserve(elems);
        for (uint64_t i = 0; i < elems; ++i) {
            t.values.push_back(static_cast<int32_t>(get_u32(in, "integer payload")));
        }
    } else {
        throw IoError("unknown tensor dtype tag " + std::to_string(int(dtype_tag)));
    }
    return t;
}

Tensor read_tensor(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open tensor file: " + file.string());
    Tensor t = read_tensor(in);
    // Trailing garbage means the file does not match its header.
    in.peek();
    if (!in.eof()) throw IoError("trailing bytes after tensor payload: " + file.string());
    return t;
}

void write_tensor(std::ostream& out, const Tensor& t) {
    t.validate();
    out.write(kMagic, 4);
    put_u32(out, static_cast<uint32_t>(t.dims.size()));
    for (uint32_t d : t.dims) put_u32(out, d);
    char tag = static_cast<char>(t.dtype);
    out.write(&tag, 1);
    if (t.dtype == Dtype::bits) {
        for (const BinaryVector& row : t.rows) {
            for (size_t w = 0; w < row.word_count(); ++w) put_u64(out, row.word(w).bits());
        }
    } else {
        for (int32_t v : t.values) put_u32(out, static_cast<uint32_t>(v));
    }
    if (!out) throw IoError("tensor write failed");
}

void write_tensor(const std::filesystem::path& file, const Tensor& t) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create tensor file: " + file.string());
    write_tensor(out, t);
    out.close();
    if (!out) throw IoError("tensor write failed: " + file.string());
}

} // namespace csram
