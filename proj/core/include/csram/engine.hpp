#pragma once

#include <string_view>

#include "csram/bits.hpp"

namespace csram {

// A popcount engine evaluates one 64-bit XNOR+popcount tile. `real_bits` in
// [1,64] says how many leading bits are payload; trailing bits are matched
// padding (both operands 0, so every pad position XNORs to 1). Engines may
// skip padding-only phases; processed_bits() reports how many bit positions
// the engine actually evaluated, which the caller needs to subtract the pad
// contribution again.
class PopcountEngine {
public:
    virtual ~PopcountEngine() = default;

    virtual std::string_view name() const = 0;
    // True when the engine adds no noise.
    virtual bool exact() const = 0;
    // Whether several rows may share one pseudo-read (sectioned dispatch).
    virtual bool supports_sections() const = 0;

    // `section` selects an independent noise stream; exact engines ignore it.
    virtual int convolve_tile(const BitWord& activation, const BitWord& kernel,
                              int section, int real_bits) = 0;

    virtual int processed_bits(int real_bits) const = 0;

    // Convenience wrapper for a full 64-bit operation.
    int convolve64(const BitWord& activation, const BitWord& kernel, int section = 0) {
        return convolve_tile(activation, kernel, section, kWordBits);
    }
};

// Ideal noise-free reference. Follows the dual-wordline half-phase policy so
// it is a drop-in stand-in for the charge-share engine in sectioned dispatch.
class OracleEngine : public PopcountEngine {
public:
    std::string_view name() const override { return "oracle"; }
    bool exact() const override { return true; }
    bool supports_sections() const override { return true; }
    int convolve_tile(const BitWord& activation, const BitWord& kernel, int section,
                      int real_bits) override;
    int processed_bits(int real_bits) const override;
};

} // namespace csram
