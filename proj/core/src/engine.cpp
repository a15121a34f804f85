#include "csram/engine.hpp"

#include <stdexcept>

namespace csram {

int OracleEngine::processed_bits(int real_bits) const {
    if (real_bits < 1 || real_bits > kWordBits)
        throw std::invalid_argument("real_bits outside [1,64]");
    return 32 * ((real_bits + 31) / 32);
}

int OracleEngine::convolve_tile(const BitWord& activation, const BitWord& kernel, int /*section*/,
                                int real_bits) {
    const BitWord match = xnor(activation, kernel);
    const int bits = processed_bits(real_bits);
    return static_cast<int>(std::popcount(match.bits() & width_mask(bits)));
}

} // namespace csram
