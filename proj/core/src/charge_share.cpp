#include "csram/charge_share.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace csram {

SourceLineLevel make_level(int pullups, int active_cells) {
    if (active_cells < 4)
        throw std::invalid_argument("source line needs at least 4 active cells");
    if (pullups < 0 || pullups > active_cells)
        throw std::invalid_argument("pullups " + std::to_string(pullups) + " outside [0," +
                                    std::to_string(active_cells) + "]");
    return SourceLineLevel{pullups, active_cells,
                           static_cast<double>(pullups) / static_cast<double>(active_cells)};
}

SourceLineLevel xnor_on_sl(const BitWord& activation_half, const BitWord& kernel_half) {
    return make_level(xnor_popcount(activation_half, kernel_half), activation_half.width());
}

AdcModel::AdcModel(double sigma_counts, uint64_t rng_seed, int active_cells)
    : sigma_(sigma_counts), active_cells_(active_cells), noise_(rng_seed) {
    if (sigma_counts < 0.0)
        throw std::invalid_argument("ADC sigma must be >= 0");
    if (active_cells < 4 || active_cells % 4 != 0)
        throw std::invalid_argument("ADC active_cells must be a positive multiple of 4");
}

Subclass AdcModel::stage1(const SourceLineLevel& level) const {
    if (level.active_cells != active_cells_)
        throw std::invalid_argument("level width does not match ADC active_cells");
    const int q = quarter();
    const int p = level.pullups;
    if (p < q) return Subclass::SC1;
    if (p < 2 * q) return Subclass::SC2;
    if (p <= 3 * q) return Subclass::SC3; // closed at 3/4 supply
    return Subclass::SC4;
}

std::pair<int, int> AdcModel::legal_count_range(Subclass sc) const {
    const int q = quarter();
    // SC3 starts exactly on its counting reference, so its counter spans 0..Q.
    if (sc == Subclass::SC3) return {0, q};
    return {1, q};
}

int AdcModel::ideal_count(int pullups) const {
    const int q = quarter();
    switch (stage1(make_level(pullups, active_cells_))) {
    case Subclass::SC1: return q - pullups;       // pump in toward 1/4
    case Subclass::SC2: return 2 * q - pullups;   // pump in toward 1/2
    case Subclass::SC3: return pullups - 2 * q;   // pump out toward 1/2
    case Subclass::SC4: return pullups - 3 * q;   // pump out toward 3/4
    }
    return 0;
}

int AdcModel::stage2(const SourceLineLevel& level, Subclass sc) {
    if (stage1(level) != sc)
        throw std::invalid_argument("stage2: subclass does not match the line level");
    const int ideal = ideal_count(level.pullups);
    const auto [lo, hi] = legal_count_range(sc);
    if (sigma_ == 0.0)
        return ideal;
    const double noisy = static_cast<double>(ideal) + noise_.next(0.0, sigma_);
    const int count = static_cast<int>(std::llround(noisy));
    return std::clamp(count, lo, hi);
}

int AdcModel::decode(Subclass sc, int count) const {
    const auto [lo, hi] = legal_count_range(sc);
    if (count < lo || count > hi)
        throw std::invalid_argument("decode: count " + std::to_string(count) +
                                    " illegal for subclass " +
                                    std::to_string(static_cast<int>(sc) + 1));
    const int q = quarter();
    int p = 0;
    switch (sc) {
    case Subclass::SC1: p = q - count; break;
    case Subclass::SC2: p = 2 * q - count; break;
    case Subclass::SC3: p = 2 * q + count; break;
    case Subclass::SC4: p = 3 * q + count; break;
    }
#ifdef CSRAM_ADC_FAULT_INJECT
    // Deliberate table corruption for the self-test harness.
    if (sc == Subclass::SC2 && count == 3) p += 1;
#endif
    return p;
}

int AdcModel::convert(const SourceLineLevel& level) {
    const Subclass sc = stage1(level);
    return decode(sc, stage2(level, sc));
}

ChargeShareEngine::ChargeShareEngine(double sigma_counts, uint64_t seed, bool dual_wordline)
    : sigma_(sigma_counts), seed_(seed), dual_wordline_(dual_wordline) {
    if (sigma_counts < 0.0)
        throw std::invalid_argument("engine sigma must be >= 0");
}

AdcModel& ChargeShareEngine::section_model(int section) {
    if (section < 0)
        throw std::invalid_argument("negative section index");
    if (section >= static_cast<int>(models_.size()))
        models_.resize(section + 1);
    auto& slot = models_[section];
    if (!slot) {
        if (dual_wordline_) {
            slot = std::make_unique<AdcModel>(sigma_, derive_seed(seed_, section), 32);
        } else {
            // Single-wordline fallback: 65 levels, half the sense margin.
            slot = std::make_unique<AdcModel>(2.0 * sigma_, derive_seed(seed_, section), 64);
        }
    }
    return *slot;
}

int ChargeShareEngine::processed_bits(int real_bits) const {
    if (real_bits < 1 || real_bits > kWordBits)
        throw std::invalid_argument("real_bits outside [1,64]");
    if (!dual_wordline_)
        return kWordBits;
    // Half-phases that would carry only padding are not driven.
    return 32 * ((real_bits + 31) / 32);
}

int ChargeShareEngine::convolve_tile(const BitWord& activation, const BitWord& kernel,
                                     int section, int real_bits) {
    if (activation.width() != kWordBits || kernel.width() != kWordBits)
        throw std::invalid_argument("charge-share tiles are 64 bits wide");
    if (real_bits < 1 || real_bits > kWordBits)
        throw std::invalid_argument("real_bits outside [1,64]");
    AdcModel& adc = section_model(section);
    const BitWord match = xnor(activation, kernel);
    if (!dual_wordline_)
        return adc.convert(make_level(popcount(match), kWordBits));
    int total = 0;
    const uint64_t low = match.bits() & width_mask(32);
    total += adc.convert(make_level(std::popcount(low), 32));
    if (real_bits > 32) {
        const uint64_t high = match.bits() >> 32;
        total += adc.convert(make_level(std::popcount(high), 32));
    }
    return total;
}

} // namespace csram
