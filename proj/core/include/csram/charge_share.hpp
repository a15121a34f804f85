#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "csram/bits.hpp"
#include "csram/engine.hpp"
#include "csram/rng.hpp"

namespace csram {

// Analog in-array popcount. A pseudo-read leaves the source line at a voltage
// proportional to the number of matching (XNOR=1) cells; a two-stage ADC then
// digitizes that level. Stage one picks one of four coarse subclasses, stage
// two counts charge-pump cycles to a per-subclass reference and only the
// cycle count is noisy.

// Source-line level after charge sharing: `pullups` of `active_cells` cells
// pulled the line high. Voltage is normalized to the supply.
struct SourceLineLevel {
    int pullups = 0;
    int active_cells = 0;
    double normalized_voltage = 0.0;
};

SourceLineLevel make_level(int pullups, int active_cells);

// Charge-share the XNOR result of two equal-width row halves onto the line.
SourceLineLevel xnor_on_sl(const BitWord& activation_half, const BitWord& kernel_half);

enum class Subclass : int { SC1 = 0, SC2 = 1, SC3 = 2, SC4 = 3 };

// Two-stage ADC over `active_cells + 1` distinct line levels.
//
// With Q = active_cells/4, the subclass windows in pullup counts are
//   SC1 = [0, Q)   SC2 = [Q, 2Q)   SC3 = [2Q, 3Q]   SC4 = (3Q, 4Q]
// (SC3 is closed at both ends, so it is the one subclass with Q+1 codes).
// Stage two pumps charge IN toward the reference for SC1/SC2 and OUT for
// SC3/SC4; each cycle moves the line by one level, giving ideal counts
//   SC1: Q-p in [1,Q]   SC2: 2Q-p in [1,Q]   SC3: p-2Q in [0,Q]   SC4: p-3Q in [1,Q].
// The noisy count is round(ideal + N(0, sigma)) clamped to the legal range,
// which keeps encode->decode a bijection at sigma=0.
class AdcModel {
public:
    AdcModel(double sigma_counts, uint64_t rng_seed, int active_cells = 32);

    Subclass stage1(const SourceLineLevel& level) const;
    // Noisy cycle count; advances the noise stream once per call.
    int stage2(const SourceLineLevel& level, Subclass sc);
    // Maps (subclass, count) back to a pullup count; throws on illegal counts.
    int decode(Subclass sc, int count) const;

    // stage1 + stage2 + decode for one line level.
    int convert(const SourceLineLevel& level);

    int ideal_count(int pullups) const;
    std::pair<int, int> legal_count_range(Subclass sc) const;

    double sigma() const { return sigma_; }
    int active_cells() const { return active_cells_; }

private:
    int quarter() const { return active_cells_ / 4; }

    double sigma_;
    int active_cells_;
    GaussianSource noise_;
};

// Full-row engine over the ADC. In dual-wordline mode a 64-bit row is read as
// two 32-cell halves (columns 0..31, then 32..63) converted back to back; in
// single-wordline mode the whole row shares one conversion over 65 levels and
// the halved sense margin doubles the effective count noise.
class ChargeShareEngine : public PopcountEngine {
public:
    ChargeShareEngine(double sigma_counts, uint64_t seed, bool dual_wordline = true);

    std::string_view name() const override { return "proposal_a"; }
    bool exact() const override { return sigma_ == 0.0; }
    bool supports_sections() const override { return true; }
    int convolve_tile(const BitWord& activation, const BitWord& kernel, int section,
                      int real_bits) override;
    int processed_bits(int real_bits) const override;

    bool dual_wordline() const { return dual_wordline_; }
    double sigma() const { return sigma_; }
    // One independent ADC (and noise stream) per section.
    AdcModel& section_model(int section);

private:
    double sigma_;
    uint64_t seed_;
    bool dual_wordline_;
    std::vector<std::unique_ptr<AdcModel>> models_;
};

} // namespace csram
