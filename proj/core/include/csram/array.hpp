#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csram/bits.hpp"
#include "csram/cost.hpp"
#include "csram/engine.hpp"

namespace csram {

struct ArrayGeometry {
    int columns = 64;
    int rows_per_section = 32;
    int sections = 4;
    int subarrays_per_bank = 64;
    bool dual_rwl = true;

    void validate() const;
    int64_t kernel_rows() const {
        return static_cast<int64_t>(rows_per_section) * sections * subarrays_per_bank;
    }
};

struct RowAddress {
    int subarray = 0;
    int section = 0;
    int row = 0;
};

// Snapshot of the read bitlines after a pseudo-read. Valid until the next
// precharge; a dispatch consumes it, so one pseudo-read feeds exactly one
// sectioned convolve.
struct LineState {
    BitWord activation;
    uint64_t ticket = 0;
    bool valid = false;
};

// One compute bank: a grid of subarrays whose rows are split into sections
// holding kernels, plus a small dedicated unsectioned region for activation
// rows. All writes and reads append events to the attached ledger.
class SectionedBank {
public:
    SectionedBank(ArrayGeometry geometry, CostLedger& ledger);

    const ArrayGeometry& geometry() const { return geom_; }
    CostLedger& ledger() { return *ledger_; }

    void write_row(const RowAddress& addr, const BitWord& word);
    BitWord read_row(const RowAddress& addr) const; // costed as a normal read

    void write_activation(int row, const BitWord& word);

    // Precharge the read bitlines and capture the activation row on them
    // without firing the sense amps. Costed as one batch event; the following
    // sectioned_convolve supplies the per-conversion events.
    LineState pseudo_read(int activation_row);

    // Convolve the captured activation against one kernel row per section
    // (kernel_rows[i] must live in section i of a common subarray). Returns
    // one popcount per row. Consumes the line.
    std::vector<int> sectioned_convolve(LineState& line, std::span<const RowAddress> kernel_rows,
                                        PopcountEngine& engine, int real_bits = -1);

    // Digital path: fire the activation row and a kernel row together through
    // the sense amps and the engine's reduction. No pseudo-read involved.
    int dual_read_convolve(int activation_row, const RowAddress& kernel, PopcountEngine& engine,
                           int real_bits = -1);

private:
    size_t flat_index(const RowAddress& addr) const;
    const BitWord& stored(const RowAddress& addr) const;

    ArrayGeometry geom_;
    CostLedger* ledger_;
    std::vector<std::optional<BitWord>> rows_;
    std::vector<std::optional<BitWord>> activation_rows_;
    uint64_t ticket_ = 0;
};

// Host-side accumulation of partial popcounts from split rows. Each partial
// must lie in [0, columns].
int large_kernel_popcount(std::span<const int> partials, int columns = kWordBits);

// Binary activation: 1 iff the popcount is strictly greater than half the
// kernel size (ties round to 0, i.e. a nonpositive bipolar sum maps to -1).
int threshold_activation(int total_popcount, int kernel_size);

} // namespace csram
