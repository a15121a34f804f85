#include "csram/array.hpp"

#include <stdexcept>
#include <string>

#include "csram/errors.hpp"

namespace csram {

void ArrayGeometry::validate() const {
    if (columns < 1 || columns > kWordBits)
        throw ConfigError("geometry: columns must be in [1,64]");
    if (dual_rwl && columns % 2 != 0)
        throw ConfigError("geometry: dual wordline needs an even column count");
    if (rows_per_section < 1)
        throw ConfigError("geometry: rows_per_section must be positive");
    if (sections < 1)
        throw ConfigError("geometry: sections must be positive");
    if (subarrays_per_bank < 1)
        throw ConfigError("geometry: subarrays_per_bank must be positive");
}

SectionedBank::SectionedBank(ArrayGeometry geometry, CostLedger& ledger)
    : geom_(geometry), ledger_(&ledger) {
    geom_.validate();
    rows_.resize(static_cast<size_t>(geom_.kernel_rows()));
    activation_rows_.resize(static_cast<size_t>(geom_.rows_per_section));
}

size_t SectionedBank::flat_index(const RowAddress& addr) const {
    if (addr.subarray < 0 || addr.subarray >= geom_.subarrays_per_bank)
        throw std::out_of_range("row address: subarray " + std::to_string(addr.subarray) +
                                " outside bank of " + std::to_string(geom_.subarrays_per_bank));
    if (addr.section < 0 || addr.section >= geom_.sections)
        throw std::out_of_range("row address: section " + std::to_string(addr.section) +
                                " outside " + std::to_string(geom_.sections));
    if (addr.row < 0 || addr.row >= geom_.rows_per_section)
        throw std::out_of_range("row address: row " + std::to_string(addr.row) + " outside section of " +
                                std::to_string(geom_.rows_per_section));
    return (static_cast<size_t>(addr.subarray) * geom_.sections + addr.section) *
               geom_.rows_per_section +
           addr.row;
}

const BitWord& SectionedBank::stored(const RowAddress& addr) const {
    const auto& slot = rows_[flat_index(addr)];
    if (!slot)
        throw std::invalid_argument("read of a row that was never written");
    return *slot;
}

void SectionedBank::write_row(const RowAddress& addr, const BitWord& word) {
    if (word.width() != geom_.columns)
        throw std::invalid_argument("row width " + std::to_string(word.width()) +
                                    " does not match " + std::to_string(geom_.columns) + " columns");
    rows_[flat_index(addr)] = word;
    ledger_->record(EventKind::sram_write, EventDetail::kernel_load);
}

BitWord SectionedBank::read_row(const RowAddress& addr) const {
    const BitWord& w = stored(addr);
    ledger_->record(EventKind::sram_read);
    return w;
}

void SectionedBank::write_activation(int row, const BitWord& word) {
    if (row < 0 || row >= static_cast<int>(activation_rows_.size()))
        throw std::out_of_range("activation row " + std::to_string(row) + " outside region");
    if (word.width() != geom_.columns)
        throw std::invalid_argument("activation width does not match columns");
    activation_rows_[row] = word;
    ledger_->record(EventKind::sram_write, EventDetail::activation);
}

LineState SectionedBank::pseudo_read(int activation_row) {
    if (activation_row < 0 || activation_row >= static_cast<int>(activation_rows_.size()))
        throw std::out_of_range("activation row outside region");
    const auto& slot = activation_rows_[activation_row];
    if (!slot)
        throw std::invalid_argument("pseudo-read of an activation row that was never written");
    ticket_ += 1;
    ledger_->record(EventKind::pseudo_read_batch, EventDetail::none, 1, geom_.sections);
    return LineState{*slot, ticket_, true};
}

std::vector<int> SectionedBank::sectioned_convolve(LineState& line,
                                                   std::span<const RowAddress> kernel_rows,
                                                   PopcountEngine& engine, int real_bits) {
    if (!engine.supports_sections())
        throw ConfigError("engine '" + std::string(engine.name()) +
                          "' does not support sectioned dispatch");
    if (!line.valid || line.ticket != ticket_)
        throw std::invalid_argument("line state is stale; pseudo-read the row again");
    if (kernel_rows.empty())
        throw std::invalid_argument("sectioned convolve needs at least one kernel row");
    if (static_cast<int>(kernel_rows.size()) > geom_.sections)
        throw std::invalid_argument("more kernel rows than sections");
    if (real_bits < 0)
        real_bits = geom_.columns;
    const int subarray = kernel_rows.front().subarray;
    std::vector<int> counts;
    counts.reserve(kernel_rows.size());
    for (size_t i = 0; i < kernel_rows.size(); ++i) {
        const RowAddress& addr = kernel_rows[i];
        if (addr.section != static_cast<int>(i))
            throw std::invalid_argument("kernel row " + std::to_string(i) + " must sit in section " +
                                        std::to_string(i));
        if (addr.subarray != subarray)
            throw std::invalid_argument("kernel rows of one dispatch must share a subarray");
        counts.push_back(engine.convolve_tile(line.activation, stored(addr), addr.section, real_bits));
    }
    line.valid = false;
    ticket_ += 1; // the line is consumed; a new precharge is required
    ledger_->record(EventKind::adc_conversion, EventDetail::none,
                    static_cast<int64_t>(kernel_rows.size()));
    return counts;
}

int SectionedBank::dual_read_convolve(int activation_row, const RowAddress& kernel,
                                      PopcountEngine& engine, int real_bits) {
    if (activation_row < 0 || activation_row >= static_cast<int>(activation_rows_.size()))
        throw std::out_of_range("activation row outside region");
    const auto& slot = activation_rows_[activation_row];
    if (!slot)
        throw std::invalid_argument("dual read of an activation row that was never written");
    if (real_bits < 0)
        real_bits = geom_.columns;
    const int count = engine.convolve_tile(*slot, stored(kernel), 0, real_bits);
    ledger_->record(EventKind::dual_read, EventDetail::none, 1, geom_.columns);
    ledger_->record(EventKind::adder);
    return count;
}

int large_kernel_popcount(std::span<const int> partials, int columns) {
    if (partials.empty())
        throw std::invalid_argument("no partial popcounts to accumulate");
    int total = 0;
    for (size_t i = 0; i < partials.size(); ++i) {
        if (partials[i] < 0 || partials[i] > columns)
            throw std::invalid_argument("partial popcount at " + std::to_string(i) + " outside [0," +
                                        std::to_string(columns) + "]");
        total += partials[i];
    }
    return total;
}

int threshold_activation(int total_popcount, int kernel_size) {
    if (kernel_size < 1)
        throw std::invalid_argument("kernel size must be positive");
    if (total_popcount < 0 || total_popcount > kernel_size)
        throw std::invalid_argument("popcount outside [0, kernel_size]");
    return 2 * total_popcount > kernel_size ? 1 : 0;
}

} // namespace csram
