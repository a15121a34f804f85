#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace csram {

// Event-based energy/latency accounting. Every architectural action appends a
// costed event to a ledger; reports are pure aggregations over that stream.

enum class EventKind : int {
    pseudo_read_batch, // one precharge + charge-share shared by n conversions
    adc_conversion,    // one 64-bit analog conversion (concurrent within its batch)
    dual_read,         // digital dual-wordline sense of one row pair
    adder,             // one bit-tree reduction
    sram_read,
    sram_write,
    host_instr,
    dram_access,
};

// Refines host_instr/sram events for reporting; energy and latency depend on
// the kind only.
enum class EventDetail : int {
    none,
    mac,           // one non-binarized multiply-accumulate
    xnor,          // baseline software XNOR of a 64-bit word pair
    popcount_loop, // baseline software popcount instructions
    accumulate,    // partial-popcount adds on the host
    compare,       // threshold comparison / binarization
    kernel_load,
    activation,
    output,
    pool,
};

const char* to_string(EventKind k);
const char* to_string(EventDetail d);

struct CostEvent {
    EventKind kind;
    EventDetail detail = EventDetail::none;
    std::string layer;
    int64_t multiplicity = 1;
    // Kind-specific parameter: conversions per batch for pseudo_read_batch,
    // sensed bits for dual_read; 0 otherwise.
    int param = 0;
};

// Per-op constants. The charge-share and adder-tree figures are measured
// per-op values; the host/DRAM figures are documented placeholders.
struct CostConstants {
    double a_energy_sectioned_pj = 0.767;   // per op, 4 sections sharing a pseudo-read
    double a_energy_unsectioned_pj = 1.914; // per op, exclusive pseudo-read
    double a_latency_ns = 45.0;             // per op; a batch completes in this time
    double b_xnor_energy_fj_per_bit = 29.67;
    double b_xnor_latency_ns = 1.0;
    double b_adder_power_mw = 0.26;
    double b_adder_latency_ns = 0.3;
    double baseline_read_energy_pj = 2.5;
    double baseline_read_latency_ns = 10.0;
    double sram_write_energy_pj = 2.5;
    double sram_write_latency_ns = 10.0;
    double host_instr_energy_pj = 10.0;
    double host_instr_latency_ns = 10.0;
    double dram_access_energy_pj = 640.0;
    double dram_access_latency_ns = 50.0;
    int host_instrs_per_popcount = 30;

    void validate() const;

    // The two charge-share calibration points split into a precharge term
    // amortized over the batch and a per-conversion term:
    //   E(n) = precharge/n + convert,  E(1) and E(4) matching the constants.
    double precharge_energy_pj() const;
    double conversion_energy_pj() const;
};

// Energy/latency of one event (multiplicity applied).
double event_energy_pj(const CostEvent& e, const CostConstants& c);
double event_latency_ns(const CostEvent& e, const CostConstants& c);

enum class OpKind : int { charge_share, adder_tree, baseline_mac };

// Per-op helpers used by reports and tests. `sections` is the number of
// conversions sharing a pseudo-read (charge_share), ignored otherwise.
double op_energy_pj(OpKind op, int sections, const CostConstants& c);
// Total latency of one dispatch: a charge-share batch of any size completes
// in one op time; adder-tree and baseline ops serialize.
double op_latency_ns(OpKind op, int batch_size, const CostConstants& c);

struct EventTotals {
    int64_t count = 0;
    double energy_pj = 0.0;
    double latency_ns = 0.0;
};

struct LayerCosts {
    double energy_pj = 0.0;
    double latency_ns = 0.0;
    // Keyed by (kind, detail) pairs in enum order.
    std::map<std::pair<EventKind, EventDetail>, EventTotals> by_event;

    int64_t count(EventKind k) const;
    int64_t count(EventKind k, EventDetail d) const;
};

// Append-only event stream. Identical consecutive-or-not events coalesce into
// multiplicity counters per (layer, kind, detail, param); aggregation is
// order-independent, so this preserves every observable quantity while
// keeping million-op runs small.
class CostLedger {
public:
    explicit CostLedger(CostConstants constants = CostConstants());

    const CostConstants& constants() const { return constants_; }

    void set_layer(std::string tag) { layer_ = std::move(tag); }
    const std::string& layer() const { return layer_; }

    void record(EventKind kind, EventDetail detail = EventDetail::none, int64_t multiplicity = 1,
                int param = 0);

    const std::vector<CostEvent>& events() const { return events_; }

    LayerCosts aggregate(const std::string& layer) const;
    LayerCosts totals() const;
    std::vector<std::string> layer_tags() const; // in first-seen order

    // Appends the other ledger's events (constants must match).
    void merge(const CostLedger& other);

private:
    CostConstants constants_;
    std::string layer_ = "-";
    std::vector<CostEvent> events_;
    std::map<std::tuple<std::string, EventKind, EventDetail, int>, size_t> index_;
    std::set<std::string> seen_layers_;
    std::vector<std::string> layer_order_;
};

struct Speedup {
    double energy_ratio = 0.0;
    double latency_ratio = 0.0;
};

// Baseline-over-accelerated ratios; both aggregates must be nonzero.
Speedup speedup(const LayerCosts& accelerated, const LayerCosts& baseline);

} // namespace csram
