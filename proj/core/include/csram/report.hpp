#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csram/cost.hpp"
#include "csram/inference.hpp"
#include "csram/keyval.hpp"
#include "csram/network.hpp"

namespace csram {

// One aggregated report row. Counts come straight from the ledger; MACs are
// derived at word granularity (64 per conversion, dual read or baseline XNOR
// word, so exact whenever N is a multiple of 64).
struct ReportRow {
    std::string layer;
    std::string kind; // network layer kind, "-" when unknown
    double energy_pj = 0.0;
    double latency_ns = 0.0;
    // Energy of the in-array compute events alone (pseudo-reads, conversions,
    // dual reads, adder ops). Excludes data movement and host work, so the
    // sectioned-vs-unsectioned energy ratio is visible regardless of traffic.
    double array_energy_pj = 0.0;
    int64_t pseudo_reads = 0;
    int64_t conversions = 0;
    int64_t dual_reads = 0;
    int64_t adder_ops = 0;
    int64_t sram_reads = 0;
    int64_t sram_writes = 0;
    int64_t host_instrs = 0;
    int64_t dram_accesses = 0;
    int64_t binary_macs = 0;
    int64_t host_macs = 0;
};

struct RunReport {
    int schema = 1;
    std::string engine;
    KeyValueMap config; // effective configuration echo
    int images = 0;
    std::vector<ReportRow> layers;
    ReportRow total;
    NoiseStats popcount_error;
    std::optional<double> accuracy;
    std::optional<Speedup> vs_baseline;
};

ReportRow make_row(const std::string& layer, const std::string& kind, const LayerCosts& costs);

// Per-layer rows in first-seen ledger order plus a sum row. `net` supplies
// the layer kinds when given.
RunReport build_report(const std::string& engine, const KeyValueMap& config,
                       const NetworkSpec* net, const CostLedger& ledger);

// All three renderings are deterministic: identical reports serialize to
// identical bytes.
std::string to_table(const RunReport& r);
std::string to_csv(const RunReport& r);
std::string to_json(const RunReport& r);

// Raw per-layer event breakdown (kind/detail/param with count, energy and
// latency), for --explain style dumps.
std::string explain_events(const CostLedger& ledger);

} // namespace csram
