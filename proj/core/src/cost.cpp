#include "csram/cost.hpp"

#include <stdexcept>
#include <tuple>

namespace csram {

const char* to_string(EventKind k) {
    switch (k) {
    case EventKind::pseudo_read_batch: return "pseudo_read_batch";
    case EventKind::adc_conversion: return "adc_conversion";
    case EventKind::dual_read: return "dual_read";
    case EventKind::adder: return "adder";
    case EventKind::sram_read: return "sram_read";
    case EventKind::sram_write: return "sram_write";
    case EventKind::host_instr: return "host_instr";
    case EventKind::dram_access: return "dram_access";
    }
    return "?";
}

const char* to_string(EventDetail d) {
    switch (d) {
    case EventDetail::none: return "";
    case EventDetail::mac: return "mac";
    case EventDetail::xnor: return "xnor";
    case EventDetail::popcount_loop: return "popcount_loop";
    case EventDetail::accumulate: return "accumulate";
    case EventDetail::compare: return "compare";
    case EventDetail::kernel_load: return "kernel_load";
    case EventDetail::activation: return "activation";
    case EventDetail::output: return "output";
    case EventDetail::pool: return "pool";
    }
    return "?";
}

void CostConstants::validate() const {
    if (a_energy_sectioned_pj <= 0 || a_energy_unsectioned_pj <= 0)
        throw std::invalid_argument("charge-share energies must be positive");
    if (a_energy_sectioned_pj > a_energy_unsectioned_pj)
        throw std::invalid_argument("sectioned energy cannot exceed unsectioned energy");
    if (a_energy_sectioned_pj * 4.0 < a_energy_unsectioned_pj)
        throw std::invalid_argument("sectioned energy below the 4-section amortization floor");
    if (a_latency_ns <= 0 || b_xnor_latency_ns <= 0 || b_adder_latency_ns <= 0)
        throw std::invalid_argument("op latencies must be positive");
    if (b_xnor_energy_fj_per_bit < 0 || b_adder_power_mw < 0)
        throw std::invalid_argument("digital energy constants must be >= 0");
    if (baseline_read_energy_pj < 0 || sram_write_energy_pj < 0 || host_instr_energy_pj < 0 ||
        dram_access_energy_pj < 0)
        throw std::invalid_argument("memory/host energy constants must be >= 0");
    if (baseline_read_latency_ns < 0 || sram_write_latency_ns < 0 || host_instr_latency_ns < 0 ||
        dram_access_latency_ns < 0)
        throw std::invalid_argument("memory/host latencies must be >= 0");
    if (host_instrs_per_popcount < 1)
        throw std::invalid_argument("host_instrs_per_popcount must be >= 1");
}

double CostConstants::precharge_energy_pj() const {
    // Calibrated on the 4-section measurement: E(1)-E(4) = (3/4)*precharge.
    return (a_energy_unsectioned_pj - a_energy_sectioned_pj) * 4.0 / 3.0;
}

double CostConstants::conversion_energy_pj() const {
    return a_energy_unsectioned_pj - precharge_energy_pj();
}

double event_energy_pj(const CostEvent& e, const CostConstants& c) {
    const double m = static_cast<double>(e.multiplicity);
    switch (e.kind) {
    case EventKind::pseudo_read_batch: return m * c.precharge_energy_pj();
    case EventKind::adc_conversion: return m * c.conversion_energy_pj();
    case EventKind::dual_read: return m * c.b_xnor_energy_fj_per_bit * e.param / 1000.0;
    case EventKind::adder: return m * c.b_adder_power_mw * c.b_adder_latency_ns; // mW*ns = pJ
    case EventKind::sram_read: return m * c.baseline_read_energy_pj;
    case EventKind::sram_write: return m * c.sram_write_energy_pj;
    case EventKind::host_instr: return m * c.host_instr_energy_pj;
    case EventKind::dram_access: return m * c.dram_access_energy_pj;
    }
    throw std::invalid_argument("unknown event kind");
}

double event_latency_ns(const CostEvent& e, const CostConstants& c) {
    const double m = static_cast<double>(e.multiplicity);
    switch (e.kind) {
    case EventKind::pseudo_read_batch: return m * c.a_latency_ns;
    case EventKind::adc_conversion: return 0.0; // concurrent within the batch window
    case EventKind::dual_read: return m * c.b_xnor_latency_ns;
    case EventKind::adder: return m * c.b_adder_latency_ns;
    case EventKind::sram_read: return m * c.baseline_read_latency_ns;
    case EventKind::sram_write: return m * c.sram_write_latency_ns;
    case EventKind::host_instr: return m * c.host_instr_latency_ns;
    case EventKind::dram_access: return m * c.dram_access_latency_ns;
    }
    throw std::invalid_argument("unknown event kind");
}

double op_energy_pj(OpKind op, int sections, const CostConstants& c) {
    switch (op) {
    case OpKind::charge_share:
        if (sections < 1)
            throw std::invalid_argument("charge-share op needs sections >= 1");
        return c.precharge_energy_pj() / sections + c.conversion_energy_pj();
    case OpKind::adder_tree:
        return c.b_xnor_energy_fj_per_bit * 64.0 / 1000.0 + c.b_adder_power_mw * c.b_adder_latency_ns;
    case OpKind::baseline_mac:
        return 2.0 * c.baseline_read_energy_pj +
               (1.0 + c.host_instrs_per_popcount) * c.host_instr_energy_pj;
    }
    throw std::invalid_argument("unknown op kind");
}

double op_latency_ns(OpKind op, int batch_size, const CostConstants& c) {
    if (batch_size < 1)
        throw std::invalid_argument("op batch size must be >= 1");
    switch (op) {
    case OpKind::charge_share:
        return c.a_latency_ns; // the whole batch converts concurrently
    case OpKind::adder_tree:
        return batch_size * (c.b_xnor_latency_ns + c.b_adder_latency_ns);
    case OpKind::baseline_mac:
        return batch_size * (2.0 * c.baseline_read_latency_ns +
                             (1.0 + c.host_instrs_per_popcount) * c.host_instr_latency_ns);
    }
    throw std::invalid_argument("unknown op kind");
}

int64_t LayerCosts::count(EventKind k) const {
    int64_t n = 0;
    for (const auto& [key, totals] : by_event)
        if (key.first == k) n += totals.count;
    return n;
}

int64_t LayerCosts::count(EventKind k, EventDetail d) const {
    auto it = by_event.find({k, d});
    return it == by_event.end() ? 0 : it->second.count;
}

CostLedger::CostLedger(CostConstants constants) : constants_(constants) {
    constants_.validate();
}

void CostLedger::record(EventKind kind, EventDetail detail, int64_t multiplicity, int param) {
    if (multiplicity <= 0)
        throw std::invalid_argument("event multiplicity must be positive");
    const auto key = std::make_tuple(layer_, kind, detail, param);
    auto it = index_.find(key);
    if (it != index_.end()) {
        events_[it->second].multiplicity += multiplicity;
        return;
    }
    if (seen_layers_.insert(layer_).second)
        layer_order_.push_back(layer_);
    index_.emplace(key, events_.size());
    events_.push_back(CostEvent{kind, detail, layer_, multiplicity, param});
}

LayerCosts CostLedger::aggregate(const std::string& layer) const {
    LayerCosts out;
    for (const CostEvent& e : events_) {
        if (e.layer != layer)
            continue;
        const double energy = event_energy_pj(e, constants_);
        const double latency = event_latency_ns(e, constants_);
        out.energy_pj += energy;
        out.latency_ns += latency;
        auto& slot = out.by_event[{e.kind, e.detail}];
        slot.count += e.multiplicity;
        slot.energy_pj += energy;
        slot.latency_ns += latency;
    }
    return out;
}

LayerCosts CostLedger::totals() const {
    LayerCosts out;
    for (const CostEvent& e : events_) {
        const double energy = event_energy_pj(e, constants_);
        const double latency = event_latency_ns(e, constants_);
        out.energy_pj += energy;
        out.latency_ns += latency;
        auto& slot = out.by_event[{e.kind, e.detail}];
        slot.count += e.multiplicity;
        slot.energy_pj += energy;
        slot.latency_ns += latency;
    }
    return out;
}

std::vector<std::string> CostLedger::layer_tags() const {
    return layer_order_;
}

void CostLedger::merge(const CostLedger& other) {
    const std::string saved = layer_;
    for (const CostEvent& e : other.events_) {
        layer_ = e.layer;
        record(e.kind, e.detail, e.multiplicity, e.param);
    }
    layer_ = saved;
}

Speedup speedup(const LayerCosts& accelerated, const LayerCosts& baseline) {
    if (accelerated.energy_pj <= 0.0 || accelerated.latency_ns <= 0.0)
        throw std::invalid_argument("speedup: accelerated aggregate is empty");
    if (baseline.energy_pj <= 0.0 || baseline.latency_ns <= 0.0)
        throw std::invalid_argument("speedup: baseline aggregate is empty");
    return Speedup{baseline.energy_pj / accelerated.energy_pj,
                   baseline.latency_ns / accelerated.latency_ns};
}

} // namespace csram
