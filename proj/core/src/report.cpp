#include "csram/report.hpp"

#include <cstdarg>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace csram {
namespace {

std::string strf(const char* fmt, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

} // namespace

ReportRow make_row(const std::string& layer, const std::string& kind, const LayerCosts& costs) {
    ReportRow r;
    r.layer = layer;
    r.kind = kind;
    r.energy_pj = costs.energy_pj;
    r.latency_ns = costs.latency_ns;
    r.pseudo_reads = costs.count(EventKind::pseudo_read_batch);
    r.conversions = costs.count(EventKind::adc_conversion);
    r.dual_reads = costs.count(EventKind::dual_read);
    r.adder_ops = costs.count(EventKind::adder);
    r.sram_reads = costs.count(EventKind::sram_read);
    r.sram_writes = costs.count(EventKind::sram_write);
    r.host_instrs = costs.count(EventKind::host_instr);
    r.dram_accesses = costs.count(EventKind::dram_access);
    int64_t words = r.conversions + r.dual_reads + costs.count(EventKind::host_instr, EventDetail::xnor);
    r.binary_macs = words * kWordBits;
    r.host_macs = costs.count(EventKind::host_instr, EventDetail::mac);
    for (const auto& [key, totals] : costs.by_event) {
        switch (key.first) {
        case EventKind::pseudo_read_batch:
        case EventKind::adc_conversion:
        case EventKind::dual_read:
        case EventKind::adder:
            r.array_energy_pj += totals.energy_pj;
            break;
        default:
            break;
        }
    }
    return r;
}

RunReport build_report(const std::string& engine, const KeyValueMap& config,
                       const NetworkSpec* net, const CostLedger& ledger) {
    RunReport rep;
    rep.engine = engine;
    rep.config = config;
    for (const std::string& tag : ledger.layer_tags()) {
        std::string kind = "-";
        if (net != nullptr) {
            for (const LayerSpec& l : net->layers)
                if (l.name == tag) {
                    kind = to_string(l.kind);
                    break;
                }
        }
        rep.layers.push_back(make_row(tag, kind, ledger.aggregate(tag)));
    }
    rep.total = make_row("total", "-", ledger.totals());
    return rep;
}

std::string to_table(const RunReport& r) {
    std::ostringstream out;
    out << "engine: " << r.engine;
    if (r.images > 0)
        out << "   images: " << r.images;
    if (r.accuracy)
        out << strf("   accuracy: %.2f%%", 100.0 * *r.accuracy);
    out << '\n';
    if (r.popcount_error.n > 0)
        out << strf("popcount error: mean %+.4f  stddev %.4f  (%lld samples)\n",
                    r.popcount_error.mean, r.popcount_error.stddev(),
                    static_cast<long long>(r.popcount_error.n));
    if (r.vs_baseline)
        out << strf("vs baseline: %.2fx energy, %.2fx latency\n", r.vs_baseline->energy_ratio,
                    r.vs_baseline->latency_ratio);
    out << strf("%-12s %-9s %14s %14s %14s %12s %10s\n", "layer", "kind", "energy_pj",
                "latency_ns", "array_pj", "binary_macs", "host_macs");
    auto line = [&](const ReportRow& row) {
        out << strf("%-12s %-9s %14.3f %14.3f %14.3f %12lld %10lld\n", row.layer.c_str(),
                    row.kind.c_str(), row.energy_pj, row.latency_ns, row.array_energy_pj,
                    static_cast<long long>(row.binary_macs), static_cast<long long>(row.host_macs));
    };
    for (const ReportRow& row : r.layers)
        line(row);
    line(r.total);
    return out.str();
}

std::string to_csv(const RunReport& r) {
    std::ostringstream out;
    out << "layer,kind,energy_pj,latency_ns,array_energy_pj,pseudo_reads,conversions,dual_reads,"
           "adder_ops,sram_reads,sram_writes,host_instrs,dram_accesses,binary_macs,host_macs\n";
    auto line = [&](const ReportRow& row) {
        out << row.layer << ',' << row.kind << ',' << strf("%.6f", row.energy_pj) << ','
            << strf("%.6f", row.latency_ns) << ',' << strf("%.6f", row.array_energy_pj) << ','
            << row.pseudo_reads << ',' << row.conversions << ',' << row.dual_reads << ','
            << row.adder_ops << ',' << row.sram_reads << ',' << row.sram_writes << ','
            << row.host_instrs << ',' << row.dram_accesses << ',' << row.binary_macs << ','
            << row.host_macs << '\n';
    };
    for (const ReportRow& row : r.layers)
        line(row);
    line(r.total);
    return out.str();
}

std::string to_json(const RunReport& r) {
    using json = nlohmann::ordered_json;
    auto row_json = [](const ReportRow& row) {
        json j;
        j["layer"] = row.layer;
        j["kind"] = row.kind;
        j["energy_pj"] = row.energy_pj;
        j["latency_ns"] = row.latency_ns;
        j["array_energy_pj"] = row.array_energy_pj;
        j["pseudo_reads"] = row.pseudo_reads;
        j["conversions"] = row.conversions;
        j["dual_reads"] = row.dual_reads;
        j["adder_ops"] = row.adder_ops;
        j["sram_reads"] = row.sram_reads;
        j["sram_writes"] = row.sram_writes;
        j["host_instrs"] = row.host_instrs;
        j["dram_accesses"] = row.dram_accesses;
        j["binary_macs"] = row.binary_macs;
        j["host_macs"] = row.host_macs;
        return j;
    };
    json j;
    j["schema"] = r.schema;
    j["engine"] = r.engine;
    j["config"] = json::object();
    for (const auto& [k, v] : r.config)
        j["config"][k] = v;
    json summary;
    summary["images"] = r.images;
    if (r.accuracy)
        summary["accuracy"] = *r.accuracy;
    summary["popcount_error"] = {{"samples", r.popcount_error.n},
                                 {"mean", r.popcount_error.mean},
                                 {"stddev", r.popcount_error.stddev()}};
    summary["energy_pj"] = r.total.energy_pj;
    summary["latency_ns"] = r.total.latency_ns;
    summary["array_energy_pj"] = r.total.array_energy_pj;
    summary["binary_macs"] = r.total.binary_macs;
    summary["host_macs"] = r.total.host_macs;
    if (r.vs_baseline)
        summary["speedup"] = {{"energy", r.vs_baseline->energy_ratio},
                              {"latency", r.vs_baseline->latency_ratio}};
    j["summary"] = summary;
    j["layers"] = json::array();
    for (const ReportRow& row : r.layers)
        j["layers"].push_back(row_json(row));
    j["total"] = row_json(r.total);
    return j.dump(2) + "\n";
}

std::string explain_events(const CostLedger& ledger) {
    std::ostringstream out;
    out << strf("%-12s %-18s %-14s %6s %12s %16s %16s\n", "layer", "event", "detail", "param",
                "count", "energy_pj", "latency_ns");
    for (const std::string& tag : ledger.layer_tags()) {
        // Re-aggregate keeping the param split visible.
        std::map<std::tuple<EventKind, EventDetail, int>, EventTotals> rows;
        for (const CostEvent& e : ledger.events()) {
            if (e.layer != tag)
                continue;
            EventTotals& t = rows[{e.kind, e.detail, e.param}];
            t.count += e.multiplicity;
            t.energy_pj += event_energy_pj(e, ledger.constants());
            t.latency_ns += event_latency_ns(e, ledger.constants());
        }
        for (const auto& [key, t] : rows) {
            const auto& [kind, detail, param] = key;
            out << strf("%-12s %-18s %-14s %6d %12lld %16.4f %16.4f\n", tag.c_str(),
                        to_string(kind), to_string(detail), param,
                        static_cast<long long>(t.count), t.energy_pj, t.latency_ns);
        }
    }
    return out.str();
}

} // namespace csram
