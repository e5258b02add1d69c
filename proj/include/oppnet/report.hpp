#pragma once

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oppnet/stats.hpp"

namespace oppnet {

// Report rows in the order they are printed. Counts are carried as doubles
// so that seed-averaged columns use the same machinery.
inline const std::vector<std::string>& report_labels() {
    static const std::vector<std::string> labels = {
        "sim_time", "created",       "started",    "relayed",      "aborted",
        "dropped",  "delivery_prob", "delay_prob", "hopcount_avg", "buffertime_avg",
        "latency_avg",
    };
    return labels;
}

inline std::vector<double> report_values(const StatsReport& r) {
    return {r.sim_time,
            static_cast<double>(r.created),
            static_cast<double>(r.started),
            static_cast<double>(r.relayed),
            static_cast<double>(r.aborted),
            static_cast<double>(r.dropped),
            r.delivery_prob,
            r.delay_prob,
            r.hopcount_avg,
            r.buffertime_avg,
            r.latency_avg};
}

struct ReportColumn {
    std::string label;
    std::vector<double> values;

    static ReportColumn from(const std::string& label, const StatsReport& r) {
        return {label, report_values(r)};
    }
};

inline ReportColumn average_columns(const std::string& label, const std::vector<ReportColumn>& cols) {
    ReportColumn out{label, std::vector<double>(report_labels().size(), 0.0)};
    for (const auto& c : cols)
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += c.values[i];
    if (!cols.empty())
        for (auto& v : out.values) v /= static_cast<double>(cols.size());
    return out;
}

// Counts print as integers when integral (single runs); everything else gets
// the 4-decimal style of the reference report.
inline std::string format_value(const std::string& label, double v) {
    char buf[64];
    bool count_row = label == "created" || label == "started" || label == "relayed" ||
                     label == "aborted" || label == "dropped";
    if (count_row && v == static_cast<double>(static_cast<long long>(v)))
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    else
        std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

inline void emit_table(const std::vector<ReportColumn>& cols, std::ostream& out) {
    out << "MESSAGE STATS REPORT\n";
    std::size_t w = 16;
    for (const auto& c : cols) w = std::max(w, c.label.size() + 2);
    out << std::left << std::setw(18) << "";
    for (const auto& c : cols) out << std::setw(static_cast<int>(w)) << c.label;
    out << "\n";
    const auto& labels = report_labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << std::left << std::setw(18) << (labels[i] + ":");
        for (const auto& c : cols) out << std::setw(static_cast<int>(w)) << format_value(labels[i], c.values[i]);
        out << "\n";
    }
}

inline void emit_csv(const std::vector<ReportColumn>& cols, std::ostream& out) {
    out << "run";
    for (const auto& l : report_labels()) out << "," << l;
    out << "\n";
    for (const auto& c : cols) {
        out << c.label;
        for (std::size_t i = 0; i < c.values.size(); ++i)
            out << "," << format_value(report_labels()[i], c.values[i]);
        out << "\n";
    }
}

inline nlohmann::json report_to_json(const StatsReport& r) {
    return nlohmann::json{{"sim_time", r.sim_time},
                          {"created", r.created},
                          {"started", r.started},
                          {"relayed", r.relayed},
                          {"aborted", r.aborted},
                          {"dropped", r.dropped},
                          {"delivered", r.delivered},
                          {"in_flight", r.in_flight},
                          {"delivery_prob", r.delivery_prob},
                          {"delay_prob", r.delay_prob},
                          {"hopcount_avg", r.hopcount_avg},
                          {"buffertime_avg", r.buffertime_avg},
                          {"latency_avg", r.latency_avg},
                          {"no_deliveries", r.no_deliveries},
                          {"accounting_ok", r.accounting_ok}};
}

inline StatsReport report_from_json(const nlohmann::json& j) {
    StatsReport r;
    r.sim_time = j.at("sim_time").get<double>();
    r.created = j.at("created").get<std::int64_t>();
    r.started = j.at("started").get<std::int64_t>();
    r.relayed = j.at("relayed").get<std::int64_t>();
    r.aborted = j.at("aborted").get<std::int64_t>();
    r.dropped = j.at("dropped").get<std::int64_t>();
    r.delivered = j.at("delivered").get<std::int64_t>();
    r.in_flight = j.at("in_flight").get<std::int64_t>();
    r.delivery_prob = j.at("delivery_prob").get<double>();
    r.delay_prob = j.at("delay_prob").get<double>();
    r.hopcount_avg = j.at("hopcount_avg").get<double>();
    r.buffertime_avg = j.at("buffertime_avg").get<double>();
    r.latency_avg = j.at("latency_avg").get<double>();
    r.no_deliveries = j.at("no_deliveries").get<bool>();
    r.accounting_ok = j.at("accounting_ok").get<bool>();
    return r;
}

inline void emit_json(const std::vector<ReportColumn>& cols, std::ostream& out) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : cols) {
        nlohmann::json col{{"run", c.label}};
        for (std::size_t i = 0; i < c.values.size(); ++i) col[report_labels()[i]] = c.values[i];
        j.push_back(col);
    }
    out << j.dump(2) << "\n";
}

inline void emit_report(const std::vector<ReportColumn>& cols, const std::string& format,
                        std::ostream& out) {
    if (format == "csv") emit_csv(cols, out);
    else if (format == "json") emit_json(cols, out);
    else emit_table(cols, out);
}

inline void emit_timeseries_csv(const std::vector<TimeseriesSample>& ts, std::ostream& out) {
    out << "t,created,delivered,delivery_prob,latency_avg,delay_prob\n";
    for (const auto& s : ts) {
        out << format_value("t", s.t) << "," << s.created << "," << s.delivered << ","
            << format_value("delivery_prob", s.delivery_prob) << ","
            << format_value("latency_avg", s.latency_avg) << ","
            << format_value("delay_prob", s.delay_prob) << "\n";
    }
}

} // namespace oppnet
