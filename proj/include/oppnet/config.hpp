#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oppnet {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RadioConfig {
    double range_m = 0.0;
    double bandwidth_bps = 0.0;
    bool operator==(const RadioConfig&) const = default;
};

struct PoiGroupConfig {
    int count = 0;
    // points are drawn uniformly inside this rectangle at load time
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool operator==(const PoiGroupConfig&) const = default;
};

struct GroupConfig {
    int count = 0;
    double speed_min = 0.5, speed_max = 1.5;   // m/s
    double pause_min = 0.0, pause_max = 120.0; // s
    std::vector<std::string> radios{"bluetooth"};
    bool generates = true;
    // (poi group name, selection probability); remainder of mass = uniform
    // random destination in the world rectangle
    std::vector<std::pair<std::string, double>> poi_probs;
    bool operator==(const GroupConfig&) const = default;
};

struct TrafficConfig {
    double mean_interval = 3600.0; // s, exponential inter-arrival per node
    std::int64_t size_min = 100 * 1024;
    std::int64_t size_max = 2 * 1024 * 1024;
    std::vector<double> ttls{3 * 3600.0, 6 * 3600.0, 12 * 3600.0};
    int hop_limit = 0; // 0 = unlimited
    bool operator==(const TrafficConfig&) const = default;
};

struct ProphetConfig {
    double p0 = 0.75;
    double alpha = 0.98;
    double beta = 0.25;
    double time_unit = 30.0; // s per aging step
    double threshold = 0.0;  // extra forwarding threshold, 0 = plain PROPHET
    bool operator==(const ProphetConfig&) const = default;
};

struct IntegratedConfig {
    double threshold = 0.1;
    double wait_time = 1800.0; // s before broadcast fallback
    int max_copies = 8;       // per-node spread budget per message
    bool operator==(const IntegratedConfig&) const = default;
};

struct ScenarioConfig {
    double world_width = 4500.0;
    double world_height = 3400.0;
    double tick = 1.0;
    double sim_time = 43200.0;
    std::uint64_t seed = 1;
    std::string strategy = "epidemic";
    std::int64_t buffer_capacity = 20 * 1024 * 1024;
    double seen_window = 300.0;
    double timeseries_interval = 600.0;
    TrafficConfig traffic;
    ProphetConfig prophet;
    IntegratedConfig integrated;
    std::map<std::string, RadioConfig> radios{
        {"bluetooth", {10.0, 2e6}},
        {"wlan", {30.0, 4.5e6}},
    };
    std::map<std::string, PoiGroupConfig> pois;
    std::map<std::string, GroupConfig> groups;

    bool operator==(const ScenarioConfig&) const = default;

    int total_nodes() const {
        int n = 0;
        for (const auto& [name, g] : groups) n += g.count;
        return n;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(trim(part));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

inline double parse_double(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': not a number: '" + v + "'");
    }
}

inline std::int64_t parse_int(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        std::int64_t i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': not an integer: '" + v + "'");
    }
}

inline bool parse_bool(const std::string& v, const std::string& key, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                      "': not a boolean: '" + v + "'");
}

inline std::pair<double, double> parse_range(const std::string& v, const std::string& key, int line) {
    auto parts = split(v, ',');
    if (parts.size() != 2)
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': expected 'min,max'");
    return {parse_double(parts[0], key, line), parse_double(parts[1], key, line)};
}

} // namespace detail

inline void validate_scenario(const ScenarioConfig& c) {
    auto fail = [](const std::string& key, const std::string& why) {
        throw ConfigError("key '" + key + "': " + why);
    };
    if (c.world_width <= 0) fail("world.width", "must be positive");
    if (c.world_height <= 0) fail("world.height", "must be positive");
    if (c.tick <= 0) fail("tick", "must be positive");
    if (c.sim_time < 0) fail("sim_time", "must be non-negative");
    if (c.strategy != "epidemic" && c.strategy != "prophet" && c.strategy != "integrated")
        fail("strategy", "must be one of epidemic, prophet, integrated");
    if (c.buffer_capacity <= 0) fail("buffer.capacity", "must be positive");
    if (c.seen_window < 0) fail("seen_window", "must be non-negative");
    if (c.timeseries_interval <= 0) fail("timeseries.interval", "must be positive");
    if (c.traffic.mean_interval <= 0) fail("traffic.mean_interval", "must be positive");
    if (c.traffic.size_min < 0 || c.traffic.size_min > c.traffic.size_max)
        fail("traffic.size_min", "need 0 <= size_min <= size_max");
    if (c.traffic.ttls.empty()) fail("traffic.ttls", "must list at least one lifetime");
    for (double t : c.traffic.ttls)
        if (t <= 0) fail("traffic.ttls", "lifetimes must be positive");
    if (c.traffic.hop_limit < 0) fail("traffic.hop_limit", "must be >= 0 (0 = unlimited)");
    if (c.prophet.p0 < 0 || c.prophet.p0 > 1) fail("prophet.p0", "must be in [0,1]");
    if (c.prophet.alpha <= 0 || c.prophet.alpha >= 1) fail("prophet.alpha", "must be in (0,1)");
    if (c.prophet.beta < 0 || c.prophet.beta > 1) fail("prophet.beta", "must be in [0,1]");
    if (c.prophet.time_unit <= 0) fail("prophet.time_unit", "must be positive");
    if (c.prophet.threshold < 0 || c.prophet.threshold > 1)
        fail("prophet.threshold", "must be in [0,1]");
    if (c.integrated.threshold < 0 || c.integrated.threshold > 1)
        fail("integrated.threshold", "must be in [0,1]");
    if (c.integrated.wait_time < 0) fail("integrated.wait_time", "must be non-negative");
    if (c.integrated.max_copies < 0) fail("integrated.max_copies", "must be >= 0");
    for (const auto& [name, r] : c.radios) {
        if (r.range_m <= 0) fail("radio." + name + ".range", "must be positive");
        if (r.bandwidth_bps <= 0) fail("radio." + name + ".bandwidth", "must be positive");
    }
    for (const auto& [name, p] : c.pois) {
        if (p.count < 0) fail("poi." + name + ".count", "must be >= 0");
        if (p.x1 < p.x0 || p.y1 < p.y0) fail("poi." + name + ".rect", "need x0<=x1, y0<=y1");
        if (p.x0 < 0 || p.y0 < 0 || p.x1 > c.world_width || p.y1 > c.world_height)
            fail("poi." + name + ".rect", "rectangle leaves the world");
    }
    for (const auto& [name, g] : c.groups) {
        std::string prefix = "group." + name;
        if (g.count < 0) fail(prefix + ".count", "must be >= 0");
        if (g.speed_min <= 0 || g.speed_min > g.speed_max)
            fail(prefix + ".speed", "need 0 < min <= max");
        if (g.pause_min < 0 || g.pause_min > g.pause_max)
            fail(prefix + ".pause", "need 0 <= min <= max");
        if (g.radios.empty()) fail(prefix + ".radios", "must name at least one radio");
        for (const auto& r : g.radios)
            if (!c.radios.count(r)) fail(prefix + ".radios", "unknown radio '" + r + "'");
        double total = 0.0;
        for (const auto& [pg, p] : g.poi_probs) {
            if (!c.pois.count(pg)) fail(prefix + ".poi", "unknown POI group '" + pg + "'");
            if (p < 0 || p > 1) fail(prefix + ".poi", "probability for '" + pg + "' outside [0,1]");
            total += p;
        }
        if (total > 1.0 + 1e-12) fail(prefix + ".poi", "probabilities sum above 1");
    }
}

inline ScenarioConfig parse_scenario_text(std::istream& in, const std::string& origin) {
    ScenarioConfig c;
    c.radios.clear(); // defaults only when the file names none
    std::string line;
    int lineno = 0;
    bool saw_any = false;
    bool saw_radio = false;
    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_int;
    using detail::parse_range;
    using detail::split;
    using detail::trim;

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ": line " + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        saw_any = true;

        if (key == "world.width") c.world_width = parse_double(val, key, lineno);
        else if (key == "world.height") c.world_height = parse_double(val, key, lineno);
        else if (key == "tick") c.tick = parse_double(val, key, lineno);
        else if (key == "sim_time") c.sim_time = parse_double(val, key, lineno);
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_int(val, key, lineno));
        else if (key == "strategy") c.strategy = val;
        else if (key == "buffer.capacity") c.buffer_capacity = parse_int(val, key, lineno);
        else if (key == "seen_window") c.seen_window = parse_double(val, key, lineno);
        else if (key == "timeseries.interval") c.timeseries_interval = parse_double(val, key, lineno);
        else if (key == "traffic.mean_interval") c.traffic.mean_interval = parse_double(val, key, lineno);
        else if (key == "traffic.size_min") c.traffic.size_min = parse_int(val, key, lineno);
        else if (key == "traffic.size_max") c.traffic.size_max = parse_int(val, key, lineno);
        else if (key == "traffic.hop_limit") c.traffic.hop_limit = static_cast<int>(parse_int(val, key, lineno));
        else if (key == "traffic.ttls") {
            c.traffic.ttls.clear();
            for (const auto& p : split(val, ','))
                c.traffic.ttls.push_back(parse_double(p, key, lineno));
        } else if (key == "prophet.p0") c.prophet.p0 = parse_double(val, key, lineno);
        else if (key == "prophet.alpha") c.prophet.alpha = parse_double(val, key, lineno);
        else if (key == "prophet.beta") c.prophet.beta = parse_double(val, key, lineno);
        else if (key == "prophet.time_unit") c.prophet.time_unit = parse_double(val, key, lineno);
        else if (key == "prophet.threshold") c.prophet.threshold = parse_double(val, key, lineno);
        else if (key == "integrated.threshold") c.integrated.threshold = parse_double(val, key, lineno);
        else if (key == "integrated.wait_time") c.integrated.wait_time = parse_double(val, key, lineno);
        else if (key == "integrated.max_copies") c.integrated.max_copies = static_cast<int>(parse_int(val, key, lineno));
        else if (key.rfind("radio.", 0) == 0) {
            auto parts = split(key, '.');
            if (parts.size() != 3)
                throw ConfigError(origin + ": line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
            saw_radio = true;
            auto& r = c.radios[parts[1]];
            if (parts[2] == "range") r.range_m = parse_double(val, key, lineno);
            else if (parts[2] == "bandwidth") r.bandwidth_bps = parse_double(val, key, lineno);
            else
                throw ConfigError(origin + ": line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
        } else if (key.rfind("poi.", 0) == 0) {
            auto parts = split(key, '.');
            if (parts.size() != 3)
                throw ConfigError(origin + ": line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
            auto& p = c.pois[parts[1]];
            if (parts[2] == "count") p.count = static_cast<int>(parse_int(val, key, lineno));
            else if (parts[2] == "rect") {
                auto nums = split(val, ',');
                if (nums.size() != 4)
                    throw ConfigError(origin + ": line " + std::to_string(lineno) +
                                      ": key '" + key + "': expected x0,y0,x1,y1");
                p.x0 = parse_double(nums[0], key, lineno);
                p.y0 = parse_double(nums[1], key, lineno);
                p.x1 = parse_double(nums[2], key, lineno);
                p.y1 = parse_double(nums[3], key, lineno);
            } else
                throw ConfigError(origin + ": line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
        } else if (key.rfind("group.", 0) == 0) {
            auto parts = split(key, '.');
            if (parts.size() != 3)
                throw ConfigError(origin + ": line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
            auto& g = c.groups[parts[1]];
            if (parts[2] == "count") g.count = static_cast<int>(parse_int(val, key, lineno));
            else if (parts[2] == "speed") std::tie(g.speed_min, g.speed_max) = parse_range(val, key, lineno);
            else if (parts[2] == "pause") std::tie(g.pause_min, g.pause_max) = parse_range(val, key, lineno);
            else if (parts[2] == "radios") g.radios = split(val, ',');
            else if (parts[2] == "generates") g.generates = parse_bool(val, key, lineno);
            else if (parts[2] == "poi") {
                g.poi_probs.clear();
                if (!val.empty()) {
                    for (const auto& entry : split(val, ',')) {
                        auto colon = entry.find(':');
                        if (colon == std::string::npos)
                            throw ConfigError(origin + ": line " + std::to_string(lineno) +
                                              ": key '" + key + "': expected name:prob entries");
                        g.poi_probs.emplace_back(trim(entry.substr(0, colon)),
                                                 parse_double(trim(entry.substr(colon + 1)), key, lineno));
                    }
                }
            } else
                throw ConfigError(origin + ": line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
        } else {
            throw ConfigError(origin + ": line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }

    if (!saw_any)
        throw ConfigError(origin + ": empty scenario; required keys include sim_time, "
                          "strategy, and at least one group.<name>.count");
    if (!saw_radio) {
        c.radios = {{"bluetooth", {10.0, 2e6}}, {"wlan", {30.0, 4.5e6}}};
    }
    validate_scenario(c);
    return c;
}

inline ScenarioConfig parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    return parse_scenario_text(in, path);
}

// Serialization is the inverse of parse_scenario for round-tripping configs.
inline std::string emit_scenario(const ScenarioConfig& c) {
    std::ostringstream out;
    out.precision(17);
    out << "world.width=" << c.world_width << "\n"
        << "world.height=" << c.world_height << "\n"
        << "tick=" << c.tick << "\n"
        << "sim_time=" << c.sim_time << "\n"
        << "seed=" << c.seed << "\n"
        << "strategy=" << c.strategy << "\n"
        << "buffer.capacity=" << c.buffer_capacity << "\n"
        << "seen_window=" << c.seen_window << "\n"
        << "timeseries.interval=" << c.timeseries_interval << "\n"
        << "traffic.mean_interval=" << c.traffic.mean_interval << "\n"
        << "traffic.size_min=" << c.traffic.size_min << "\n"
        << "traffic.size_max=" << c.traffic.size_max << "\n"
        << "traffic.hop_limit=" << c.traffic.hop_limit << "\n";
    out << "traffic.ttls=";
    for (std::size_t i = 0; i < c.traffic.ttls.size(); ++i)
        out << (i ? "," : "") << c.traffic.ttls[i];
    out << "\n";
    out << "prophet.p0=" << c.prophet.p0 << "\n"
        << "prophet.alpha=" << c.prophet.alpha << "\n"
        << "prophet.beta=" << c.prophet.beta << "\n"
        << "prophet.time_unit=" << c.prophet.time_unit << "\n"
        << "prophet.threshold=" << c.prophet.threshold << "\n"
        << "integrated.threshold=" << c.integrated.threshold << "\n"
        << "integrated.wait_time=" << c.integrated.wait_time << "\n"
        << "integrated.max_copies=" << c.integrated.max_copies << "\n";
    for (const auto& [name, r] : c.radios) {
        out << "radio." << name << ".range=" << r.range_m << "\n"
            << "radio." << name << ".bandwidth=" << r.bandwidth_bps << "\n";
    }
    for (const auto& [name, p] : c.pois) {
        out << "poi." << name << ".count=" << p.count << "\n"
            << "poi." << name << ".rect=" << p.x0 << "," << p.y0 << "," << p.x1 << "," << p.y1 << "\n";
    }
    for (const auto& [name, g] : c.groups) {
        out << "group." << name << ".count=" << g.count << "\n"
            << "group." << name << ".speed=" << g.speed_min << "," << g.speed_max << "\n"
            << "group." << name << ".pause=" << g.pause_min << "," << g.pause_max << "\n";
        out << "group." << name << ".radios=";
        for (std::size_t i = 0; i < g.radios.size(); ++i)
            out << (i ? "," : "") << g.radios[i];
        out << "\n";
        out << "group." << name << ".generates=" << (g.generates ? "true" : "false") << "\n";
        if (!g.poi_probs.empty()) {
            out << "group." << name << ".poi=";
            for (std::size_t i = 0; i < g.poi_probs.size(); ++i)
                out << (i ? "," : "") << g.poi_probs[i].first << ":" << g.poi_probs[i].second;
            out << "\n";
        }
    }
    return out.str();
}

} // namespace oppnet
