#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oppnet/config.hpp"

namespace oppnet {

inline double transfer_time(std::int64_t size_bytes, double bandwidth_bps) {
    return static_cast<double>(size_bytes) * 8.0 / bandwidth_bps;
}

// A node's radio set, resolved from config names at population build time.
struct RadioSet {
    std::vector<std::pair<std::string, RadioConfig>> radios; // sorted by name
};

// Link selection: among radios both endpoints carry whose range covers the
// distance, take the highest bandwidth. Returns nullptr when no shared radio
// reaches.
inline const RadioConfig* best_shared_link(const RadioSet& a, const RadioSet& b, double dist) {
    const RadioConfig* best = nullptr;
    for (const auto& [name_a, ra] : a.radios) {
        if (dist > ra.range_m) continue;
        for (const auto& [name_b, rb] : b.radios) {
            if (name_a != name_b) continue;
            if (!best || ra.bandwidth_bps > best->bandwidth_bps) best = &ra;
        }
    }
    return best;
}

} // namespace oppnet
