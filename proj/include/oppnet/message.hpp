#pragma once

#include <cstdint>
#include <limits>

namespace oppnet {

using NodeId = int;
using MessageId = std::uint32_t;
using SimTime = double; // seconds since simulation start

inline constexpr int kUnlimitedHops = std::numeric_limits<int>::max();

struct Message {
    MessageId id = 0;
    NodeId src = -1;
    NodeId dst = -1;
    std::int64_t size_bytes = 0;
    SimTime created_at = 0.0;
    double ttl = 0.0; // seconds
    int hops_remaining = kUnlimitedHops;

    // Expiry is strict: a message created at t with lifetime L is still alive
    // at exactly t + L.
    bool expired(SimTime now) const { return now > created_at + ttl; }
};

} // namespace oppnet
