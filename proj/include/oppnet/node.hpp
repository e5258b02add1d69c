#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oppnet/config.hpp"
#include "oppnet/message.hpp"
#include "oppnet/mobility.hpp"
#include "oppnet/prophet.hpp"
#include "oppnet/radio.hpp"
#include "oppnet/stats.hpp"

namespace oppnet {

// One buffered copy of a message, with the receive-side bookkeeping the
// routing strategies need.
struct BufferedCopy {
    Message msg;
    SimTime received_at = 0.0;
    int hops_taken = 0;        // completed transfers this copy has been through
    int copies_left = 0;       // integrated: how many more copies this node may spread
    SimTime wait_deadline = 0; // integrated: when the broadcast fallback arms
};

struct NodeState {
    NodeId id = -1;
    std::string group_name;
    const GroupConfig* group = nullptr;
    RadioSet radios;
    bool generates = true;
    MobilityState mob;

    std::vector<BufferedCopy> buffer; // kept in received order
    std::int64_t buffer_used = 0;
    std::map<NodeId, SimTime> recently_seen;
    PredictabilityTable table;

    bool has_message(MessageId id_) const {
        return std::any_of(buffer.begin(), buffer.end(),
                           [&](const BufferedCopy& c) { return c.msg.id == id_; });
    }

    BufferedCopy* find_copy(MessageId id_) {
        for (auto& c : buffer)
            if (c.msg.id == id_) return &c;
        return nullptr;
    }

    void remove_copy_at(std::size_t i, SimTime now, StatsCollector& stats, bool count_dropped) {
        stats.buffered(now - buffer[i].received_at);
        if (count_dropped) stats.dropped();
        buffer_used -= buffer[i].msg.size_bytes;
        buffer.erase(buffer.begin() + static_cast<std::ptrdiff_t>(i));
    }

    // Bounded-buffer admission. Duplicates are rejected silently; oversize
    // messages are rejected and counted dropped; otherwise the oldest
    // relayed copies (own originals last) are evicted until the new copy
    // fits.
    bool admit(const BufferedCopy& copy, std::int64_t capacity, SimTime now, StatsCollector& stats) {
        if (has_message(copy.msg.id)) return false;
        if (copy.msg.size_bytes > capacity) {
            stats.dropped();
            return false;
        }
        while (buffer_used + copy.msg.size_bytes > capacity) {
            std::size_t victim = buffer.size();
            for (std::size_t i = 0; i < buffer.size(); ++i) {
                if (buffer[i].msg.src != id) { victim = i; break; }
            }
            if (victim == buffer.size()) victim = 0; // only own originals left
            remove_copy_at(victim, now, stats, true);
        }
        buffer.push_back(copy);
        buffer_used += copy.msg.size_bytes;
        return true;
    }
};

// TTL sweep: drop every buffered copy whose lifetime has passed (strictly).
inline std::vector<MessageId> expire_messages(NodeState& node, SimTime now, StatsCollector& stats) {
    std::vector<MessageId> dropped;
    for (std::size_t i = node.buffer.size(); i-- > 0;) {
        if (node.buffer[i].msg.expired(now)) {
            dropped.push_back(node.buffer[i].msg.id);
            node.remove_copy_at(i, now, stats, true);
        }
    }
    std::reverse(dropped.begin(), dropped.end());
    return dropped;
}

} // namespace oppnet
