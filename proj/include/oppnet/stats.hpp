#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "oppnet/message.hpp"

namespace oppnet {

// The message-stats record produced at the end of a run.
struct StatsReport {
    double sim_time = 0.0;
    std::int64_t created = 0;
    std::int64_t started = 0;
    std::int64_t relayed = 0;
    std::int64_t aborted = 0;
    std::int64_t dropped = 0;
    std::int64_t delivered = 0;
    std::int64_t in_flight = 0; // transfers still running at sim end
    double delivery_prob = 0.0;
    double delay_prob = 0.0; // mean delivered latency / ttl
    double hopcount_avg = 0.0;
    double buffertime_avg = 0.0;
    double latency_avg = 0.0; // raw mean delivery latency, seconds
    bool no_deliveries = false; // derived ratios reported as 0 because nothing was delivered
    bool accounting_ok = false;

    bool operator==(const StatsReport&) const = default;
};

struct StatsEvent {
    enum Kind { Created, Started, Relayed, Aborted, Dropped, Delivered, Buffered };
    Kind kind;
    MessageId id = 0;
    double latency = 0.0;  // Delivered
    double ttl = 0.0;      // Delivered
    int hops = 0;          // Delivered
    double duration = 0.0; // Buffered
};

// Single-writer counter sink. A message id counts as delivered at most once;
// later copies reaching the destination still count as relays.
class StatsCollector {
public:
    void record(const StatsEvent& e) {
        switch (e.kind) {
        case StatsEvent::Created: ++created_; break;
        case StatsEvent::Started: ++started_; break;
        case StatsEvent::Relayed: ++relayed_; break;
        case StatsEvent::Aborted: ++aborted_; break;
        case StatsEvent::Dropped: ++dropped_; break;
        case StatsEvent::Delivered:
            if (delivered_ids_.insert(e.id).second) {
                latency_sum_ += e.latency;
                delay_ratio_sum_ += e.latency / e.ttl;
                hops_sum_ += e.hops;
            }
            break;
        case StatsEvent::Buffered:
            buffer_time_sum_ += e.duration;
            ++buffer_spans_;
            break;
        }
    }

    void created() { record({StatsEvent::Created}); }
    void started() { record({StatsEvent::Started}); }
    void relayed() { record({StatsEvent::Relayed}); }
    void aborted() { record({StatsEvent::Aborted}); }
    void dropped() { record({StatsEvent::Dropped}); }
    // returns true on the first delivery of this id
    bool delivered(MessageId id, double latency, int hops, double ttl) {
        bool first = !delivered_ids_.count(id);
        record({StatsEvent::Delivered, id, latency, ttl, hops});
        return first;
    }
    void buffered(double duration) { record({StatsEvent::Buffered, 0, 0, 0, 0, duration}); }

    bool is_delivered(MessageId id) const { return delivered_ids_.count(id) != 0; }
    std::int64_t created_count() const { return created_; }
    std::int64_t delivered_count() const { return static_cast<std::int64_t>(delivered_ids_.size()); }
    double mean_latency() const {
        return delivered_ids_.empty() ? 0.0 : latency_sum_ / static_cast<double>(delivered_ids_.size());
    }
    double mean_delay_ratio() const {
        return delivered_ids_.empty() ? 0.0 : delay_ratio_sum_ / static_cast<double>(delivered_ids_.size());
    }

    StatsReport finalize(SimTime now, std::int64_t in_flight) const {
        StatsReport r;
        r.sim_time = now;
        r.created = created_;
        r.started = started_;
        r.relayed = relayed_;
        r.aborted = aborted_;
        r.dropped = dropped_;
        r.delivered = delivered_count();
        r.in_flight = in_flight;
        r.no_deliveries = delivered_ids_.empty() || created_ == 0;
        double nd = static_cast<double>(delivered_ids_.size());
        r.delivery_prob = created_ == 0 ? 0.0 : nd / static_cast<double>(created_);
        r.delay_prob = r.no_deliveries ? 0.0 : delay_ratio_sum_ / nd;
        r.hopcount_avg = r.no_deliveries ? 0.0 : static_cast<double>(hops_sum_) / nd;
        r.latency_avg = r.no_deliveries ? 0.0 : latency_sum_ / nd;
        r.buffertime_avg = buffer_spans_ == 0 ? 0.0 : buffer_time_sum_ / static_cast<double>(buffer_spans_);
        r.accounting_ok = r.started == r.relayed + r.aborted + r.in_flight &&
                          r.delivered <= r.created &&
                          r.delivery_prob >= 0.0 && r.delivery_prob <= 1.0;
        return r;
    }

private:
    std::int64_t created_ = 0;
    std::int64_t started_ = 0;
    std::int64_t relayed_ = 0;
    std::int64_t aborted_ = 0;
    std::int64_t dropped_ = 0;
    std::set<MessageId> delivered_ids_;
    double latency_sum_ = 0.0;
    double delay_ratio_sum_ = 0.0;
    std::int64_t hops_sum_ = 0;
    double buffer_time_sum_ = 0.0;
    std::int64_t buffer_spans_ = 0;
};

struct TimeseriesSample {
    SimTime t = 0.0;
    std::int64_t created = 0;
    std::int64_t delivered = 0;
    double delivery_prob = 0.0;
    double latency_avg = 0.0;
    double delay_prob = 0.0;
};

} // namespace oppnet
