#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "oppnet/config.hpp"
#include "oppnet/message.hpp"
#include "oppnet/mobility.hpp"
#include "oppnet/node.hpp"
#include "oppnet/radio.hpp"
#include "oppnet/routing.hpp"
#include "oppnet/rng.hpp"
#include "oppnet/stats.hpp"

namespace oppnet {

struct EventEntry {
    enum Kind { MovementUpdate, ContactCheck, MessageGeneration, TransferComplete, TtlSweep, SimEnd };
    SimTime fire_at = 0.0;
    std::uint64_t seq = 0; // tie-break: insertion order
    Kind kind = MovementUpdate;
    NodeId node = -1;            // MessageGeneration
    std::uint64_t job_token = 0; // TransferComplete
};

// Deterministic min-queue over (fire_at, seq).
class EventQueue {
public:
    void push(SimTime fire_at, EventEntry::Kind kind, NodeId node = -1, std::uint64_t token = 0) {
        heap_.push({fire_at, next_seq_++, kind, node, token});
    }
    bool empty() const { return heap_.empty(); }
    EventEntry pop() {
        EventEntry e = heap_.top();
        heap_.pop();
        return e;
    }

private:
    struct Later {
        bool operator()(const EventEntry& a, const EventEntry& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<EventEntry, std::vector<EventEntry>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

// Traffic model: destination uniform over the other traffic generators, size
// uniform in the configured byte range, lifetime uniform over the configured
// set.
inline Message generate_message(NodeId src, SimTime now, Rng& rng, const TrafficConfig& traffic,
                                const std::vector<NodeId>& generators, MessageId id) {
    Message m;
    m.id = id;
    m.src = src;
    m.created_at = now;
    NodeId dst = src;
    while (dst == src && generators.size() > 1) dst = rng.pick(generators);
    m.dst = dst;
    m.size_bytes = rng.uniform_int(traffic.size_min, traffic.size_max);
    m.ttl = rng.pick(traffic.ttls);
    // hop_limit h caps intermediate nodes at h-1: with h == 1 only direct
    // delivery to the destination is possible.
    m.hops_remaining = traffic.hop_limit == 0 ? kUnlimitedHops : traffic.hop_limit - 1;
    return m;
}

inline std::vector<NodeState> build_population(const ScenarioConfig& cfg, Rng& rng,
                                               const ProphetConfig& pcfg) {
    std::vector<NodeState> nodes;
    nodes.reserve(static_cast<std::size_t>(cfg.total_nodes()));
    NodeId next_id = 0;
    for (const auto& [name, g] : cfg.groups) {
        RadioSet rs;
        for (const auto& rname : g.radios) rs.radios.emplace_back(rname, cfg.radios.at(rname));
        std::sort(rs.radios.begin(), rs.radios.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (int i = 0; i < g.count; ++i) {
            NodeState n;
            n.id = next_id++;
            n.group_name = name;
            n.group = &g;
            n.radios = rs;
            n.generates = g.generates;
            n.mob.pos = {rng.uniform(0.0, cfg.world_width), rng.uniform(0.0, cfg.world_height)};
            n.table = PredictabilityTable(n.id, pcfg);
            nodes.push_back(std::move(n));
        }
    }
    return nodes;
}

class Simulation {
public:
    explicit Simulation(ScenarioConfig cfg)
        : cfg_(std::move(cfg)),
          rng_layout_(cfg_.seed * 0x9E3779B97F4A7C15ULL + 1),
          rng_mobility_(cfg_.seed * 0x9E3779B97F4A7C15ULL + 2),
          rng_traffic_(cfg_.seed * 0x9E3779B97F4A7C15ULL + 3) {
        validate_scenario(cfg_);
        layout_ = PoiLayout::build(cfg_, rng_layout_);
        nodes_ = build_population(cfg_, rng_mobility_, cfg_.prophet);
        strategy_ = make_strategy(cfg_);
        for (const auto& n : nodes_)
            if (n.generates) generators_.push_back(n.id);
    }

    // Test hook: positions come from the script instead of the waypoint
    // model. The script is consulted every movement tick.
    void set_position_script(std::function<Position(NodeId, SimTime)> fn) {
        position_script_ = std::move(fn);
    }

    // Test hook: place a message at its source before the run starts.
    void inject_message(const Message& m) {
        NodeState& src = nodes_.at(static_cast<std::size_t>(m.src));
        stats_.created();
        src.admit(make_copy(m, m.created_at, 0), cfg_.buffer_capacity, m.created_at, stats_);
    }

    std::vector<NodeState>& nodes() { return nodes_; }
    const ScenarioConfig& config() const { return cfg_; }
    const std::vector<TimeseriesSample>& timeseries() const { return timeseries_; }

    StatsReport run() {
        queue_.push(cfg_.sim_time, EventEntry::SimEnd);
        if (!nodes_.empty()) schedule_tick(0.0);
        for (NodeId g : generators_)
            queue_.push(rng_traffic_.exponential(cfg_.traffic.mean_interval),
                        EventEntry::MessageGeneration, g);

        SimTime now = 0.0;
        while (!queue_.empty()) {
            EventEntry e = queue_.pop();
            assert(e.fire_at >= now);
            now = e.fire_at;
            if (e.kind == EventEntry::SimEnd) break;
            switch (e.kind) {
            case EventEntry::MovementUpdate: handle_movement(now); break;
            case EventEntry::ContactCheck: handle_contacts(now); break;
            case EventEntry::TtlSweep: handle_ttl_sweep(now); break;
            case EventEntry::MessageGeneration: handle_generation(e.node, now); break;
            case EventEntry::TransferComplete: handle_transfer_complete(e.job_token, now); break;
            case EventEntry::SimEnd: break;
            }
        }

        // close open buffer occupancies at the horizon
        std::int64_t in_flight = 0;
        for (const auto& [key, s] : contacts_) {
            if (s.ab.inflight) ++in_flight;
            if (s.ba.inflight) ++in_flight;
        }
        for (const auto& n : nodes_)
            for (const auto& c : n.buffer) stats_.buffered(cfg_.sim_time - c.received_at);
        return stats_.finalize(cfg_.sim_time, in_flight);
    }

private:
    struct InFlight {
        BufferedCopy copy; // sender-side snapshot at transfer start
        bool broadcast = false;
        SimTime completes_at = 0.0;
        std::uint64_t token = 0;
    };
    struct LinkDir {
        std::deque<SendIntent> pending;
        std::set<MessageId> offered; // pending, in flight, or completed on this contact
        std::optional<InFlight> inflight;
    };
    struct ContactSession {
        SimTime up_since = 0.0;
        const RadioConfig* link = nullptr;
        bool exchanging = false;
        LinkDir ab, ba; // ab: lower id -> higher id
    };
    using PairKey = std::pair<NodeId, NodeId>;

    BufferedCopy make_copy(const Message& m, SimTime received_at, int hops_taken) const {
        BufferedCopy c;
        c.msg = m;
        c.received_at = received_at;
        c.hops_taken = hops_taken;
        c.copies_left = cfg_.integrated.max_copies;
        c.wait_deadline = received_at + cfg_.integrated.wait_time;
        return c;
    }

    void schedule_tick(SimTime t) {
        queue_.push(t, EventEntry::MovementUpdate);
        queue_.push(t, EventEntry::ContactCheck);
        queue_.push(t, EventEntry::TtlSweep);
    }

    void handle_movement(SimTime now) {
        for (auto& n : nodes_) {
            if (position_script_) {
                n.mob.pos = position_script_(n.id, now);
            } else {
                step_position(n.mob, *n.group, layout_, cfg_.world_width, cfg_.world_height, now,
                              cfg_.tick, rng_mobility_);
            }
        }
        while (now >= next_sample_) {
            timeseries_.push_back({next_sample_, stats_.created_count(), stats_.delivered_count(),
                                   stats_.created_count() == 0
                                       ? 0.0
                                       : static_cast<double>(stats_.delivered_count()) /
                                             static_cast<double>(stats_.created_count()),
                                   stats_.mean_latency(), stats_.mean_delay_ratio()});
            next_sample_ += cfg_.timeseries_interval;
        }
        if (now + cfg_.tick <= cfg_.sim_time) schedule_tick(now + cfg_.tick);
    }

    void handle_contacts(SimTime now) {
        // phase 1: link up/down deltas
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
                NodeState& a = nodes_[i];
                NodeState& b = nodes_[j];
                double d = distance(a.mob.pos, b.mob.pos);
                const RadioConfig* link = best_shared_link(a.radios, b.radios, d);
                PairKey key{a.id, b.id};
                auto it = contacts_.find(key);
                if (link && it == contacts_.end()) {
                    ContactSession s;
                    s.up_since = now;
                    s.link = link;
                    s.exchanging = strategy_->on_contact_up(a, b, now);
                    contacts_.emplace(key, std::move(s));
                } else if (link && it != contacts_.end()) {
                    it->second.link = link;
                } else if (!link && it != contacts_.end()) {
                    tear_down(it->second);
                    contacts_.erase(it);
                }
            }
        }

        // phase 2: routing decisions per node over its exchanging neighbors
        std::map<NodeId, std::vector<NodeState*>> neighbors;
        for (auto& [key, s] : contacts_) {
            if (!s.exchanging) continue;
            neighbors[key.first].push_back(&nodes_[static_cast<std::size_t>(key.second)]);
            neighbors[key.second].push_back(&nodes_[static_cast<std::size_t>(key.first)]);
        }
        std::vector<std::vector<SendIntent>> sends;
        for (auto& [nid, peers] : neighbors) {
            // map iteration gives peers sorted by the *other* key half; sort by id
            std::sort(peers.begin(), peers.end(),
                      [](const NodeState* x, const NodeState* y) { return x->id < y->id; });
            NodeState& self = nodes_[static_cast<std::size_t>(nid)];
            CoveredFn covered = [&](MessageId mid, NodeId peer) {
                if (nodes_[static_cast<std::size_t>(peer)].has_message(mid)) return true;
                const LinkDir& dir = link_dir(self.id, peer);
                return dir.offered.count(mid) != 0;
            };
            strategy_->collect_sends(self, peers, now, covered, sends);
            for (std::size_t p = 0; p < peers.size(); ++p) {
                PairKey key{std::min(nid, peers[p]->id), std::max(nid, peers[p]->id)};
                ContactSession& sess = contacts_.at(key);
                LinkDir& dir = nid < peers[p]->id ? sess.ab : sess.ba;
                for (const SendIntent& intent : sends[p]) {
                    if (!dir.offered.insert(intent.id).second) continue;
                    // keep the queue ordered by rank, FIFO within a rank
                    auto pos = std::upper_bound(
                        dir.pending.begin(), dir.pending.end(), intent,
                        [](const SendIntent& a, const SendIntent& b) {
                            return a.priority > b.priority;
                        });
                    dir.pending.insert(pos, intent);
                }
            }
        }

        // phase 3: start transfers on idle directed links
        for (auto& [key, s] : contacts_) {
            start_next(key.first, key.second, s, s.ab, now);
            start_next(key.second, key.first, s, s.ba, now);
        }
    }

    LinkDir& link_dir(NodeId from, NodeId to) {
        PairKey key{std::min(from, to), std::max(from, to)};
        ContactSession& s = contacts_.at(key);
        return from < to ? s.ab : s.ba;
    }

    void start_next(NodeId from, NodeId to, ContactSession& s, LinkDir& dir, SimTime now) {
        if (dir.inflight) return;
        NodeState& sender = nodes_[static_cast<std::size_t>(from)];
        NodeState& receiver = nodes_[static_cast<std::size_t>(to)];
        while (!dir.pending.empty()) {
            SendIntent intent = dir.pending.front();
            dir.pending.pop_front();
            const BufferedCopy* copy = sender.find_copy(intent.id);
            if (!copy || copy->msg.expired(now) || receiver.has_message(intent.id)) continue;
            InFlight f;
            f.copy = *copy;
            f.broadcast = intent.broadcast;
            f.completes_at = now + transfer_time(copy->msg.size_bytes, s.link->bandwidth_bps);
            f.token = next_token_++;
            inflight_index_[f.token] = {from, to};
            dir.inflight = f;
            stats_.started();
            queue_.push(f.completes_at, EventEntry::TransferComplete, -1, f.token);
            return;
        }
    }

    void tear_down(ContactSession& s) {
        for (LinkDir* dir : {&s.ab, &s.ba}) {
            if (dir->inflight) {
                stats_.aborted();
                inflight_index_.erase(dir->inflight->token);
                dir->inflight.reset();
            }
            dir->pending.clear();
            dir->offered.clear();
        }
    }

    void handle_transfer_complete(std::uint64_t token, SimTime now) {
        auto idx = inflight_index_.find(token);
        if (idx == inflight_index_.end()) return; // aborted earlier
        auto [from, to] = idx->second;
        inflight_index_.erase(idx);
        PairKey key{std::min(from, to), std::max(from, to)};
        ContactSession& s = contacts_.at(key);
        LinkDir& dir = from < to ? s.ab : s.ba;
        InFlight f = *dir.inflight;
        dir.inflight.reset();

        stats_.relayed();
        NodeState& receiver = nodes_[static_cast<std::size_t>(to)];
        BufferedCopy arrived = make_copy(f.copy.msg, now, f.copy.hops_taken + 1);
        if (receiver.id != arrived.msg.dst && arrived.msg.hops_remaining != kUnlimitedHops)
            --arrived.msg.hops_remaining;

        if (arrived.msg.expired(now)) {
            stats_.dropped();
        } else if (receiver.id == arrived.msg.dst) {
            stats_.delivered(arrived.msg.id, now - arrived.msg.created_at, arrived.hops_taken,
                             arrived.msg.ttl);
            receiver.admit(arrived, cfg_.buffer_capacity, now, stats_);
        } else if (strategy_->accept_on_arrival(receiver, arrived.msg, f.broadcast, now)) {
            receiver.admit(arrived, cfg_.buffer_capacity, now, stats_);
        } else {
            stats_.dropped(); // threshold discard at the receiver
        }

        start_next(from, to, s, dir, now);
    }

    void handle_ttl_sweep(SimTime now) {
        for (auto& n : nodes_) expire_messages(n, now, stats_);
    }

    void handle_generation(NodeId nid, SimTime now) {
        if (now <= cfg_.sim_time) {
            Message m = generate_message(nid, now, rng_traffic_, cfg_.traffic, generators_,
                                         next_message_id_++);
            stats_.created();
            nodes_[static_cast<std::size_t>(nid)].admit(make_copy(m, now, 0), cfg_.buffer_capacity,
                                                        now, stats_);
            queue_.push(now + rng_traffic_.exponential(cfg_.traffic.mean_interval),
                        EventEntry::MessageGeneration, nid);
        }
    }

    ScenarioConfig cfg_;
    Rng rng_layout_;
    Rng rng_mobility_;
    Rng rng_traffic_;
    PoiLayout layout_;
    std::vector<NodeState> nodes_;
    std::vector<NodeId> generators_;
    std::unique_ptr<RoutingStrategy> strategy_;
    std::function<Position(NodeId, SimTime)> position_script_;
    EventQueue queue_;
    StatsCollector stats_;
    std::map<PairKey, ContactSession> contacts_;
    std::map<std::uint64_t, PairKey> inflight_index_;
    std::uint64_t next_token_ = 1;
    MessageId next_message_id_ = 1;
    std::vector<TimeseriesSample> timeseries_;
    SimTime next_sample_ = 0.0;
};

// Convenience driver: one full deterministic run.
inline StatsReport run_scenario(const ScenarioConfig& cfg) {
    Simulation sim(cfg);
    return sim.run();
}

} // namespace oppnet
