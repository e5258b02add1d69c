#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "oppnet/config.hpp"
#include "oppnet/node.hpp"

namespace oppnet {

enum class ForwardDecision { Deliver, Forward, Hold, Discard, Broadcast };

// PROPHET forwarding rule: hand a copy over when the peer is the
// destination, or when the peer's delivery predictability is strictly higher
// (and clears the optional threshold). Ties hold.
inline ForwardDecision prophet_decide(bool peer_is_dst, double p_self, double p_peer,
                                      double threshold = 0.0) {
    if (peer_is_dst) return ForwardDecision::Deliver;
    if (p_peer > p_self && p_peer >= threshold) return ForwardDecision::Forward;
    return ForwardDecision::Hold;
}

// Integrated rule: PROPHET-style thresholded forwarding under a copy budget,
// with a timed flooding fallback once no current neighbor knows the
// destination at all.
inline ForwardDecision integrated_decide(bool peer_is_dst, double p_self, double p_peer,
                                         double threshold, int budget, bool past_deadline,
                                         bool neighbors_all_unknown) {
    if (peer_is_dst) return ForwardDecision::Deliver;
    if (budget > 0 && p_peer > p_self && p_peer >= threshold) return ForwardDecision::Forward;
    if (budget > 0 && past_deadline && neighbors_all_unknown) return ForwardDecision::Broadcast;
    return ForwardDecision::Hold;
}

struct SendIntent {
    MessageId id;
    bool broadcast = false;
    bool deliver = false; // peer is the destination
    // Transmission-queue rank on the directed link; higher goes first, equal
    // ranks keep FIFO order. Deliverable copies outrank everything (2.0),
    // flooding-fallback copies come next (1.0), and the predictability-based
    // strategies rank relay traffic by the peer's delivery predictability so
    // the best-placed copies cross first. Epidemic sends everything at rank 0
    // in discovery order.
    double priority = 0.0;
};

// already_covered(msg, peer) == the peer holds the message or it is already
// queued/in flight on the link toward the peer.
using CoveredFn = std::function<bool(MessageId, NodeId)>;

class RoutingStrategy {
public:
    virtual ~RoutingStrategy() = default;

    // Called once when a contact comes up. Returns whether messages should be
    // exchanged over this contact (false when the recently-seen window
    // suppresses it).
    virtual bool on_contact_up(NodeState& a, NodeState& b, SimTime now) = 0;

    // Per tick: which messages `self` wants to push to each exchanging
    // neighbor. `out` has one slot per peer, in peer order.
    virtual void collect_sends(NodeState& self, const std::vector<NodeState*>& peers, SimTime now,
                               const CoveredFn& covered,
                               std::vector<std::vector<SendIntent>>& out) = 0;

    // Receiver-side admission hook (non-destination arrivals only).
    virtual bool accept_on_arrival(NodeState&, const Message&, bool /*broadcast*/, SimTime) {
        return true;
    }

protected:
    // Recently-seen suppression: no exchange with a peer seen within the
    // window; the timestamp is refreshed only when an exchange actually runs.
    static bool check_and_stamp_seen(NodeState& a, NodeState& b, SimTime now, double window) {
        if (window > 0) {
            auto it = a.recently_seen.find(b.id);
            if (it != a.recently_seen.end() && now - it->second < window) return false;
        }
        a.recently_seen[b.id] = now;
        b.recently_seen[a.id] = now;
        return true;
    }

    // Hop budget: a copy with no hops left moves only to its destination.
    static bool hop_rule_allows(const BufferedCopy& c, NodeId peer) {
        return c.msg.hops_remaining > 0 || peer == c.msg.dst;
    }
};

class EpidemicStrategy : public RoutingStrategy {
public:
    explicit EpidemicStrategy(const ScenarioConfig& cfg) : window_(cfg.seen_window) {}

    bool on_contact_up(NodeState& a, NodeState& b, SimTime now) override {
        return check_and_stamp_seen(a, b, now, window_);
    }

    void collect_sends(NodeState& self, const std::vector<NodeState*>& peers, SimTime now,
                       const CoveredFn& covered,
                       std::vector<std::vector<SendIntent>>& out) override {
        out.assign(peers.size(), {});
        for (const auto& copy : self.buffer) {
            if (copy.msg.expired(now)) continue;
            for (std::size_t i = 0; i < peers.size(); ++i) {
                if (!hop_rule_allows(copy, peers[i]->id)) continue;
                if (covered(copy.msg.id, peers[i]->id)) continue;
                bool deliver = peers[i]->id == copy.msg.dst;
                out[i].push_back({copy.msg.id, false, deliver, 0.0});
            }
        }
    }

private:
    double window_;
};

class ProphetStrategy : public RoutingStrategy {
public:
    explicit ProphetStrategy(const ScenarioConfig& cfg)
        : window_(cfg.seen_window), threshold_(cfg.prophet.threshold) {}

    bool on_contact_up(NodeState& a, NodeState& b, SimTime now) override {
        predictability_handshake(a, b, now);
        return check_and_stamp_seen(a, b, now, window_);
    }

    void collect_sends(NodeState& self, const std::vector<NodeState*>& peers, SimTime now,
                       const CoveredFn& covered,
                       std::vector<std::vector<SendIntent>>& out) override {
        out.assign(peers.size(), {});
        self.table.age(now);
        for (auto* p : peers) p->table.age(now);
        for (const auto& copy : self.buffer) {
            if (copy.msg.expired(now)) continue;
            NodeId dst = copy.msg.dst;
            double p_self = self.table.get(dst);
            for (std::size_t i = 0; i < peers.size(); ++i) {
                if (!hop_rule_allows(copy, peers[i]->id)) continue;
                if (covered(copy.msg.id, peers[i]->id)) continue;
                double p_peer = peers[i]->table.get(dst);
                auto d = prophet_decide(peers[i]->id == dst, p_self, p_peer, threshold_);
                if (d == ForwardDecision::Deliver) {
                    // the destination is in range: queue only the delivery
                    out[i].push_back({copy.msg.id, false, true, 2.0});
                    break;
                }
                if (d == ForwardDecision::Forward)
                    out[i].push_back({copy.msg.id, false, false, p_peer});
            }
        }
    }

protected:
    // Per-encounter order: age both tables, direct updates, then transitive
    // updates from the other side's freshly updated row.
    static void predictability_handshake(NodeState& a, NodeState& b, SimTime now) {
        a.table.age(now);
        b.table.age(now);
        a.table.update_direct(b.id, now);
        b.table.update_direct(a.id, now);
        auto row_a = a.table.row(a.id)->probs;
        auto row_b = b.table.row(b.id)->probs;
        a.table.update_transitive(row_b, b.id);
        b.table.update_transitive(row_a, a.id);
    }

    double window_;
    double threshold_;
};

class IntegratedStrategy : public ProphetStrategy {
public:
    explicit IntegratedStrategy(const ScenarioConfig& cfg)
        : ProphetStrategy(cfg), icfg_(cfg.integrated) {}

    bool on_contact_up(NodeState& a, NodeState& b, SimTime now) override {
        predictability_handshake(a, b, now);
        a.table.merge(b.table);
        b.table.merge(a.table);
        return check_and_stamp_seen(a, b, now, window_);
    }

    void collect_sends(NodeState& self, const std::vector<NodeState*>& peers, SimTime now,
                       const CoveredFn& covered,
                       std::vector<std::vector<SendIntent>>& out) override {
        out.assign(peers.size(), {});
        self.table.age(now);
        for (auto* p : peers) p->table.age(now);
        for (auto& copy : self.buffer) {
            if (copy.msg.expired(now)) continue;
            NodeId dst = copy.msg.dst;
            double p_self = self.table.get(dst);
            // A neighbor "knows" the destination only when its predictability
            // is usable, i.e. nonzero and above the acceptance threshold.
            // Requiring exactly zero would disarm the fallback forever once
            // aging leaves a residue.
            bool all_unknown = true;
            for (auto* p : peers) {
                double pk = p->table.get(dst);
                if (pk != 0.0 && pk >= icfg_.threshold) { all_unknown = false; break; }
            }
            bool past_deadline = now > copy.wait_deadline;
            bool delivered_intent = false;
            for (std::size_t i = 0; i < peers.size() && !delivered_intent; ++i) {
                if (!hop_rule_allows(copy, peers[i]->id)) continue;
                if (covered(copy.msg.id, peers[i]->id)) continue;
                double p_peer = peers[i]->table.get(dst);
                auto d = integrated_decide(peers[i]->id == dst, p_self, p_peer, icfg_.threshold,
                                           copy.copies_left, past_deadline, all_unknown);
                switch (d) {
                case ForwardDecision::Deliver:
                    // the destination is in range: queue only the delivery
                    out[i].push_back({copy.msg.id, false, true, 2.0});
                    delivered_intent = true;
                    break;
                case ForwardDecision::Forward:
                    // each spread copy, directed or broadcast, spends budget
                    out[i].push_back({copy.msg.id, false, false, p_peer});
                    --copy.copies_left;
                    break;
                case ForwardDecision::Broadcast:
                    out[i].push_back({copy.msg.id, true, false, 1.0});
                    --copy.copies_left;
                    break;
                default:
                    break;
                }
            }
        }
    }

    // Threshold acceptance: a non-destination receiver keeps a forwarded copy
    // only if its own predictability for the destination clears the
    // threshold. This applies to flooding-fallback copies too; with the
    // default threshold they survive only where some context already exists,
    // or everywhere when the threshold is zero.
    bool accept_on_arrival(NodeState& recv, const Message& msg, bool /*broadcast*/, SimTime now) override {
        recv.table.age(now);
        return recv.table.get(msg.dst) >= icfg_.threshold;
    }

private:
    IntegratedConfig icfg_;
};

inline std::unique_ptr<RoutingStrategy> make_strategy(const ScenarioConfig& cfg) {
    if (cfg.strategy == "epidemic") return std::make_unique<EpidemicStrategy>(cfg);
    if (cfg.strategy == "prophet") return std::make_unique<ProphetStrategy>(cfg);
    return std::make_unique<IntegratedStrategy>(cfg);
}

} // namespace oppnet
