#pragma once

#include <cmath>
#include <map>

#include "oppnet/config.hpp"
#include "oppnet/message.hpp"

namespace oppnet {

// One row of a delivery-predictability matrix: the subject node's estimated
// probabilities of delivering to each destination, stamped with the time of
// the subject's last encounter-driven update.
struct PredRow {
    std::map<NodeId, double> probs;
    SimTime updated_at = 0.0;
};

// Per-node delivery predictability state. The owner's own row is the working
// metric; rows learned from peers are kept for matrix merging.
class PredictabilityTable {
public:
    PredictabilityTable() = default;
    PredictabilityTable(NodeId owner, const ProphetConfig& cfg)
        : owner_(owner), p0_(cfg.p0), alpha_(cfg.alpha), beta_(cfg.beta),
          time_unit_(cfg.time_unit) {}

    NodeId owner() const { return owner_; }

    double get(NodeId dst) const {
        const auto& row = rows_.find(owner_);
        if (row == rows_.end()) return 0.0;
        auto it = row->second.probs.find(dst);
        return it == row->second.probs.end() ? 0.0 : it->second;
    }

    const PredRow* row(NodeId subject) const {
        auto it = rows_.find(subject);
        return it == rows_.end() ? nullptr : &it->second;
    }

    const std::map<NodeId, PredRow>& rows() const { return rows_; }

    // Aging: every P in the own row decays by alpha^k where k is the whole
    // number of time units elapsed since aging last ran. The fractional
    // remainder carries over, so aging in several steps equals aging once.
    void age(SimTime now) {
        if (now <= last_aged_) return;
        double k = std::floor((now - last_aged_) / time_unit_);
        if (k < 1) return;
        double factor = std::pow(alpha_, k);
        auto& row = rows_[owner_];
        for (auto& [dst, p] : row.probs) p *= factor;
        last_aged_ += k * time_unit_;
    }

    // Encounter update: P <- P + (1 - P) * P0.
    void update_direct(NodeId peer, SimTime now) {
        auto& row = rows_[owner_];
        double& p = row.probs[peer];
        p = p + (1.0 - p) * p0_;
        row.updated_at = now;
    }

    // Transitivity: P_xz <- P_xz + (1 - P_xz) * P_xy * P_yz * beta, using the
    // already-updated direct probability for the peer.
    void update_transitive(const std::map<NodeId, double>& peer_probs, NodeId peer) {
        double p_xy = get(peer);
        if (p_xy == 0.0) return;
        auto& row = rows_[owner_];
        for (const auto& [dst, p_yz] : peer_probs) {
            if (dst == owner_ || dst == peer) continue;
            double& p_xz = row.probs[dst];
            p_xz = p_xz + (1.0 - p_xz) * p_xy * p_yz * beta_;
        }
    }

    // Matrix merge: adopt the peer's copy of any row with a strictly newer
    // timestamp (ties keep the local row). The own row is never replaced.
    void merge(const PredictabilityTable& peer_table) {
        for (const auto& [subject, peer_row] : peer_table.rows_) {
            if (subject == owner_) continue;
            auto it = rows_.find(subject);
            if (it == rows_.end() || peer_row.updated_at > it->second.updated_at)
                rows_[subject] = peer_row;
        }
    }

    // Test hook: set aging origin without touching probabilities.
    void set_last_aged(SimTime t) { last_aged_ = t; }
    SimTime last_aged() const { return last_aged_; }

private:
    NodeId owner_ = -1;
    double p0_ = 0.75;
    double alpha_ = 0.98;
    double beta_ = 0.25;
    double time_unit_ = 30.0;
    SimTime last_aged_ = 0.0;
    std::map<NodeId, PredRow> rows_;
};

} // namespace oppnet
