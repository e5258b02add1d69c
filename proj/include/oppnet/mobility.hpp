#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "oppnet/config.hpp"
#include "oppnet/message.hpp"
#include "oppnet/rng.hpp"

namespace oppnet {

struct Position {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Position&) const = default;
};

inline double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// POI coordinates are drawn at load time from the configured rectangles, in
// deterministic (sorted group name) order.
struct PoiLayout {
    std::map<std::string, std::vector<Position>> points;

    static PoiLayout build(const ScenarioConfig& cfg, Rng& rng) {
        PoiLayout layout;
        for (const auto& [name, pg] : cfg.pois) {
            auto& pts = layout.points[name];
            pts.reserve(static_cast<std::size_t>(pg.count));
            for (int i = 0; i < pg.count; ++i)
                pts.push_back({rng.uniform(pg.x0, pg.x1), rng.uniform(pg.y0, pg.y1)});
        }
        return layout;
    }
};

// Waypoint selection: each POI group wins with its configured probability;
// leftover mass falls through to a uniform random point in the world. With
// all probabilities zero this is plain random-waypoint.
inline Position next_destination(const GroupConfig& group, const PoiLayout& layout,
                                 double world_w, double world_h, Rng& rng) {
    double u = rng.uniform();
    double cum = 0.0;
    for (const auto& [poi_name, prob] : group.poi_probs) {
        cum += prob;
        if (u < cum) {
            const auto& pts = layout.points.at(poi_name);
            if (!pts.empty()) return rng.pick(pts);
            break;
        }
    }
    return {rng.uniform(0.0, world_w), rng.uniform(0.0, world_h)};
}

struct MobilityState {
    Position pos;
    Position dest;
    double speed = 0.0;
    SimTime pause_until = 0.0;
    bool has_leg = false; // a destination + speed are currently active
};

// Advance one tick of waypoint movement: wait out pauses, start a new leg
// when idle, move in a straight line, and pause on arrival.
inline void step_position(MobilityState& st, const GroupConfig& group, const PoiLayout& layout,
                          double world_w, double world_h, SimTime now, double dt, Rng& rng) {
    if (now < st.pause_until) return;
    if (!st.has_leg) {
        st.dest = next_destination(group, layout, world_w, world_h, rng);
        st.speed = rng.uniform(group.speed_min, group.speed_max);
        st.has_leg = true;
    }
    double dx = st.dest.x - st.pos.x;
    double dy = st.dest.y - st.pos.y;
    double dist = std::hypot(dx, dy);
    double step = st.speed * dt;
    if (step >= dist) {
        st.pos = st.dest;
        st.has_leg = false;
        st.pause_until = now + dt + rng.uniform(group.pause_min, group.pause_max);
    } else {
        st.pos.x += dx / dist * step;
        st.pos.y += dy / dist * step;
    }
}

} // namespace oppnet
