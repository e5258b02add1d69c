#include "catch_amalgamated.hpp"

#include "oppnet/mobility.hpp"

using namespace oppnet;

TEST_CASE("distance is Euclidean") {
    CHECK(distance({0, 0}, {3, 4}) == 5.0);
    CHECK(distance({1, 1}, {1, 1}) == 0.0);
}

TEST_CASE("poi layout draws the configured number of points inside each rect") {
    ScenarioConfig cfg;
    cfg.pois["west"] = {5, 0, 0, 350, 3400};
    cfg.pois["parks"] = {3, 0, 3050, 4500, 3400};
    Rng rng(1);
    PoiLayout layout = PoiLayout::build(cfg, rng);
    REQUIRE(layout.points.at("west").size() == 5);
    REQUIRE(layout.points.at("parks").size() == 3);
    for (const auto& p : layout.points.at("west")) {
        CHECK(p.x >= 0);
        CHECK(p.x <= 350);
        CHECK(p.y >= 0);
        CHECK(p.y <= 3400);
    }
    for (const auto& p : layout.points.at("parks")) {
        CHECK(p.y >= 3050);
        CHECK(p.y <= 3400);
    }
}

TEST_CASE("poi layout is deterministic per seed") {
    ScenarioConfig cfg;
    cfg.pois["a"] = {10, 0, 0, 100, 100};
    Rng r1(7), r2(7);
    CHECK(PoiLayout::build(cfg, r1).points.at("a") == PoiLayout::build(cfg, r2).points.at("a"));
}

TEST_CASE("next_destination honors the preference mass") {
    PoiLayout layout;
    layout.points["fav"] = {{10, 10}};
    layout.points["other"] = {{90, 90}};
    GroupConfig g;
    g.poi_probs = {{"fav", 1.0}};
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        Position d = next_destination(g, layout, 100, 100, rng);
        CHECK(d == Position{10, 10});
    }
}

TEST_CASE("zero preference mass falls through to uniform waypoints") {
    PoiLayout layout;
    layout.points["fav"] = {{10, 10}};
    GroupConfig g;
    g.poi_probs = {{"fav", 0.0}};
    Rng rng(3);
    int hits = 0;
    for (int i = 0; i < 1000; ++i) {
        Position d = next_destination(g, layout, 100, 100, rng);
        CHECK(d.x >= 0);
        CHECK(d.x < 100);
        CHECK(d.y >= 0);
        CHECK(d.y < 100);
        if (d == Position{10, 10}) ++hits;
    }
    CHECK(hits == 0);
}

TEST_CASE("preferred poi frequency matches its probability") {
    PoiLayout layout;
    layout.points["fav"] = {{1, 1}, {2, 2}};
    layout.points["b"] = {{50, 50}};
    GroupConfig g;
    g.poi_probs = {{"fav", 0.4}, {"b", 0.1}};
    Rng rng(17);
    int fav = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        Position d = next_destination(g, layout, 1000, 1000, rng);
        if (d == Position{1, 1} || d == Position{2, 2}) ++fav;
    }
    double freq = static_cast<double>(fav) / n;
    CHECK(freq > 0.39);
    CHECK(freq < 0.41);
}

TEST_CASE("step_position walks straight to the target and then pauses") {
    GroupConfig g;
    g.speed_min = g.speed_max = 2.0;
    g.pause_min = g.pause_max = 10.0;
    g.poi_probs = {{"only", 1.0}};
    PoiLayout layout;
    layout.points["only"] = {{10, 0}};
    MobilityState st;
    st.pos = {0, 0};
    Rng rng(1);

    SimTime t = 0;
    // 2 m/s toward x=10: five 1 s ticks to arrive
    for (; t < 5; t += 1) step_position(st, g, layout, 100, 100, t, 1.0, rng);
    CHECK(st.pos == Position{10, 0});
    CHECK_FALSE(st.has_leg);
    CHECK(st.pause_until == 15.0); // arrival at t=4 handled at tick end + 10 s pause

    // during the pause the node does not move
    Position before = st.pos;
    step_position(st, g, layout, 100, 100, 5.0, 1.0, rng);
    CHECK(st.pos == before);
}

TEST_CASE("movement never overshoots the destination") {
    GroupConfig g;
    g.speed_min = g.speed_max = 7.0;
    g.pause_min = g.pause_max = 0.0;
    g.poi_probs = {{"only", 1.0}};
    PoiLayout layout;
    layout.points["only"] = {{3, 0}};
    MobilityState st;
    st.pos = {0, 0};
    Rng rng(1);
    step_position(st, g, layout, 100, 100, 0.0, 1.0, rng); // step 7 > dist 3
    CHECK(st.pos == Position{3, 0});
}
