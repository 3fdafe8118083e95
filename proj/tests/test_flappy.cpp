#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"

#include "lsm/flappy.hpp"
#include "lsm/rng.hpp"

using namespace lsm;

namespace {
constexpr int kUp = 0;
constexpr int kDown = 1;
}  // namespace

TEST_CASE("reward table is total and matches the frozen values") {
    // (state pair, same last state, dis_f >= 0) -> reward, spelled out by hand.
    struct Row {
        int state;
        double same_closer, same_farther, changed;
    };
    const Row rows[] = {
        {0, 6, 6, 6},    {1, 6, 6, 6},
        {2, 3, -5, -3},  {3, 3, -5, -3},
        {4, 3, -8, -5},  {5, 3, -8, -5},
        {6, 3, -3, -3},  {7, 3, -3, -3},
        {8, -100, -100, -100},
    };
    for (const auto& row : rows) {
        for (int last = 0; last <= 8; ++last) {
            for (int dis : {-2, -1, 0, 1, 2}) {
                double expect;
                if (last == row.state)
                    expect = dis < 0 ? row.same_closer : row.same_farther;
                else
                    expect = row.changed;
                if (row.state <= 1) expect = 6;
                if (row.state == 8) expect = -100;
                CHECK(flappy_reward(row.state, last, dis) == expect);
            }
        }
    }
    CHECK_THROWS_AS(flappy_reward(9, 0, 0), std::invalid_argument);
}

TEST_CASE("offset bands pair up the state space") {
    CHECK(FlappyWorld::offset_state(0) == 0);
    CHECK(FlappyWorld::offset_state(1) == 0);
    CHECK(FlappyWorld::offset_state(-1) == 1);
    CHECK(FlappyWorld::offset_state(2) == 2);
    CHECK(FlappyWorld::offset_state(-3) == 3);
    CHECK(FlappyWorld::offset_state(4) == 4);
    CHECK(FlappyWorld::offset_state(-5) == 5);
    CHECK(FlappyWorld::offset_state(6) == 6);
    CHECK(FlappyWorld::offset_state(-9) == 7);
}

TEST_CASE("one-hot state encoding") {
    auto currents = flappy_state_currents(3);
    for (int i = 0; i < 9; ++i) CHECK(currents[i] == (i == 3 ? 2.0 : 0.0));
    CHECK_THROWS_AS(flappy_state_currents(9), std::invalid_argument);
    CHECK_THROWS_AS(flappy_state_currents(-1), std::invalid_argument);
}

TEST_CASE("inside the gap every step pays six") {
    FlappyParams params;
    FlappyWorld world(params, 8);
    // Steer toward the gap center; most steps should land in the inner band.
    int paid = 0;
    for (int guard = 0; guard < 200 && paid < 20; ++guard) {
        int action = world.bird_y() > world.gap_center() ? kDown : kUp;
        auto out = world.step(action);
        if (out.da == 6.0) ++paid;
        if (out.done) world.finish_episode();
    }
    CHECK(paid >= 20);
}

TEST_CASE("collision is state 8, rewards -100, and ends the episode") {
    FlappyParams params;
    FlappyWorld world(params, 3);
    // Climb hard into the ceiling so the gap is eventually missed.
    bool collided = false;
    for (int t = 0; t < 50 && !collided; ++t) {
        auto out = world.step(kUp);
        if (out.done) {
            collided = true;
            CHECK(out.da == -100.0);
            CHECK(out.event == EpisodeEvent::Collision);
            CHECK(world.state_id() == 8);
            CHECK_THROWS_AS(world.step(kUp), std::logic_error);
        }
    }
    CHECK(collided);
}

TEST_CASE("state 8 appears exactly while collided") {
    FlappyParams params;
    FlappyWorld world(params, 91);
    Rng rng(4);
    for (int t = 0; t < 3000; ++t) {
        auto out = world.step(static_cast<int>(rng.index(2)));
        if (out.done) {
            CHECK(world.state_id() == 8);
            world.finish_episode();
        } else {
            CHECK(world.state_id() != 8);
        }
    }
}

TEST_CASE("rewards come from the declared finite set") {
    FlappyParams params;
    FlappyWorld world(params, 14);
    Rng rng(6);
    const std::set<double> allowed{6.0, 3.0, -3.0, -5.0, -8.0, -100.0};
    for (int t = 0; t < 3000; ++t) {
        auto out = world.step(static_cast<int>(rng.index(2)));
        CHECK(allowed.count(out.da) == 1);
        if (out.done) world.finish_episode();
    }
}

TEST_CASE("same-state worsening in the middle band costs -8") {
    FlappyParams params;
    FlappyWorld world(params, 2);
    Rng rng(9);
    // Wander until a transition stays in band 4/5 while moving away.
    bool checked = false;
    for (int guard = 0; guard < 5000 && !checked; ++guard) {
        int state = world.state_id();
        int dist_before = std::abs(world.bird_y() - world.gap_center());
        bool same_pipe = world.pipe_x() > 1;
        auto out = world.step(static_cast<int>(rng.index(2)));
        int dist_after = std::abs(world.bird_y() - world.gap_center());
        if (!out.done && same_pipe && (state == 4 || state == 5) &&
            world.state_id() == state && dist_after >= dist_before) {
            CHECK(out.da == -8.0);
            checked = true;
        }
        if (out.done) world.finish_episode();
    }
    CHECK(checked);
}

TEST_CASE("identical seeds give identical games") {
    FlappyParams params;
    FlappyWorld a(params, 77), b(params, 77);
    Rng rng(11);
    for (int t = 0; t < 800; ++t) {
        int action = static_cast<int>(rng.index(2));
        auto oa = a.step(action);
        auto ob = b.step(action);
        CHECK(oa.da == ob.da);
        CHECK(a.state_label() == b.state_label());
        if (oa.done) {
            a.finish_episode();
            b.finish_episode();
        }
    }
}

TEST_CASE("probe ensemble is the nine one-hot encodings") {
    FlappyWorld world({}, 1);
    auto ensemble = world.probe_ensemble();
    REQUIRE(ensemble.size() == 9);
    for (int s = 0; s < 9; ++s) {
        for (int i = 0; i < 9; ++i)
            CHECK(ensemble[s][i] == (i == s ? 2.0 : 0.0));
    }
}
