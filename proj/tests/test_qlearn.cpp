#include <cmath>

#include "doctest.h"

#include "lsm/qlearn.hpp"
#include "lsm/tmaze.hpp"

using namespace lsm;

TEST_CASE("single backup from zero") {
    QTable table(4, 3);
    QLearnParams p{0.1, 0.9, 0.8};
    q_update(table, 0, 1, 1.0, 2, false, p);
    CHECK(table.at(0, 1) == doctest::Approx(0.1).epsilon(1e-15));
    for (int a : {0, 2}) CHECK(table.at(0, a) == 0.0);
}

TEST_CASE("zero rewards keep the table at zero") {
    QTable table(5, 2);
    QLearnParams p{0.1, 0.9, 0.8};
    Rng rng(1);
    for (int t = 0; t < 1000; ++t)
        q_update(table, static_cast<int>(rng.index(5)), static_cast<int>(rng.index(2)),
                 0.0, static_cast<int>(rng.index(5)), rng.bernoulli(0.1), p);
    for (double q : table.q) CHECK(q == 0.0);
}

TEST_CASE("bootstrap uses the best next action unless terminal") {
    QTable table(2, 2);
    QLearnParams p{0.5, 0.9, 0.8};
    table.at(1, 0) = 2.0;
    table.at(1, 1) = 5.0;
    q_update(table, 0, 0, 1.0, 1, false, p);
    CHECK(table.at(0, 0) == doctest::Approx(0.5 * (1.0 + 0.9 * 5.0)).epsilon(1e-12));
    table.at(0, 1) = 0.0;
    q_update(table, 0, 1, 1.0, 1, true, p);
    CHECK(table.at(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("greedy policy picks the argmax when exploration is off") {
    QTable table(1, 3);
    table.at(0, 2) = 1.0;
    QLearnParams p{0.1, 0.9, 1.0};
    Rng rng(5);
    for (int t = 0; t < 50; ++t) CHECK(q_policy(table, 0, p, rng) == 2);
}

TEST_CASE("exploration rate is honored") {
    QTable table(1, 3);
    table.at(0, 0) = 10.0;  // clear argmax
    QLearnParams p{0.1, 0.9, 0.8};
    Rng rng(7);
    int non_greedy = 0;
    const int trials = 30000;
    for (int t = 0; t < trials; ++t)
        if (q_policy(table, 0, p, rng) != 0) ++non_greedy;
    // Exploring picks uniformly over 3 actions, so 2/3 of the 20% leaves argmax.
    double expected = trials * 0.2 * (2.0 / 3.0);
    CHECK(std::abs(non_greedy - expected) < 5.0 * std::sqrt(expected));
}

TEST_CASE("t-maze table has 84 entries") {
    TMazeWorld world({}, 0);
    QTable table(world.q_state_count(), world.n_actions());
    CHECK(table.q.size() == 84);
}

TEST_CASE("q run is deterministic and fills the horizon") {
    TMazeParams params;
    auto make = [&] { return TMazeWorld(params, 40); };
    QLearnParams p{0.1, 0.9, 0.8};
    auto a = make();
    auto b = make();
    auto ra = q_learning_run(a, 300, p, 17);
    auto rb = q_learning_run(b, 300, p, 17);
    CHECK(ra.da.size() == 300);
    CHECK(ra.da == rb.da);
    CHECK(ra.total == rb.total);
}

TEST_CASE("q learning solves the static maze") {
    TMazeParams params;
    params.reversal_probability = 0.0;  // keep the target fixed
    TMazeWorld world(params, 123);
    QLearnParams p{0.1, 0.9, 0.8};
    auto run = q_learning_run(world, 2000, p, 99);
    // The second half should be solidly positive once the table has converged.
    double late = 0.0;
    for (size_t t = 1000; t < 2000; ++t) late += run.da[t];
    CHECK(late > 200.0);
}
