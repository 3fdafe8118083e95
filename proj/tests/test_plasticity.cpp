#include <cmath>

#include "doctest.h"

#include <stdexcept>

#include "lsm/plasticity.hpp"
#include "lsm/rng.hpp"

using namespace lsm;

TEST_CASE("trace recurrence") {
    CHECK(update_trace(0.0, false, 0.9) == 0.0);
    CHECK(update_trace(1.0, true, 0.9) == doctest::Approx(1.9).epsilon(1e-15));

    SUBCASE("constant spiking converges to the geometric limit") {
        double e = 0.0;
        for (int t = 0; t < 400; ++t) e = update_trace(e, true, 0.9);
        CHECK(std::abs(e - 10.0) < 1e-6);
    }

    SUBCASE("silence decays geometrically") {
        double e0 = 3.7;
        double e = e0;
        for (int k = 1; k <= 40; ++k) {
            e = update_trace(e, false, 0.9);
            CHECK(std::abs(e - e0 * std::pow(0.9, k)) < 1e-12);
        }
    }
}

TEST_CASE("bcm modification function") {
    CHECK(bcm_phi(0.5, 0.5) == 0.0);
    CHECK(bcm_phi(0.0, 2.0) == 0.0);
    CHECK(bcm_phi(2.0, 0.5) == doctest::Approx(3.0).epsilon(1e-15));
    // Depression strictly below threshold, potentiation above.
    CHECK(bcm_phi(0.3, 0.5) < 0.0);
    CHECK(bcm_phi(0.7, 0.5) > 0.0);
}

TEST_CASE("bcm weight update") {
    PlasticityParams p;

    SUBCASE("no input and no weight stays zero") {
        p.epsilon = 0.0;
        CHECK(bcm_update(0.0, 0.0, 1.0, 0.2, p) == 0.0);
    }

    SUBCASE("hand-computed update") {
        p.epsilon = 0.0;
        p.learning_rate = 0.01;
        CHECK(bcm_update(1.0, 1.0, 2.0, 1.0, p) == doctest::Approx(1.02).epsilon(1e-15));
    }

    SUBCASE("pure decay shrinks the weight toward zero") {
        p.epsilon = 0.01;
        double m = 2.0;
        for (int t = 0; t < 100; ++t) {
            double next = bcm_update(m, 1.0, 0.0, 0.5, p);  // phi contributes zero
            CHECK(next < m);
            CHECK(next > 0.0);
            m = next;
        }
    }
}

TEST_CASE("dopamine gating") {
    PlasticityParams p;
    Rng rng(17);

    SUBCASE("zero dopamine freezes the weight") {
        CHECK(da_bcm_update(1.5, 2.0, 3.0, 0.5, 0.0, p) == 1.5);
    }

    SUBCASE("unit dopamine reproduces the plain update") {
        for (int trial = 0; trial < 100; ++trial) {
            double m = 8.0 * rng.uniform01();
            double e_pre = 5.0 * rng.uniform01();
            double e_post = 5.0 * rng.uniform01();
            double theta = 4.0 * rng.uniform01();
            CHECK(da_bcm_update(m, e_pre, e_post, theta, 1.0, p) ==
                  bcm_update(m, e_pre, e_post, theta, p));
        }
    }

    SUBCASE("any dopamine value scales the raw step linearly") {
        // pre-clamp identity: da_bcm = m + da * (bcm - m)
        PlasticityParams wide = p;
        wide.w_min = -1e9;
        wide.w_max = 1e9;
        for (int trial = 0; trial < 1000; ++trial) {
            double m = 8.0 * rng.uniform01();
            double e_pre = 5.0 * rng.uniform01();
            double e_post = 5.0 * rng.uniform01();
            double theta = 4.0 * rng.uniform01();
            double da = 6.0 * (rng.uniform01() - 0.5);
            double gated = da_bcm_update(m, e_pre, e_post, theta, da, wide);
            double plain = bcm_update(m, e_pre, e_post, theta, wide);
            CHECK(std::abs(gated - (m + da * (plain - m))) < 1e-12);
        }
    }
}

TEST_CASE("bcm sign law") {
    // The direction of the activity-driven term follows e_post vs theta.
    PlasticityParams p;
    p.epsilon = 0.0;
    Rng rng(23);
    for (int trial = 0; trial < 100000; ++trial) {
        double m = 4.0;
        double e_pre = 0.01 + 5.0 * rng.uniform01();
        double e_post = 5.0 * rng.uniform01();
        double theta = 5.0 * rng.uniform01();
        double next = bcm_update(m, e_pre, e_post, theta, p);
        if (e_post > theta) CHECK(next >= m);
        if (e_post < theta && e_post > 0.0) CHECK(next <= m);
    }
}

TEST_CASE("clamp safety under random update storms") {
    PlasticityParams p;
    Rng rng(29);
    double m = 4.0;
    for (int t = 0; t < 20000; ++t) {
        switch (rng.index(3)) {
            case 0:
                m = bcm_update(m, 10.0 * rng.uniform01(), 10.0 * rng.uniform01(),
                               5.0 * rng.uniform01(), p);
                break;
            case 1:
                m = da_bcm_update(m, 10.0 * rng.uniform01(), 10.0 * rng.uniform01(),
                                  5.0 * rng.uniform01(), 8.0 * (rng.uniform01() - 0.5), p);
                break;
            default:
                m = stdp_update(m, static_cast<int>(rng.index(21)) - 10, p);
        }
        CHECK(m >= p.w_min);
        CHECK(m <= p.w_max);
    }
}

TEST_CASE("stdp pair rule") {
    PlasticityParams p;
    CHECK(stdp_update(1.0, 0, p) == 1.0);
    CHECK(stdp_update(1.0, 1, p) ==
          doctest::Approx(1.0 + 0.01 * std::exp(-0.2)).epsilon(1e-15));
    CHECK(stdp_update(1.0, -1, p) ==
          doctest::Approx(1.0 - 0.012 * std::exp(-0.2)).epsilon(1e-15));
    // Clamped at the floor.
    CHECK(stdp_update(0.0, -1, p) == 0.0);
}

TEST_CASE("sliding threshold dynamics") {
    SUBCASE("single update from rest") {
        CHECK(update_theta(0.0, 1.0, 50.0) == doctest::Approx(0.02).epsilon(1e-15));
    }

    SUBCASE("constant trace drives theta to its square") {
        double theta = 0.0;
        for (int t = 0; t < 3000; ++t) theta = update_theta(theta, 1.5, 50.0);
        CHECK(std::abs(theta - 2.25) < 1e-6);
    }

    SUBCASE("silence decays theta to zero") {
        double theta = 4.0;
        for (int t = 0; t < 3000; ++t) theta = update_theta(theta, 0.0, 50.0);
        CHECK(std::abs(theta) < 1e-6);
    }
}

TEST_CASE("parameter validation") {
    PlasticityParams p;
    p.w_min = 2.0;
    p.w_max = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = PlasticityParams{};
    p.epsilon = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
