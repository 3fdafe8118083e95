#pragma once

#include <vector>

#include "lsm/env.hpp"
#include "lsm/rng.hpp"

namespace lsm {

struct QLearnParams {
    double alpha = 0.1;
    double gamma = 0.9;
    double greedy = 0.8;  // pick argmax with this probability, explore otherwise
};

struct QTable {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> q;  // row-major state x action

    QTable(int states, int actions)
        : n_states(states), n_actions(actions),
          q(static_cast<size_t>(states) * actions, 0.0) {}

    double& at(int s, int a) { return q[static_cast<size_t>(s) * n_actions + a]; }
    double at(int s, int a) const { return q[static_cast<size_t>(s) * n_actions + a]; }
};

// One Bellman backup: Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)).
// A terminal transition bootstraps from zero.
void q_update(QTable& table, int s, int a, double r, int s_next, bool terminal,
              const QLearnParams& p);

// Epsilon-greedy action choice; ties in the argmax break uniformly.
int q_policy(const QTable& table, int s, const QLearnParams& p, Rng& rng);

struct QRunResult {
    std::vector<double> da;  // reward per step
    double total = 0.0;
    int episodes = 0;
};

// Runs tabular Q-learning against the environment for `horizon` steps,
// episodes concatenated.
QRunResult q_learning_run(Environment& env, int horizon, const QLearnParams& p,
                          uint64_t seed);

}  // namespace lsm
