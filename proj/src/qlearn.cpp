#include "lsm/qlearn.hpp"

#include <algorithm>

namespace lsm {

void q_update(QTable& table, int s, int a, double r, int s_next, bool terminal,
              const QLearnParams& p) {
    double best_next = 0.0;
    if (!terminal) {
        best_next = table.at(s_next, 0);
        for (int a2 = 1; a2 < table.n_actions; ++a2)
            best_next = std::max(best_next, table.at(s_next, a2));
    }
    double target = r + p.gamma * best_next;
    table.at(s, a) += p.alpha * (target - table.at(s, a));
}

int q_policy(const QTable& table, int s, const QLearnParams& p, Rng& rng) {
    if (!rng.bernoulli(p.greedy))
        return static_cast<int>(rng.below(table.n_actions));
    double best = table.at(s, 0);
    for (int a = 1; a < table.n_actions; ++a) best = std::max(best, table.at(s, a));
    std::vector<int> tied;
    for (int a = 0; a < table.n_actions; ++a)
        if (table.at(s, a) == best) tied.push_back(a);
    return tied[rng.index(tied.size())];
}

QRunResult q_learning_run(Environment& env, int horizon, const QLearnParams& p,
                          uint64_t seed) {
    Rng rng(seed);
    QTable table(env.q_state_count(), env.n_actions());
    QRunResult result;
    result.da.reserve(horizon);
    for (int t = 0; t < horizon; ++t) {
        int s = env.q_state_index();
        int a = q_policy(table, s, p, rng);
        StepOutcome out = env.step(a);
        q_update(table, s, a, out.da, env.q_state_index(), out.done, p);
        result.da.push_back(out.da);
        result.total += out.da;
        if (out.done) {
            env.finish_episode();
            ++result.episodes;
        }
    }
    return result;
}

}  // namespace lsm
