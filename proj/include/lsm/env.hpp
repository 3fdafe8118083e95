#pragma once

#include <string>
#include <vector>

namespace lsm {

enum class EpisodeEvent { None, Food, Poison, Timeout, Collision };

struct StepOutcome {
    double da = 0.0;  // dopamine signal emitted by this step
    bool done = false;
    EpisodeEvent event = EpisodeEvent::None;
};

// Common surface of the decision tasks. One agent per instance; instances own
// their random stream, so runs are deterministic per seed.
class Environment {
public:
    virtual ~Environment() = default;

    virtual int n_actions() const = 0;
    virtual int n_inputs() const = 0;

    // Current observation, already encoded as per-input current amplitudes.
    virtual std::vector<double> observation_currents() const = 0;

    virtual StepOutcome step(int action) = 0;

    // Episode bookkeeping once a step reported done (reversal draws, respawn)
    // followed by a reset to the start state. Returns true when the world
    // changed underneath the agent (a reward-site reversal).
    virtual bool finish_episode() = 0;

    virtual std::string state_label() const = 0;

    // Distinct observation encodings of the task, for liquid probing.
    virtual std::vector<std::vector<double>> probe_ensemble() const = 0;

    // Tabular view for the Q-learning baseline.
    virtual int q_state_count() const = 0;
    virtual int q_state_index() const = 0;
};

const char* to_string(EpisodeEvent e);

}  // namespace lsm
