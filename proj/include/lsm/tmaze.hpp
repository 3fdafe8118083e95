#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lsm/env.hpp"
#include "lsm/rng.hpp"

namespace lsm {

enum class TMazeSymbol : uint8_t { Wall = 0, Road = 1, Food = 2, Poison = 3 };

// What the agent sees in the three directions relative to its heading.
struct TMazeObservation {
    TMazeSymbol left, front, right;
    bool operator==(const TMazeObservation&) const = default;
};

// Per-tick input currents for one observation.
std::array<double, 3> tmaze_observation_currents(const TMazeObservation& obs);

enum class TMazeAction { Forward = 0, Left = 1, Right = 2 };

struct TMazeParams {
    int step_budget = 30;               // energy: episode restarts after this many steps
    double reversal_probability = 0.25; // chance of a food/poison swap once earned
    int reversal_streak = 3;            // consecutive food episodes that arm a swap
};

// T-shaped maze: a stem the agent walks up, a junction, and two arms whose
// far ends hold the food and the poison. Turning rotates the heading and
// attempts a move in the new direction; walls block the move but keep the
// rotation. Rewards follow the distance change toward the food.
class TMazeWorld final : public Environment {
public:
    TMazeWorld(const TMazeParams& params, uint64_t seed);

    int n_actions() const override { return 3; }
    int n_inputs() const override { return 3; }
    std::vector<double> observation_currents() const override;
    StepOutcome step(int action) override;
    bool finish_episode() override;
    std::string state_label() const override;
    std::vector<std::vector<double>> probe_ensemble() const override;
    int q_state_count() const override;
    int q_state_index() const override;

    // Swaps the reward sites with the configured probability once the agent
    // has collected food in `reversal_streak` consecutive episodes.
    // Returns true when a swap happened.
    bool maybe_reverse();

    void reset_episode();

    TMazeObservation observation() const;
    int distance_to_food() const;
    bool food_on_west() const { return food_west_; }
    int consecutive_food_episodes() const { return food_streak_; }
    int steps_taken() const { return steps_in_episode_; }

    // Grid introspection used by tests.
    static constexpr int kRows = 5;
    static constexpr int kCols = 5;
    bool walkable(int row, int col) const;
    bool terminal(int row, int col) const;
    int agent_row() const { return row_; }
    int agent_col() const { return col_; }
    int agent_heading() const { return heading_; }

private:
    int cell_index(int row, int col) const;  // non-terminal walkable cells only
    TMazeSymbol symbol_at(int row, int col) const;
    void record_episode_end(EpisodeEvent event);

    TMazeParams params_;
    Rng rng_;
    bool food_west_ = true;
    int row_ = 4, col_ = 2;
    int heading_ = 0;  // 0=N 1=E 2=S 3=W
    int steps_in_episode_ = 0;
    int food_streak_ = 0;
    EpisodeEvent pending_event_ = EpisodeEvent::None;
};

}  // namespace lsm
