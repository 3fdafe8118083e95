#pragma once

#include <array>
#include <cstdint>

#include "lsm/env.hpp"
#include "lsm/rng.hpp"

namespace lsm {

enum class FlappyAction { Up = 0, Down = 1 };

struct FlappyParams {
    int height = 13;       // vertical cells the bird can occupy
    int pipe_distance = 6; // steps until the next pipe reaches the bird
    int gap_half = 1;      // |offset| <= gap_half counts as inside the gap
    int flap_impulse = 2;
    int gravity = 1;
    int v_max = 1;
};

// One-hot encoding of the discrete state id over nine input neurons.
std::array<double, 9> flappy_state_currents(int state_id);

// Reward table keyed by the state after the move, whether the state changed,
// and the sign of the distance change toward the gap center.
double flappy_reward(int current_state, int last_state, int dis_f);

// Scrolling pipe world reduced to nine discrete states: paired bands of the
// vertical offset from the gap center (0/1 inside the gap, 6/7 far away) and
// state 8 for a collision. Flapping fights unit gravity.
class FlappyWorld final : public Environment {
public:
    FlappyWorld(const FlappyParams& params, uint64_t seed);

    int n_actions() const override { return 2; }
    int n_inputs() const override { return 9; }
    std::vector<double> observation_currents() const override;
    StepOutcome step(int action) override;
    bool finish_episode() override;
    std::string state_label() const override;
    std::vector<std::vector<double>> probe_ensemble() const override;
    int q_state_count() const override { return 9; }
    int q_state_index() const override { return state_id_; }

    void reset_episode();

    int state_id() const { return state_id_; }
    int bird_y() const { return y_; }
    int gap_center() const { return gap_center_; }
    int pipe_x() const { return pipe_x_; }

    // Offset band -> state id 0..7 (sign picks the even/odd member).
    static int offset_state(int offset);

private:
    void spawn_pipe();

    FlappyParams params_;
    Rng rng_;
    int y_ = 0;
    int vy_ = 0;
    int pipe_x_ = 0;
    int gap_center_ = 0;
    int state_id_ = 0;
    bool collided_ = false;
};

}  // namespace lsm
