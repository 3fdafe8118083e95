#include "lsm/flappy.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lsm {

std::array<double, 9> flappy_state_currents(int state_id) {
    if (state_id < 0 || state_id > 8)
        throw std::invalid_argument("flappy_state_currents: state id out of range");
    std::array<double, 9> currents{};
    currents[state_id] = 2.0;
    return currents;
}

double flappy_reward(int current_state, int last_state, int dis_f) {
    if (current_state < 0 || current_state > 8)
        throw std::invalid_argument("flappy_reward: state id out of range");
    if (current_state <= 1) return 6.0;
    if (current_state == 8) return -100.0;
    bool same = current_state == last_state;
    if (current_state <= 3) return same ? (dis_f < 0 ? 3.0 : -5.0) : -3.0;
    if (current_state <= 5) return same ? (dis_f < 0 ? 3.0 : -8.0) : -5.0;
    return same ? (dis_f < 0 ? 3.0 : -3.0) : -3.0;
}

int FlappyWorld::offset_state(int offset) {
    int a = std::abs(offset);
    int pair = a <= 1 ? 0 : a <= 3 ? 1 : a <= 5 ? 2 : 3;
    bool below = offset < 0;
    return 2 * pair + (below ? 1 : 0);
}

FlappyWorld::FlappyWorld(const FlappyParams& params, uint64_t seed)
    : params_(params), rng_(seed) {
    if (params_.height < 9)
        throw std::invalid_argument("FlappyParams: height must be >= 9");
    if (params_.pipe_distance < 1)
        throw std::invalid_argument("FlappyParams: pipe_distance must be >= 1");
    reset_episode();
}

void FlappyWorld::spawn_pipe() {
    pipe_x_ = params_.pipe_distance;
    // Keep the gap clear of the ceiling and floor; consecutive gaps drift by
    // at most two cells so a pass is always reachable from the previous gap.
    int low = params_.gap_half + 2;
    int high = params_.height - params_.gap_half - 3;
    if (gap_center_ == 0) {
        gap_center_ = low + static_cast<int>(rng_.below(high - low + 1));
    } else {
        int step = static_cast<int>(rng_.below(5)) - 2;
        gap_center_ = std::clamp(gap_center_ + step, low, high);
    }
}

void FlappyWorld::reset_episode() {
    y_ = params_.height / 2;
    vy_ = 0;
    collided_ = false;
    gap_center_ = 0;
    spawn_pipe();
    state_id_ = offset_state(y_ - gap_center_);
}

std::vector<double> FlappyWorld::observation_currents() const {
    auto a = flappy_state_currents(state_id_);
    return {a.begin(), a.end()};
}

StepOutcome FlappyWorld::step(int action) {
    if (action < 0 || action >= 2)
        throw std::invalid_argument("FlappyWorld: invalid action id");
    if (collided_) throw std::logic_error("FlappyWorld: episode already finished");

    const int gap_before = gap_center_;
    const int last_state = state_id_;
    const int dist_before = std::abs(y_ - gap_before);

    vy_ -= params_.gravity;
    if (static_cast<FlappyAction>(action) == FlappyAction::Up)
        vy_ += params_.flap_impulse;
    vy_ = std::clamp(vy_, -params_.v_max, params_.v_max);
    int ny = y_ + vy_;
    if (ny < 0 || ny >= params_.height) {
        ny = std::clamp(ny, 0, params_.height - 1);
        vy_ = 0;
    }
    y_ = ny;

    --pipe_x_;
    const int dist_after = std::abs(y_ - gap_before);
    const int dis_f = dist_after - dist_before;

    StepOutcome out;
    if (pipe_x_ == 0) {
        if (dist_after > params_.gap_half) {
            collided_ = true;
            state_id_ = 8;
            out.da = flappy_reward(8, last_state, dis_f);
            out.done = true;
            out.event = EpisodeEvent::Collision;
            return out;
        }
        spawn_pipe();  // passed through; next pipe takes over the observation
    }

    // Reward is judged against the pipe that was active when the action was
    // chosen; the observation tracks whichever pipe is now approaching.
    int reward_state = offset_state(y_ - gap_before);
    out.da = flappy_reward(reward_state, last_state, dis_f);
    state_id_ = offset_state(y_ - gap_center_);
    return out;
}

bool FlappyWorld::finish_episode() {
    reset_episode();
    return false;
}

std::string FlappyWorld::state_label() const {
    return "s" + std::to_string(state_id_) + ":y" + std::to_string(y_) + ":g" +
           std::to_string(gap_center_) + ":d" + std::to_string(pipe_x_);
}

std::vector<std::vector<double>> FlappyWorld::probe_ensemble() const {
    std::vector<std::vector<double>> ensemble;
    for (int s = 0; s < 9; ++s) {
        auto a = flappy_state_currents(s);
        ensemble.emplace_back(a.begin(), a.end());
    }
    return ensemble;
}

}  // namespace lsm
