#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lsm/agent.hpp"
#include "lsm/evolution.hpp"
#include "lsm/flappy.hpp"
#include "lsm/lif.hpp"
#include "lsm/plasticity.hpp"
#include "lsm/qlearn.hpp"
#include "lsm/tmaze.hpp"
#include "lsm/topology.hpp"

namespace lsm {

enum class Task { TMaze, Flappy };

Task task_from_string(const std::string& name);
const char* to_string(Task task);

// Every tunable constant of the system, with its default. Config files are
// flat `key = value` lines; unknown keys fail fast.
struct Params {
    // neuron model
    double tau_m = 2.0;
    double v_th = 1.0;
    double v_reset = 0.0;
    int ticks_per_step = 20;
    double readout_v_th = 0.0;  // 0 = calibrate from the probe
    double readout_tau_m = 3.0;
    double readout_vth_scale = 0.5;

    // liquid construction
    int grid_width = 10;
    int grid_height = 10;
    double lambda = 2.0;
    double alpha = 4.0;
    double d_th = 3.0;
    double sparsity = 0.01;
    double beta = 4.0;
    int input_fan_out = 4;
    double input_weight = 1.3;

    // structure search
    int n_ini = 100;
    int n_opt = 20;
    int offspring_per_individual = 10;
    int g_th = 20;
    int generations = 30;
    double rate = 0.2;
    int probe_window = 100;
    double density_cap = 0.02;

    // synaptic learning
    double tau_bcm = 0.9;
    double theta_window = 25.0;
    double epsilon = 0.001;
    double learning_rate = 0.01;
    double w_min = 0.0;
    double w_max = 8.0;
    double da_clip = 10.0;
    double liquid_lr_scale = 0.25;
    double stdp_a_plus = 0.01;
    double stdp_a_minus = 0.012;
    double stdp_tau_plus = 5.0;
    double stdp_tau_minus = 5.0;

    // T-maze task
    int tmaze_step_budget = 30;
    double reversal_probability = 0.25;
    int reversal_streak = 3;
    int horizon_tmaze = 500;

    // Flappy Bird task
    int horizon_flappy = 2000;
    int flappy_height = 13;
    int pipe_distance = 6;
    int gap_half = 1;
    int flap_impulse = 2;
    int gravity = 1;
    int v_max = 1;

    // Q-learning baseline
    double q_alpha = 0.1;
    double q_gamma_tmaze = 0.9;
    double q_gamma_flappy = 0.99;
    double q_greedy = 0.8;

    // harness
    double smoothing_width = 25.0;
    int threads = 1;

    void set(const std::string& key, const std::string& value);
    std::vector<std::pair<std::string, std::string>> items() const;

    LifParams lif() const;
    TopologyParams topology() const;
    LiquidGrid grid() const;
    EvolutionParams evolution() const;
    PlasticityParams plasticity() const;
    TMazeParams tmaze() const;
    FlappyParams flappy() const;
    QLearnParams qlearn(Task task) const;
    AgentParams agent(PlasticityRule liquid_rule, PlasticityRule readout_rule) const;
    int horizon(Task task) const;
};

Params load_config_file(const std::filesystem::path& path, Params base = {});
void save_config_file(const Params& params, const std::filesystem::path& path);

}  // namespace lsm
