#include "lsm/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lsm/io.hpp"

namespace lsm {

Task task_from_string(const std::string& name) {
    if (name == "tmaze") return Task::TMaze;
    if (name == "flappy") return Task::Flappy;
    throw std::invalid_argument("unknown task: " + name);
}

const char* to_string(Task task) {
    return task == Task::TMaze ? "tmaze" : "flappy";
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
    size_t pos = 0;
    double x = std::stod(value, &pos);
    if (pos != value.size())
        throw std::invalid_argument("config: bad number for " + key + ": " + value);
    return x;
}

int parse_int(const std::string& key, const std::string& value) {
    size_t pos = 0;
    long x = std::stol(value, &pos);
    if (pos != value.size())
        throw std::invalid_argument("config: bad integer for " + key + ": " + value);
    return static_cast<int>(x);
}

// Single table driving both set() and items().
template <typename P, typename Fn>
void for_each_key(P& p, Fn&& fn) {
    fn("tau_m", p.tau_m);
    fn("v_th", p.v_th);
    fn("v_reset", p.v_reset);
    fn("ticks_per_step", p.ticks_per_step);
    fn("readout_v_th", p.readout_v_th);
    fn("readout_tau_m", p.readout_tau_m);
    fn("readout_vth_scale", p.readout_vth_scale);
    fn("grid_width", p.grid_width);
    fn("grid_height", p.grid_height);
    fn("lambda", p.lambda);
    fn("alpha", p.alpha);
    fn("d_th", p.d_th);
    fn("sparsity", p.sparsity);
    fn("beta", p.beta);
    fn("input_fan_out", p.input_fan_out);
    fn("input_weight", p.input_weight);
    fn("n_ini", p.n_ini);
    fn("n_opt", p.n_opt);
    fn("offspring_per_individual", p.offspring_per_individual);
    fn("g_th", p.g_th);
    fn("generations", p.generations);
    fn("rate", p.rate);
    fn("probe_window", p.probe_window);
    fn("density_cap", p.density_cap);
    fn("tau_bcm", p.tau_bcm);
    fn("theta_window", p.theta_window);
    fn("epsilon", p.epsilon);
    fn("learning_rate", p.learning_rate);
    fn("w_min", p.w_min);
    fn("w_max", p.w_max);
    fn("da_clip", p.da_clip);
    fn("liquid_lr_scale", p.liquid_lr_scale);
    fn("stdp_a_plus", p.stdp_a_plus);
    fn("stdp_a_minus", p.stdp_a_minus);
    fn("stdp_tau_plus", p.stdp_tau_plus);
    fn("stdp_tau_minus", p.stdp_tau_minus);
    fn("tmaze_step_budget", p.tmaze_step_budget);
    fn("reversal_probability", p.reversal_probability);
    fn("reversal_streak", p.reversal_streak);
    fn("horizon_tmaze", p.horizon_tmaze);
    fn("horizon_flappy", p.horizon_flappy);
    fn("flappy_height", p.flappy_height);
    fn("pipe_distance", p.pipe_distance);
    fn("gap_half", p.gap_half);
    fn("flap_impulse", p.flap_impulse);
    fn("gravity", p.gravity);
    fn("v_max", p.v_max);
    fn("q_alpha", p.q_alpha);
    fn("q_gamma_tmaze", p.q_gamma_tmaze);
    fn("q_gamma_flappy", p.q_gamma_flappy);
    fn("q_greedy", p.q_greedy);
    fn("smoothing_width", p.smoothing_width);
    fn("threads", p.threads);
}

}  // namespace

void Params::set(const std::string& key, const std::string& value) {
    bool found = false;
    for_each_key(*this, [&](const char* name, auto& field) {
        if (found || key != name) return;
        found = true;
        using Field = std::decay_t<decltype(field)>;
        if constexpr (std::is_same_v<Field, int>)
            field = parse_int(key, value);
        else
            field = parse_double(key, value);
    });
    if (!found) throw std::invalid_argument("config: unknown key: " + key);
}

std::vector<std::pair<std::string, std::string>> Params::items() const {
    std::vector<std::pair<std::string, std::string>> out;
    for_each_key(*this, [&](const char* name, const auto& field) {
        using Field = std::decay_t<decltype(field)>;
        if constexpr (std::is_same_v<Field, int>)
            out.emplace_back(name, std::to_string(field));
        else
            out.emplace_back(name, format_double(field));
    });
    return out;
}

LifParams Params::lif() const {
    LifParams p;
    p.tau_m = tau_m;
    p.v_th = v_th;
    p.v_reset = v_reset;
    p.ticks_per_step = ticks_per_step;
    return p;
}

TopologyParams Params::topology() const {
    TopologyParams p;
    p.lambda = lambda;
    p.alpha = alpha;
    p.d_th = d_th;
    p.sparsity = sparsity;
    p.beta = beta;
    p.input_fan_out = input_fan_out;
    p.input_weight = input_weight;
    return p;
}

LiquidGrid Params::grid() const { return {grid_width, grid_height}; }

EvolutionParams Params::evolution() const {
    EvolutionParams p;
    p.n_ini = n_ini;
    p.n_opt = n_opt;
    p.offspring_per_individual = offspring_per_individual;
    p.g_th = g_th;
    p.generations = generations;
    p.rate = rate;
    p.probe_window = probe_window;
    p.density_cap = density_cap;
    p.threads = threads;
    return p;
}

PlasticityParams Params::plasticity() const {
    PlasticityParams p;
    p.epsilon = epsilon;
    p.learning_rate = learning_rate;
    p.w_min = w_min;
    p.w_max = w_max;
    p.tau_bcm = tau_bcm;
    p.theta_window = theta_window;
    p.da_clip = da_clip;
    p.liquid_lr_scale = liquid_lr_scale;
    p.stdp = {stdp_a_plus, stdp_a_minus, stdp_tau_plus, stdp_tau_minus};
    return p;
}

TMazeParams Params::tmaze() const {
    return {tmaze_step_budget, reversal_probability, reversal_streak};
}

FlappyParams Params::flappy() const {
    return {flappy_height, pipe_distance, gap_half, flap_impulse, gravity, v_max};
}

QLearnParams Params::qlearn(Task task) const {
    return {q_alpha, task == Task::TMaze ? q_gamma_tmaze : q_gamma_flappy, q_greedy};
}

AgentParams Params::agent(PlasticityRule liquid_rule, PlasticityRule readout_rule) const {
    AgentParams p;
    p.lif = lif();
    p.readout_v_th = readout_v_th;
    p.readout_tau_m = readout_tau_m;
    p.readout_vth_scale = readout_vth_scale;
    p.plast = plasticity();
    p.liquid_rule = liquid_rule;
    p.readout_rule = readout_rule;
    return p;
}

int Params::horizon(Task task) const {
    return task == Task::TMaze ? horizon_tmaze : horizon_flappy;
}

Params load_config_file(const std::filesystem::path& path, Params base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (blank) continue;
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        }
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

void save_config_file(const Params& params, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config " + path.string());
    for (const auto& [key, value] : params.items()) out << key << " = " << value << '\n';
}

}  // namespace lsm
