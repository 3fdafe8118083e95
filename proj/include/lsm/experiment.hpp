#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lsm/agent.hpp"
#include "lsm/config.hpp"
#include "lsm/env.hpp"
#include "lsm/evolution.hpp"

namespace lsm {

// One cell of the ablation matrix.
struct CellSpec {
    bool evolved = true;
    PlasticityRule liquid_rule = PlasticityRule::DaBcm;
    PlasticityRule readout_rule = PlasticityRule::DaBcm;

    std::string name() const;
    // Stable id used for seeding the cell's random streams.
    uint64_t key() const;
};

// The five rows of the ablation study, worst to best.
std::vector<CellSpec> default_ablation_cells();

struct ExperimentConfig {
    Task task = Task::TMaze;
    CellSpec cell;
    uint64_t master_seed = 42;
    Params params;
};

struct StepLog {
    int step = 0;
    int episode = 0;
    std::string state;
    int action = 0;
    double da = 0.0;
    bool episode_end = false;
    EpisodeEvent event = EpisodeEvent::None;
    bool reversed = false;  // world swapped its reward sites after this step
};

struct RunRecord {
    std::vector<StepLog> steps;
    double total_da = 0.0;
    int episodes = 0;
    int food_events = 0;
    int poison_events = 0;
    int timeout_events = 0;
    int collision_events = 0;
    bool liquid_changed = false;
    size_t parameter_count = 0;
    double liquid_density = 0.0;
};

std::unique_ptr<Environment> make_environment(Task task, const Params& params,
                                              uint64_t seed);

// The shared input wiring of one experiment: every individual and every
// fitness evaluation under a master seed sees the same projection.
InputProjection experiment_projection(Task task, const Params& params,
                                      uint64_t master_seed);

FitnessProbe experiment_probe(Task task, const Params& params, uint64_t master_seed);

// One individual's life: probe the liquid, wire the readout, then loop
// observe -> act -> step -> learn for the task horizon, episodes concatenated.
RunRecord run_agent(const ExperimentConfig& cfg, const Chromosome* chrom,
                    int individual);

// R = sum of all per-step rewards over all individuals, divided by the
// number of individuals.
double population_reward(const std::vector<RunRecord>& records);

struct CellResult {
    CellSpec cell;
    std::vector<double> per_seed_reward;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation across seeds
};

struct AblationResult {
    Task task;
    std::vector<uint64_t> seeds;
    std::vector<CellResult> cells;
};

// Runs every cell over every master seed. Evolved cells reuse one evolution
// per seed. When out_dir is given, writes ablation_summary.csv,
// ablation_runs.csv, and a per-cell reward_timeseries for the first seed.
AblationResult run_ablation(Task task, const std::vector<CellSpec>& cells,
                            const std::vector<uint64_t>& seeds, const Params& params,
                            const std::optional<std::filesystem::path>& out_dir);

struct BaselineResult {
    std::vector<double> per_seed_reward;
    double mean = 0.0;
    double stddev = 0.0;
};

// Tabular Q-learning over the same horizon and population size.
BaselineResult run_q_baseline(Task task, const std::vector<uint64_t>& seeds,
                              const Params& params,
                              const std::optional<std::filesystem::path>& out_dir);

// Gaussian smoothing with an edge-normalized kernel, for reward curves.
std::vector<double> gaussian_smooth(const std::vector<double>& series, double sigma);

double mean_of(const std::vector<double>& xs);
double sample_stddev(const std::vector<double>& xs);

// CSV emitters shared by the CLI and the tests.
void write_fitness_history(const std::vector<GenerationStats>& history,
                           const std::filesystem::path& path);
void write_episode_trace(const RunRecord& record, const std::filesystem::path& path);
void write_reward_timeseries(const std::vector<RunRecord>& records, double sigma,
                             const std::filesystem::path& path);

}  // namespace lsm
