// Command-line front end: structure evolution, single experiment cells,
// the full ablation matrix, and the tabular Q-learning baseline.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lsm/config.hpp"
#include "lsm/experiment.hpp"
#include "lsm/io.hpp"
#include "lsm/parallel.hpp"

namespace fs = std::filesystem;
using namespace lsm;

namespace {

struct CommonOpts {
    std::string task = "tmaze";
    uint64_t seed = 42;
    std::string config_path;
    std::string out_dir = "out";
    int threads = 0;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--task", opts.task, "Task: tmaze or flappy")
        ->check(CLI::IsMember({"tmaze", "flappy"}));
    cmd->add_option("--seed", opts.seed, "Master seed");
    cmd->add_option("--config", opts.config_path, "key = value config file");
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--threads", opts.threads,
                    "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--set", opts.overrides,
                    "Override a config key, e.g. --set learning_rate=0.02");
}

Params resolve_params(const CommonOpts& opts) {
    Params params;
    if (!opts.config_path.empty()) params = load_config_file(opts.config_path);
    for (const auto& kv : opts.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--set expects key=value, got: " + kv);
        params.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opts.threads > 0)
        params.threads = opts.threads;
    else if (opts.threads == 0 && params.threads <= 0)
        params.threads = default_thread_count();
    return params;
}

std::vector<uint64_t> seed_range(uint64_t first, int count) {
    std::vector<uint64_t> seeds;
    for (int i = 0; i < count; ++i) seeds.push_back(first + i);
    return seeds;
}

void save_survivors(const std::vector<EvolvedIndividual>& survivors,
                    const fs::path& dir) {
    for (size_t k = 0; k < survivors.size(); ++k)
        save_bits_text(survivors[k].chrom.bits,
                       dir / ("survivor_" + std::to_string(k) + ".chrom"));
}

std::vector<Chromosome> load_survivors(const fs::path& dir, const LiquidGrid& grid,
                                       int count) {
    std::vector<Chromosome> chroms;
    for (int k = 0; k < count; ++k) {
        fs::path file = dir / ("survivor_" + std::to_string(k) + ".chrom");
        if (!fs::exists(file)) break;
        Chromosome c;
        c.width = grid.width;
        c.height = grid.height;
        c.bits = load_bits_text(file);
        if (static_cast<int>(c.bits.rows()) != grid.n() ||
            static_cast<int>(c.bits.cols()) != grid.n())
            throw std::runtime_error("chromosome shape mismatch in " + file.string());
        chroms.push_back(std::move(c));
    }
    if (chroms.empty())
        throw std::runtime_error("no survivor_<k>.chrom files in " + dir.string());
    return chroms;
}

int cmd_evolve(const CommonOpts& opts) {
    Params params = resolve_params(opts);
    Task task = task_from_string(opts.task);
    fs::create_directories(opts.out_dir);

    FitnessProbe probe = experiment_probe(task, params, opts.seed);
    EvolutionResult result = evolve(params.evolution(), probe, opts.seed);

    write_fitness_history(result.history, fs::path(opts.out_dir) / "fitness_per_generation.csv");
    save_survivors(result.survivors, opts.out_dir);
    save_config_file(params, fs::path(opts.out_dir) / "config_resolved.txt");

    std::cout << "task=" << opts.task << " seed=" << opts.seed
              << " generations=" << params.generations
              << " best_sp=" << result.survivors.front().fitness
              << " survivors=" << result.survivors.size() << "\n";
    return 0;
}

int cmd_run(const CommonOpts& opts, const std::string& structure,
            const std::string& liquid_rule, const std::string& readout_rule,
            const std::string& chrom_dir, int individuals) {
    Params params = resolve_params(opts);
    Task task = task_from_string(opts.task);
    fs::create_directories(opts.out_dir);

    ExperimentConfig cfg;
    cfg.task = task;
    cfg.cell.evolved = structure == "evolved";
    cfg.cell.liquid_rule = rule_from_string(liquid_rule);
    cfg.cell.readout_rule = rule_from_string(readout_rule);
    cfg.master_seed = opts.seed;
    cfg.params = params;

    if (individuals <= 0) individuals = params.n_opt;

    std::vector<Chromosome> chroms;
    if (cfg.cell.evolved) {
        if (!chrom_dir.empty()) {
            chroms = load_survivors(chrom_dir, params.grid(), individuals);
        } else {
            FitnessProbe probe = experiment_probe(task, params, opts.seed);
            auto evo = evolve(params.evolution(), probe, opts.seed);
            for (auto& s : evo.survivors) chroms.push_back(std::move(s.chrom));
        }
    }

    std::vector<RunRecord> records(individuals);
    parallel_for(records.size(), params.threads, [&](size_t i) {
        const Chromosome* chrom =
            cfg.cell.evolved ? &chroms[i % chroms.size()] : nullptr;
        records[i] = run_agent(cfg, chrom, static_cast<int>(i));
    });

    double reward = population_reward(records);
    write_reward_timeseries(records, params.smoothing_width,
                            fs::path(opts.out_dir) / "reward_timeseries.csv");
    write_episode_trace(records.front(), fs::path(opts.out_dir) / "episode_trace.csv");
    save_config_file(params, fs::path(opts.out_dir) / "config_resolved.txt");

    CsvWriter csv(fs::path(opts.out_dir) / "run_summary.csv",
                  "task,structure,liquid_rule,readout_rule,seed,individuals,reward,"
                  "reward_per_step");
    csv.row({opts.task, structure, liquid_rule, readout_rule,
             CsvWriter::cell(static_cast<long long>(opts.seed)),
             CsvWriter::cell(individuals), CsvWriter::cell(reward),
             CsvWriter::cell(reward / params.horizon(task))});

    std::cout << "task=" << opts.task << " cell=" << cfg.cell.name()
              << " seed=" << opts.seed << " R=" << reward << "\n";
    return 0;
}

int cmd_ablate(const CommonOpts& opts, int n_seeds) {
    Params params = resolve_params(opts);
    Task task = task_from_string(opts.task);

    auto result = run_ablation(task, default_ablation_cells(),
                               seed_range(opts.seed, n_seeds), params,
                               fs::path(opts.out_dir));
    save_config_file(params, fs::path(opts.out_dir) / "config_resolved.txt");

    for (const auto& cell : result.cells)
        std::cout << cell.cell.name() << ": R = " << cell.mean << " +- "
                  << cell.stddev << "\n";
    return 0;
}

int cmd_baseline(const CommonOpts& opts, int n_seeds) {
    Params params = resolve_params(opts);
    Task task = task_from_string(opts.task);

    auto result = run_q_baseline(task, seed_range(opts.seed, n_seeds), params,
                                 fs::path(opts.out_dir));
    save_config_file(params, fs::path(opts.out_dir) / "config_resolved.txt");

    std::cout << "q_learning " << opts.task << ": R = " << result.mean << " +- "
              << result.stddev << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolved liquid state machine experiments"};
    app.require_subcommand(1);

    CommonOpts evolve_opts;
    auto* evolve_cmd = app.add_subcommand("evolve", "Search liquid structures");
    add_common(evolve_cmd, evolve_opts);
    int generations = -1, gth = -1, pop = -1, nopt = -1;
    double rate = -1.0;
    evolve_cmd->add_option("--generations", generations, "Total generations");
    evolve_cmd->add_option("--gth", gth, "Exploration generations");
    evolve_cmd->add_option("--rate", rate, "Fresh-individual fraction");
    evolve_cmd->add_option("--pop", pop, "Initial population size");
    evolve_cmd->add_option("--nopt", nopt, "Survivors returned");

    CommonOpts run_opts;
    auto* run_cmd = app.add_subcommand("run", "Run one experiment cell");
    add_common(run_cmd, run_opts);
    std::string structure = "evolved", liquid_rule = "da-bcm", readout_rule = "da-bcm";
    std::string chrom_dir;
    int individuals = 0;
    run_cmd->add_option("--structure", structure, "evolved or unevolved")
        ->check(CLI::IsMember({"evolved", "unevolved"}));
    run_cmd->add_option("--liquid-rule", liquid_rule, "none, stdp, or da-bcm")
        ->check(CLI::IsMember({"none", "stdp", "da-bcm"}));
    run_cmd->add_option("--readout-rule", readout_rule, "stdp or da-bcm")
        ->check(CLI::IsMember({"stdp", "da-bcm"}));
    run_cmd->add_option("--chrom-dir", chrom_dir,
                        "Directory with survivor_<k>.chrom (default: evolve first)");
    run_cmd->add_option("--individuals", individuals, "Population size (default n_opt)");

    CommonOpts ablate_opts;
    auto* ablate_cmd = app.add_subcommand("ablate", "Run the ablation matrix");
    add_common(ablate_cmd, ablate_opts);
    int ablate_seeds = 10;
    ablate_cmd->add_option("--seeds", ablate_seeds, "Master seeds, starting at --seed");

    CommonOpts baseline_opts;
    auto* baseline_cmd = app.add_subcommand("baseline", "Q-learning comparison");
    add_common(baseline_cmd, baseline_opts);
    int baseline_seeds = 10;
    baseline_cmd->add_option("--seeds", baseline_seeds, "Master seeds, starting at --seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (evolve_cmd->parsed()) {
            if (generations > 0) evolve_opts.overrides.push_back("generations=" + std::to_string(generations));
            if (gth >= 0) evolve_opts.overrides.push_back("g_th=" + std::to_string(gth));
            if (rate >= 0.0) evolve_opts.overrides.push_back("rate=" + std::to_string(rate));
            if (pop > 0) evolve_opts.overrides.push_back("n_ini=" + std::to_string(pop));
            if (nopt > 0) evolve_opts.overrides.push_back("n_opt=" + std::to_string(nopt));
            return cmd_evolve(evolve_opts);
        }
        if (run_cmd->parsed())
            return cmd_run(run_opts, structure, liquid_rule, readout_rule, chrom_dir,
                           individuals);
        if (ablate_cmd->parsed()) return cmd_ablate(ablate_opts, ablate_seeds);
        if (baseline_cmd->parsed()) return cmd_baseline(baseline_opts, baseline_seeds);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
