#include "lsm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lsm/flappy.hpp"
#include "lsm/io.hpp"
#include "lsm/parallel.hpp"
#include "lsm/qlearn.hpp"
#include "lsm/tmaze.hpp"

namespace lsm {

std::string CellSpec::name() const {
    std::string s = evolved ? "evolved" : "unevolved";
    s += "_";
    s += to_string(liquid_rule);
    s += "+";
    s += to_string(readout_rule);
    return s;
}

uint64_t CellSpec::key() const {
    return (evolved ? 1u : 0u) * 16 + static_cast<uint64_t>(liquid_rule) * 4 +
           static_cast<uint64_t>(readout_rule);
}

std::vector<CellSpec> default_ablation_cells() {
    return {
        {true, PlasticityRule::Stdp, PlasticityRule::Stdp},
        {false, PlasticityRule::DaBcm, PlasticityRule::DaBcm},
        {true, PlasticityRule::None, PlasticityRule::DaBcm},
        {true, PlasticityRule::Stdp, PlasticityRule::DaBcm},
        {true, PlasticityRule::DaBcm, PlasticityRule::DaBcm},
    };
}

std::unique_ptr<Environment> make_environment(Task task, const Params& params,
                                              uint64_t seed) {
    if (task == Task::TMaze)
        return std::make_unique<TMazeWorld>(params.tmaze(), seed);
    return std::make_unique<FlappyWorld>(params.flappy(), seed);
}

InputProjection experiment_projection(Task task, const Params& params,
                                      uint64_t master_seed) {
    auto env = make_environment(task, params, 0);
    return make_input_projection(
        env->n_inputs(), params.grid().n(), params.input_fan_out,
        params.input_weight,
        sub_seed(master_seed, seed_tag::input_projection,
                 static_cast<uint64_t>(task)));
}

FitnessProbe experiment_probe(Task task, const Params& params, uint64_t master_seed) {
    auto env = make_environment(task, params, 0);
    return FitnessProbe(params.grid(), params.topology(), params.lif(),
                        experiment_projection(task, params, master_seed),
                        env->probe_ensemble(), params.probe_window);
}

RunRecord run_agent(const ExperimentConfig& cfg, const Chromosome* chrom,
                    int individual) {
    const Params& p = cfg.params;
    const uint64_t cell = cfg.cell.key();
    const uint64_t ind = static_cast<uint64_t>(individual);

    if (cfg.cell.evolved && chrom == nullptr)
        throw std::invalid_argument("run_agent: evolved structure needs a chromosome");

    auto env = make_environment(
        cfg.task, p, sub_seed(cfg.master_seed, seed_tag::environment, cell, ind));

    Matrix liquid =
        cfg.cell.evolved
            ? weights_from_chromosome(*chrom, p.grid(), p.topology())
            : init_liquid(p.grid(), p.topology(),
                          sub_seed(cfg.master_seed, seed_tag::unevolved_net, cell, ind));

    FitnessProbe probe = experiment_probe(cfg.task, p, cfg.master_seed);
    LsmAgent agent(p.agent(cfg.cell.liquid_rule, cfg.cell.readout_rule), liquid,
                   experiment_projection(cfg.task, p, cfg.master_seed), probe,
                   env->n_actions(),
                   sub_seed(cfg.master_seed, seed_tag::readout_init, cell, ind),
                   sub_seed(cfg.master_seed, seed_tag::policy, cell, ind));

    const Matrix liquid_before = agent.liquid_dense();
    const int horizon = p.horizon(cfg.task);

    RunRecord record;
    record.steps.reserve(horizon);
    agent.begin_episode();
    int episode = 0;
    for (int step = 0; step < horizon; ++step) {
        StepLog log;
        log.step = step;
        log.episode = episode;
        log.state = env->state_label();
        log.action = agent.act(env->observation_currents());
        StepOutcome out = env->step(log.action);
        agent.learn(out.da);
        log.da = out.da;
        log.episode_end = out.done;
        log.event = out.event;
        record.total_da += out.da;
        if (out.done) {
            log.reversed = env->finish_episode();
            agent.begin_episode();
            ++episode;
            ++record.episodes;
            switch (out.event) {
                case EpisodeEvent::Food: ++record.food_events; break;
                case EpisodeEvent::Poison: ++record.poison_events; break;
                case EpisodeEvent::Timeout: ++record.timeout_events; break;
                case EpisodeEvent::Collision: ++record.collision_events; break;
                case EpisodeEvent::None: break;
            }
        }
        record.steps.push_back(std::move(log));
    }

    record.liquid_changed = agent.liquid_dense() != liquid_before;
    record.parameter_count = agent.parameter_count();
    size_t n = liquid_before.rows();
    size_t nonzero = 0;
    for (const auto& e : SynapseList::from_dense(agent.liquid_dense()).edges())
        nonzero += e.w != 0.0;
    record.liquid_density = n == 0 ? 0.0 : static_cast<double>(nonzero) / (n * n);
    return record;
}

double population_reward(const std::vector<RunRecord>& records) {
    if (records.empty())
        throw std::invalid_argument("population_reward: no records");
    double sum = 0.0;
    for (const auto& r : records) sum += r.total_da;
    return sum / static_cast<double>(records.size());
}

double mean_of(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

std::vector<double> gaussian_smooth(const std::vector<double>& series, double sigma) {
    if (sigma <= 0.0 || series.empty()) return series;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    for (int k = -radius; k <= radius; ++k)
        kernel[k + radius] = std::exp(-(k * k) / (2.0 * sigma * sigma));
    std::vector<double> out(series.size());
    const int n = static_cast<int>(series.size());
    for (int i = 0; i < n; ++i) {
        double acc = 0.0, norm = 0.0;
        for (int k = -radius; k <= radius; ++k) {
            int j = i + k;
            if (j < 0 || j >= n) continue;
            acc += kernel[k + radius] * series[j];
            norm += kernel[k + radius];
        }
        out[i] = acc / norm;
    }
    return out;
}

void write_fitness_history(const std::vector<GenerationStats>& history,
                           const std::filesystem::path& path) {
    CsvWriter csv(path, "generation,best,mean,min");
    for (const auto& g : history)
        csv.row({CsvWriter::cell(g.generation), CsvWriter::cell(g.best),
                 CsvWriter::cell(g.mean), CsvWriter::cell(g.min)});
}

void write_episode_trace(const RunRecord& record, const std::filesystem::path& path) {
    CsvWriter csv(path, "step,episode,state,action,da,cumulative_reward,episode_end,event,reversed");
    double cum = 0.0;
    for (const auto& s : record.steps) {
        cum += s.da;
        csv.row({CsvWriter::cell(s.step), CsvWriter::cell(s.episode), s.state,
                 CsvWriter::cell(s.action), CsvWriter::cell(s.da), CsvWriter::cell(cum),
                 CsvWriter::cell(static_cast<int>(s.episode_end)), to_string(s.event),
                 CsvWriter::cell(static_cast<int>(s.reversed))});
    }
}

void write_reward_timeseries(const std::vector<RunRecord>& records, double sigma,
                             const std::filesystem::path& path) {
    if (records.empty()) throw std::invalid_argument("write_reward_timeseries: no records");
    size_t horizon = records.front().steps.size();
    std::vector<double> mean_da(horizon, 0.0);
    for (const auto& r : records)
        for (size_t t = 0; t < horizon; ++t) mean_da[t] += r.steps[t].da;
    for (double& x : mean_da) x /= static_cast<double>(records.size());
    auto smooth = gaussian_smooth(mean_da, sigma);

    CsvWriter csv(path, "step,da_mean,da_smooth,cumulative_reward");
    double cum = 0.0;
    for (size_t t = 0; t < horizon; ++t) {
        cum += mean_da[t];
        csv.row({CsvWriter::cell(t), CsvWriter::cell(mean_da[t]),
                 CsvWriter::cell(smooth[t]), CsvWriter::cell(cum)});
    }
}

AblationResult run_ablation(Task task, const std::vector<CellSpec>& cells,
                            const std::vector<uint64_t>& seeds, const Params& params,
                            const std::optional<std::filesystem::path>& out_dir) {
    if (cells.empty() || seeds.empty())
        throw std::invalid_argument("run_ablation: need at least one cell and seed");

    bool any_evolved = std::any_of(cells.begin(), cells.end(),
                                   [](const CellSpec& c) { return c.evolved; });

    AblationResult result{task, seeds, {}};
    result.cells.resize(cells.size());
    for (size_t c = 0; c < cells.size(); ++c) {
        result.cells[c].cell = cells[c];
        result.cells[c].per_seed_reward.resize(seeds.size());
    }

    // Records of the first seed, kept for the per-cell reward curves.
    std::vector<std::vector<RunRecord>> first_seed_records(cells.size());

    for (size_t si = 0; si < seeds.size(); ++si) {
        const uint64_t seed = seeds[si];
        std::vector<EvolvedIndividual> survivors;
        if (any_evolved) {
            FitnessProbe probe = experiment_probe(task, params, seed);
            survivors = evolve(params.evolution(), probe, seed).survivors;
        }
        for (size_t c = 0; c < cells.size(); ++c) {
            ExperimentConfig cfg{task, cells[c], seed, params};
            std::vector<RunRecord> records(params.n_opt);
            parallel_for(records.size(), params.threads, [&](size_t i) {
                const Chromosome* chrom =
                    cells[c].evolved ? &survivors[i % survivors.size()].chrom : nullptr;
                records[i] = run_agent(cfg, chrom, static_cast<int>(i));
            });
            result.cells[c].per_seed_reward[si] = population_reward(records);
            if (si == 0) first_seed_records[c] = std::move(records);
        }
    }

    for (auto& cell : result.cells) {
        cell.mean = mean_of(cell.per_seed_reward);
        cell.stddev = sample_stddev(cell.per_seed_reward);
    }

    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        {
            CsvWriter csv(*out_dir / "ablation_runs.csv",
                          "task,structure,liquid_rule,readout_rule,seed,reward");
            for (size_t c = 0; c < cells.size(); ++c)
                for (size_t si = 0; si < seeds.size(); ++si)
                    csv.row({to_string(task), cells[c].evolved ? "evolved" : "unevolved",
                             to_string(cells[c].liquid_rule),
                             to_string(cells[c].readout_rule),
                             CsvWriter::cell(static_cast<long long>(seeds[si])),
                             CsvWriter::cell(result.cells[c].per_seed_reward[si])});
        }
        {
            CsvWriter csv(*out_dir / "ablation_summary.csv",
                          "task,structure,liquid_rule,readout_rule,seeds,mean_reward,"
                          "std_reward,mean_reward_per_step");
            for (const auto& cell : result.cells)
                csv.row({to_string(task), cell.cell.evolved ? "evolved" : "unevolved",
                         to_string(cell.cell.liquid_rule),
                         to_string(cell.cell.readout_rule),
                         CsvWriter::cell(seeds.size()), CsvWriter::cell(cell.mean),
                         CsvWriter::cell(cell.stddev),
                         CsvWriter::cell(cell.mean / params.horizon(task))});
        }
        for (size_t c = 0; c < cells.size(); ++c)
            write_reward_timeseries(
                first_seed_records[c], params.smoothing_width,
                *out_dir / ("reward_timeseries_" + cells[c].name() + ".csv"));
    }
    return result;
}

BaselineResult run_q_baseline(Task task, const std::vector<uint64_t>& seeds,
                              const Params& params,
                              const std::optional<std::filesystem::path>& out_dir) {
    if (seeds.empty()) throw std::invalid_argument("run_q_baseline: need seeds");
    BaselineResult result;
    result.per_seed_reward.resize(seeds.size());
    std::vector<std::vector<double>> first_seed_series;

    for (size_t si = 0; si < seeds.size(); ++si) {
        double sum = 0.0;
        for (int i = 0; i < params.n_opt; ++i) {
            auto env = make_environment(
                task, params, sub_seed(seeds[si], seed_tag::environment, 99, i));
            QRunResult run =
                q_learning_run(*env, params.horizon(task), params.qlearn(task),
                               sub_seed(seeds[si], seed_tag::baseline, i));
            sum += run.total;
            if (si == 0) first_seed_series.push_back(run.da);
        }
        result.per_seed_reward[si] = sum / params.n_opt;
    }
    result.mean = mean_of(result.per_seed_reward);
    result.stddev = sample_stddev(result.per_seed_reward);

    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        CsvWriter csv(*out_dir / "baseline_summary.csv",
                      "task,method,seeds,mean_reward,std_reward,mean_reward_per_step");
        csv.row({to_string(task), "q_learning", CsvWriter::cell(seeds.size()),
                 CsvWriter::cell(result.mean), CsvWriter::cell(result.stddev),
                 CsvWriter::cell(result.mean / params.horizon(task))});

        size_t horizon = first_seed_series.front().size();
        std::vector<double> mean_da(horizon, 0.0);
        for (const auto& s : first_seed_series)
            for (size_t t = 0; t < horizon; ++t) mean_da[t] += s[t];
        for (double& x : mean_da) x /= static_cast<double>(first_seed_series.size());
        auto smooth = gaussian_smooth(mean_da, params.smoothing_width);
        CsvWriter ts(*out_dir / "reward_timeseries_q_learning.csv",
                     "step,da_mean,da_smooth,cumulative_reward");
        double cum = 0.0;
        for (size_t t = 0; t < horizon; ++t) {
            cum += mean_da[t];
            ts.row({CsvWriter::cell(t), CsvWriter::cell(mean_da[t]),
                    CsvWriter::cell(smooth[t]), CsvWriter::cell(cum)});
        }
    }
    return result;
}

}  // namespace lsm
