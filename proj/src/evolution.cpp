#include "lsm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lsm/parallel.hpp"
#include "lsm/rank.hpp"

namespace lsm {

size_t Chromosome::edge_count() const {
    size_t count = 0;
    for (uint8_t b : bits.data()) count += b;
    return count;
}

double Chromosome::density() const {
    size_t n = bits.rows();
    return n == 0 ? 0.0 : static_cast<double>(edge_count()) / static_cast<double>(n * n);
}

Chromosome chromosome_from_weights(const Matrix& w, const LiquidGrid& grid) {
    if (w.rows() != w.cols() || static_cast<int>(w.rows()) != grid.n())
        throw std::invalid_argument("chromosome_from_weights: shape mismatch");
    Chromosome c;
    c.width = grid.width;
    c.height = grid.height;
    c.bits = SpikeStateMatrix(w.rows(), w.cols(), 0);
    for (size_t i = 0; i < w.rows(); ++i)
        for (size_t j = 0; j < w.cols(); ++j) c.bits(i, j) = w(i, j) > 0.0 ? 1 : 0;
    return c;
}

Matrix weights_from_chromosome(const Chromosome& chrom, const LiquidGrid& grid,
                               const TopologyParams& topo) {
    const int n = grid.n();
    if (static_cast<int>(chrom.bits.rows()) != n ||
        static_cast<int>(chrom.bits.cols()) != n)
        throw std::invalid_argument("weights_from_chromosome: shape mismatch");
    Matrix w(n, n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (chrom.bits(i, j))
                w(i, j) = topo.alpha *
                          connection_probability(grid.distance(i, j), topo.lambda);
    return w;
}

int separation_property(const SpikeStateMatrix& s) {
    if (s.rows() == 0 || s.cols() == 0)
        throw std::invalid_argument("separation_property: empty matrix");
    return binary_matrix_rank(s);
}

FitnessProbe::FitnessProbe(const LiquidGrid& grid, const TopologyParams& topo,
                           const LifParams& lif, const InputProjection& projection,
                           const std::vector<std::vector<double>>& ensemble,
                           int probe_window)
    : grid_(grid), topo_(topo), lif_(lif) {
    if (ensemble.empty())
        throw std::invalid_argument("FitnessProbe: ensemble must not be empty");
    if (probe_window < static_cast<int>(ensemble.size()))
        throw std::invalid_argument("FitnessProbe: window shorter than ensemble");
    size_t per_encoding = probe_window / ensemble.size();
    for (const auto& amplitudes : ensemble) {
        auto injected = projection.inject(amplitudes);
        tick_currents_.push_back(constant_currents(injected, per_encoding));
    }
}

SpikeStateMatrix FitnessProbe::spike_record(const SynapseList& weights) const {
    std::vector<SpikeStateMatrix> blocks;
    blocks.reserve(tick_currents_.size());
    for (const auto& currents : tick_currents_) {
        blocks.push_back(run_window(weights, currents, lif_));  // rest state per block
    }
    return hconcat(blocks);
}

FitnessResult evaluate_fitness(const Chromosome& chrom, const FitnessProbe& probe) {
    auto weights =
        SynapseList::from_dense(weights_from_chromosome(chrom, probe.grid(), probe.topo()));
    SpikeStateMatrix s = probe.spike_record(weights);
    FitnessResult result;
    result.fitness = separation_property(s);
    result.active.assign(s.rows(), 0);
    for (size_t i = 0; i < s.rows(); ++i)
        for (size_t t = 0; t < s.cols(); ++t)
            if (s(i, t)) {
                result.active[i] = 1;
                break;
            }
    return result;
}

Chromosome mutate(const Chromosome& chrom, std::span<const uint8_t> active,
                  const LiquidGrid& grid, double d_th, double density_cap,
                  Rng& rng, bool* mutated) {
    if (mutated) *mutated = false;
    const int n = grid.n();
    if (static_cast<int>(active.size()) != n)
        throw std::invalid_argument("mutate: activity size mismatch");

    size_t cap_edges = static_cast<size_t>(density_cap * n * n);
    if (chrom.edge_count() + 1 > cap_edges) return chrom;

    std::vector<int> donors;  // reused per candidate
    std::vector<int> candidates;
    for (int i = 0; i < n; ++i) {
        if (active[i]) continue;
        bool has_donor = false;
        for (int a = 0; a < n && !has_donor; ++a)
            has_donor = active[a] && edge_allowed(grid, d_th, a, i) && !chrom.bits(a, i);
        if (has_donor) candidates.push_back(i);
    }
    if (candidates.empty()) return chrom;

    int target = candidates[rng.index(candidates.size())];
    for (int a = 0; a < n; ++a)
        if (active[a] && edge_allowed(grid, d_th, a, target) && !chrom.bits(a, target))
            donors.push_back(a);
    int donor = donors[rng.index(donors.size())];

    Chromosome next = chrom;
    next.bits(donor, target) = 1;
    if (mutated) *mutated = true;
    return next;
}

void EvolutionParams::validate() const {
    if (n_ini < 1) throw std::invalid_argument("EvolutionParams: n_ini must be >= 1");
    if (n_opt < 1 || n_opt > n_ini)
        throw std::invalid_argument("EvolutionParams: need 1 <= n_opt <= n_ini");
    if (offspring_per_individual < 1)
        throw std::invalid_argument("EvolutionParams: offspring count must be >= 1");
    if (rate < 0.0 || rate >= 1.0)
        throw std::invalid_argument("EvolutionParams: rate must be in [0, 1)");
    if (generations < g_th)
        throw std::invalid_argument("EvolutionParams: generations must be >= g_th");
    if (probe_window < 1)
        throw std::invalid_argument("EvolutionParams: probe_window must be >= 1");
}

namespace {

struct Individual {
    Chromosome chrom;
    int fitness = 0;
    std::vector<uint8_t> active;
};

Individual make_random_individual(const FitnessProbe& probe, uint64_t seed) {
    Matrix w = init_liquid(probe.grid(), probe.topo(), seed);
    Individual ind;
    ind.chrom = chromosome_from_weights(w, probe.grid());
    auto r = evaluate_fitness(ind.chrom, probe);
    ind.fitness = r.fitness;
    ind.active = std::move(r.active);
    return ind;
}

// Stable order: fitness descending, insertion index ascending.
std::vector<size_t> ranked_indices(const std::vector<Individual>& pop) {
    std::vector<size_t> idx(pop.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return pop[a].fitness > pop[b].fitness;
    });
    return idx;
}

}  // namespace

EvolutionResult evolve(const EvolutionParams& params, const FitnessProbe& probe,
                       uint64_t master_seed) {
    params.validate();

    std::vector<Individual> pop(params.n_ini);
    parallel_for(pop.size(), params.threads, [&](size_t k) {
        pop[k] = make_random_individual(
            probe, sub_seed(master_seed, seed_tag::liquid_init, k));
    });

    EvolutionResult result;
    for (int g = 0; g < params.generations; ++g) {
        // Every individual is challenged by its own mutated offspring and
        // keeps its place unless one of them scores at least as well.
        parallel_for(pop.size(), params.threads, [&](size_t k) {
            Individual& ind = pop[k];
            Individual best;
            bool have_best = false;
            for (int o = 0; o < params.offspring_per_individual; ++o) {
                Rng rng(sub_seed(master_seed, seed_tag::offspring, g, k, o));
                bool changed = false;
                Chromosome child = mutate(ind.chrom, ind.active, probe.grid(),
                                          probe.topo().d_th, params.density_cap,
                                          rng, &changed);
                if (!changed) continue;
                auto r = evaluate_fitness(child, probe);
                if (!have_best || r.fitness > best.fitness) {
                    best = {std::move(child), r.fitness, std::move(r.active)};
                    have_best = true;
                }
            }
            if (have_best && best.fitness >= ind.fitness) ind = std::move(best);
        });

        auto order = ranked_indices(pop);
        if (g < params.g_th) {
            int n_fresh = static_cast<int>(std::lround(params.rate * params.n_ini));
            n_fresh = std::min(n_fresh, params.n_ini - 1);
            std::vector<Individual> next;
            next.reserve(params.n_ini);
            for (int k = 0; k < params.n_ini - n_fresh; ++k)
                next.push_back(std::move(pop[order[k]]));
            size_t fresh_base = next.size();
            next.resize(params.n_ini);
            parallel_for(n_fresh, params.threads, [&](size_t slot) {
                next[fresh_base + slot] = make_random_individual(
                    probe, sub_seed(master_seed, seed_tag::fresh_individual, g, slot));
            });
            pop = std::move(next);
        } else if (static_cast<int>(pop.size()) > params.n_opt) {
            std::vector<Individual> next;
            next.reserve(params.n_opt);
            for (int k = 0; k < params.n_opt; ++k)
                next.push_back(std::move(pop[order[k]]));
            pop = std::move(next);
        }

        GenerationStats stats;
        stats.generation = g;
        stats.best = pop.front().fitness;
        stats.min = pop.front().fitness;
        double sum = 0.0;
        for (const auto& ind : pop) {
            stats.best = std::max(stats.best, ind.fitness);
            stats.min = std::min(stats.min, ind.fitness);
            sum += ind.fitness;
        }
        stats.mean = sum / static_cast<double>(pop.size());
        result.history.push_back(stats);
    }

    auto order = ranked_indices(pop);
    for (int k = 0; k < params.n_opt && k < static_cast<int>(order.size()); ++k) {
        const Individual& ind = pop[order[k]];
        result.survivors.push_back({ind.chrom, ind.fitness});
    }
    return result;
}

}  // namespace lsm
