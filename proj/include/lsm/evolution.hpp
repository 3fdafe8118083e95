#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lsm/lif.hpp"
#include "lsm/matrix.hpp"
#include "lsm/rng.hpp"
#include "lsm/topology.hpp"

namespace lsm {

// Binary liquid connectivity, the evolutionary genome. Weight magnitudes are
// derived from the grid geometry, so the bits are the whole structure.
struct Chromosome {
    int width = 0;
    int height = 0;
    DenseMatrix<uint8_t> bits;

    size_t edge_count() const;
    double density() const;  // nonzero fraction of the full n*n matrix
};

Chromosome chromosome_from_weights(const Matrix& w, const LiquidGrid& grid);

// Each set bit becomes an edge of weight alpha * connection_probability(d).
Matrix weights_from_chromosome(const Chromosome& chrom, const LiquidGrid& grid,
                               const TopologyParams& topo);

// Separation property: exact rank of the spike-state matrix.
int separation_property(const SpikeStateMatrix& s);

// Everything needed to score a chromosome: the task's distinct observation
// encodings, each driven for an equal slice of the probe window from a rest
// state, with the spike records concatenated.
class FitnessProbe {
public:
    FitnessProbe(const LiquidGrid& grid, const TopologyParams& topo,
                 const LifParams& lif, const InputProjection& projection,
                 const std::vector<std::vector<double>>& ensemble,
                 int probe_window);

    const LiquidGrid& grid() const { return grid_; }
    const TopologyParams& topo() const { return topo_; }
    const LifParams& lif() const { return lif_; }
    size_t encoding_count() const { return tick_currents_.size(); }

    SpikeStateMatrix spike_record(const SynapseList& weights) const;

private:
    LiquidGrid grid_;
    TopologyParams topo_;
    LifParams lif_;
    std::vector<Matrix> tick_currents_;  // one precomputed block per encoding
};

struct FitnessResult {
    int fitness = 0;
    std::vector<uint8_t> active;  // fired at least once during the probe
};

FitnessResult evaluate_fitness(const Chromosome& chrom, const FitnessProbe& probe);

// Structural repair move: wire one inactive neuron to a nearby active one.
// Exactly one bit flips 0 -> 1, or nothing changes when no eligible pair
// exists or the density cap would be exceeded.
Chromosome mutate(const Chromosome& chrom, std::span<const uint8_t> active,
                  const LiquidGrid& grid, double d_th, double density_cap,
                  Rng& rng, bool* mutated = nullptr);

struct EvolutionParams {
    int n_ini = 100;
    int n_opt = 20;
    int offspring_per_individual = 10;
    int g_th = 20;       // exploration generations before truncation
    int generations = 30;
    double rate = 0.2;   // fraction replaced by fresh random individuals early on
    int probe_window = 100;
    double density_cap = 0.02;
    int threads = 1;

    void validate() const;
};

struct GenerationStats {
    int generation = 0;
    int best = 0;
    double mean = 0.0;
    int min = 0;
};

struct EvolvedIndividual {
    Chromosome chrom;
    int fitness = 0;
};

struct EvolutionResult {
    std::vector<EvolvedIndividual> survivors;  // n_opt, fitness descending
    std::vector<GenerationStats> history;
};

EvolutionResult evolve(const EvolutionParams& params, const FitnessProbe& probe,
                       uint64_t master_seed);

}  // namespace lsm
