#pragma once

#include <cstdint>
#include <vector>

#include "lsm/lif.hpp"
#include "lsm/matrix.hpp"
#include "lsm/rng.hpp"

namespace lsm {

// Liquid neurons live on a 2D grid; connectivity falls off with Euclidean
// distance between grid positions.
struct LiquidGrid {
    int width = 10;
    int height = 10;

    int n() const { return width * height; }
    int x_of(int i) const { return i % width; }
    int y_of(int i) const { return i / width; }

    double distance(int i, int j) const;
};

struct TopologyParams {
    double lambda = 2.0;    // locality constant of the connection probability
    double alpha = 4.0;     // liquid weight scale
    double d_th = 3.0;      // no connections at or beyond this distance
    double sparsity = 0.01; // fraction of eligible pairs kept at init
    double beta = 4.0;      // readout weight scale
    int input_fan_out = 4;  // liquid targets per input neuron
    double input_weight = 1.3;

    void validate() const;
};

// (e^(-1/lambda^2))^(d^2), in (0, 1].
double connection_probability(double d, double lambda);

// True for ordered pairs that the distance mask allows: i != j, d(i,j) < d_th.
bool edge_allowed(const LiquidGrid& grid, double d_th, int i, int j);

// Sparse random liquid: each eligible pair is kept with probability
// `sparsity`, and a kept edge carries weight alpha * connection_probability.
Matrix init_liquid(const LiquidGrid& grid, const TopologyParams& params,
                   uint64_t seed);

// Readout wiring. Every liquid neuron belongs to exactly one readout class;
// only neurons that fired during the probe get a nonzero weight.
struct ReadoutWeights {
    int n_readout = 0;
    std::vector<int> class_of;  // readout neuron per liquid neuron
    std::vector<double> w;      // weight of that single outgoing connection

    size_t liquid_count() const { return class_of.size(); }
    size_t nonzero_count() const;
};

ReadoutWeights init_readout(const SpikeStateMatrix& probe, int n_readout,
                            double beta, uint64_t seed);

// Fixed fan-out projection from task inputs into the liquid. Each input
// drives a few liquid neurons through a fixed ladder of weights, so a larger
// amplitude recruits more of its targets instead of only speeding them up.
struct InputProjection {
    int n_liquid = 0;
    std::vector<std::vector<int>> targets;     // distinct liquid neurons per input
    std::vector<std::vector<double>> weights;  // ladder per target

    std::vector<double> inject(std::span<const double> amplitudes) const;
};

InputProjection make_input_projection(int n_inputs, int n_liquid, int fan_out,
                                      double weight, uint64_t seed);

}  // namespace lsm
