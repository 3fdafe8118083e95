#include "lsm/topology.hpp"

#include <cmath>
#include <stdexcept>

namespace lsm {

double LiquidGrid::distance(int i, int j) const {
    double dx = x_of(i) - x_of(j);
    double dy = y_of(i) - y_of(j);
    return std::sqrt(dx * dx + dy * dy);
}

void TopologyParams::validate() const {
    if (lambda <= 0.0) throw std::invalid_argument("TopologyParams: lambda must be > 0");
    if (alpha <= 0.0) throw std::invalid_argument("TopologyParams: alpha must be > 0");
    if (d_th <= 0.0) throw std::invalid_argument("TopologyParams: d_th must be > 0");
    if (sparsity <= 0.0 || sparsity > 1.0)
        throw std::invalid_argument("TopologyParams: sparsity must be in (0, 1]");
    if (input_fan_out < 1)
        throw std::invalid_argument("TopologyParams: input_fan_out must be >= 1");
}

double connection_probability(double d, double lambda) {
    if (lambda <= 0.0)
        throw std::invalid_argument("connection_probability: lambda must be > 0");
    if (d < 0.0)
        throw std::invalid_argument("connection_probability: distance must be >= 0");
    return std::exp(-(d * d) / (lambda * lambda));
}

bool edge_allowed(const LiquidGrid& grid, double d_th, int i, int j) {
    return i != j && grid.distance(i, j) < d_th;
}

Matrix init_liquid(const LiquidGrid& grid, const TopologyParams& params,
                   uint64_t seed) {
    params.validate();
    Rng rng(seed);
    const int n = grid.n();
    Matrix w(n, n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!edge_allowed(grid, params.d_th, i, j)) continue;
            if (!rng.bernoulli(params.sparsity)) continue;
            w(i, j) = params.alpha *
                      connection_probability(grid.distance(i, j), params.lambda);
        }
    }
    return w;
}

size_t ReadoutWeights::nonzero_count() const {
    size_t count = 0;
    for (double x : w) count += x != 0.0;
    return count;
}

ReadoutWeights init_readout(const SpikeStateMatrix& probe, int n_readout,
                            double beta, uint64_t seed) {
    const size_t n = probe.rows();
    if (n_readout < 1 || static_cast<size_t>(n_readout) > n)
        throw std::invalid_argument("init_readout: need 1 <= n_readout <= liquid size");

    Rng rng(seed);

    // Balanced random partition: shuffle, then deal round-robin into classes.
    std::vector<int> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    rng.shuffle(order);

    ReadoutWeights out;
    out.n_readout = n_readout;
    out.class_of.assign(n, 0);
    out.w.assign(n, 0.0);
    for (size_t k = 0; k < n; ++k)
        out.class_of[order[k]] = static_cast<int>(k % n_readout);

    for (size_t i = 0; i < n; ++i) {
        bool fired = false;
        for (size_t t = 0; t < probe.cols() && !fired; ++t) fired = probe(i, t) != 0;
        // Draw for every neuron so the wiring of active neurons does not
        // depend on which other neurons happened to fire.
        double u = rng.uniform_open01();
        out.w[i] = fired ? beta * u : 0.0;
    }
    return out;
}

std::vector<double> InputProjection::inject(std::span<const double> amplitudes) const {
    if (amplitudes.size() != targets.size())
        throw std::invalid_argument("InputProjection: amplitude count mismatch");
    std::vector<double> currents(n_liquid, 0.0);
    for (size_t i = 0; i < targets.size(); ++i)
        for (size_t k = 0; k < targets[i].size(); ++k)
            currents[targets[i][k]] += weights[i][k] * amplitudes[i];
    return currents;
}

InputProjection make_input_projection(int n_inputs, int n_liquid, int fan_out,
                                      double weight, uint64_t seed) {
    if (fan_out > n_liquid)
        throw std::invalid_argument("make_input_projection: fan_out exceeds liquid size");
    Rng rng(seed);
    InputProjection proj;
    proj.n_liquid = n_liquid;
    proj.targets.resize(n_inputs);
    proj.weights.resize(n_inputs);
    for (int i = 0; i < n_inputs; ++i) {
        // Sample distinct targets per input.
        std::vector<int> pool(n_liquid);
        for (int k = 0; k < n_liquid; ++k) pool[k] = k;
        for (int k = 0; k < fan_out; ++k) {
            size_t pick = k + rng.index(pool.size() - k);
            std::swap(pool[k], pool[pick]);
            proj.targets[i].push_back(pool[k]);
            // Log-spaced ladder from 0.45x to 1.55x of the base weight, so
            // each amplitude level recruits a different prefix of the targets.
            double frac = fan_out > 1 ? static_cast<double>(k) / (fan_out - 1) : 1.0;
            proj.weights[i].push_back(weight * 0.45 *
                                      std::pow(1.55 / 0.45, frac));
        }
    }
    return proj;
}

}  // namespace lsm
