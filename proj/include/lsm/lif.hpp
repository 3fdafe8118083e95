#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsm/matrix.hpp"

namespace lsm {

struct LifParams {
    double tau_m = 2.0;    // membrane time constant, in ticks
    double v_th = 1.0;     // firing threshold
    double v_reset = 0.0;  // potential after a spike
    int ticks_per_step = 20;

    void validate() const;
};

struct NeuronState {
    std::vector<double> v;
    std::vector<uint8_t> fired;  // spikes emitted on the current tick

    NeuronState() = default;
    explicit NeuronState(size_t n) : v(n, 0.0), fired(n, 0) {}

    size_t size() const { return v.size(); }
    void reset() {
        std::fill(v.begin(), v.end(), 0.0);
        std::fill(fired.begin(), fired.end(), 0);
    }
};

struct Synapse {
    uint32_t pre = 0;
    uint32_t post = 0;
    double w = 0.0;
};

// Directed weighted edges grouped by presynaptic neuron, so a tick only
// touches the fan-out of the neurons that actually fired.
class SynapseList {
public:
    SynapseList() = default;
    SynapseList(size_t n_neurons, std::vector<Synapse> edges);

    static SynapseList from_dense(const Matrix& w);
    Matrix to_dense() const;

    size_t neuron_count() const { return n_; }
    size_t edge_count() const { return edges_.size(); }

    std::span<Synapse> edges() { return edges_; }
    std::span<const Synapse> edges() const { return edges_; }

    // currents[post] += w for every edge whose presynaptic neuron fired
    void propagate(std::span<const uint8_t> fired, std::span<double> currents) const;

private:
    size_t n_ = 0;
    std::vector<Synapse> edges_;     // sorted by (pre, post)
    std::vector<uint32_t> offsets_;  // edge range per presynaptic neuron
};

// One forward-Euler tick: v' = v + (I - v)/tau with I = external input plus
// the recurrent drive from the previous tick's spikes. Neurons at or above
// threshold fire and reset. Fails fast on any dimension mismatch.
void lif_tick(NeuronState& state, std::span<const double> input_current,
              const Matrix& weights, const LifParams& params);
void lif_tick(NeuronState& state, std::span<const double> input_current,
              const SynapseList& weights, const LifParams& params);

// Drives the network for tick_currents.rows() ticks and records who fired
// when. Starts from rest unless a carry-over state is supplied.
SpikeStateMatrix run_window(const Matrix& weights, const Matrix& tick_currents,
                            const LifParams& params, NeuronState* carry = nullptr);
SpikeStateMatrix run_window(const SynapseList& weights, const Matrix& tick_currents,
                            const LifParams& params, NeuronState* carry = nullptr);

// Same external current on every tick of the window.
Matrix constant_currents(std::span<const double> amplitudes, size_t window);

}  // namespace lsm
