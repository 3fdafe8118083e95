#include "lsm/lif.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsm {

void LifParams::validate() const {
    if (tau_m <= 0.0) throw std::invalid_argument("LifParams: tau_m must be > 0");
    if (v_th <= v_reset)
        throw std::invalid_argument("LifParams: v_th must exceed v_reset");
    if (ticks_per_step < 1)
        throw std::invalid_argument("LifParams: ticks_per_step must be >= 1");
}

SynapseList::SynapseList(size_t n_neurons, std::vector<Synapse> edges)
    : n_(n_neurons), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
        if (e.pre >= n_ || e.post >= n_)
            throw std::invalid_argument("SynapseList: edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Synapse& a, const Synapse& b) {
        return a.pre != b.pre ? a.pre < b.pre : a.post < b.post;
    });
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) ++offsets_[e.pre + 1];
    for (size_t i = 1; i <= n_; ++i) offsets_[i] += offsets_[i - 1];
}

SynapseList SynapseList::from_dense(const Matrix& w) {
    if (w.rows() != w.cols())
        throw std::invalid_argument("SynapseList: weight matrix must be square");
    std::vector<Synapse> edges;
    for (size_t i = 0; i < w.rows(); ++i)
        for (size_t j = 0; j < w.cols(); ++j)
            if (w(i, j) != 0.0)
                edges.push_back({static_cast<uint32_t>(i),
                                 static_cast<uint32_t>(j), w(i, j)});
    return SynapseList(w.rows(), std::move(edges));
}

Matrix SynapseList::to_dense() const {
    Matrix w(n_, n_, 0.0);
    for (const auto& e : edges_) w(e.pre, e.post) = e.w;
    return w;
}

void SynapseList::propagate(std::span<const uint8_t> fired,
                            std::span<double> currents) const {
    for (size_t pre = 0; pre < n_; ++pre) {
        if (!fired[pre]) continue;
        for (uint32_t k = offsets_[pre]; k < offsets_[pre + 1]; ++k)
            currents[edges_[k].post] += edges_[k].w;
    }
}

namespace {

// Shared threshold pass once the total drive for the tick is known.
void integrate_and_fire(NeuronState& state, std::span<const double> total_current,
                        const LifParams& p) {
    for (size_t i = 0; i < state.size(); ++i) {
        double v = state.v[i] + (total_current[i] - state.v[i]) / p.tau_m;
        if (v >= p.v_th) {
            state.v[i] = p.v_reset;
            state.fired[i] = 1;
        } else {
            state.v[i] = v;
            state.fired[i] = 0;
        }
    }
}

}  // namespace

void lif_tick(NeuronState& state, std::span<const double> input_current,
              const Matrix& weights, const LifParams& params) {
    params.validate();
    const size_t n = state.size();
    if (input_current.size() != n || weights.rows() != n || weights.cols() != n)
        throw std::invalid_argument("lif_tick: dimension mismatch");
    std::vector<double> total(input_current.begin(), input_current.end());
    for (size_t i = 0; i < n; ++i) {
        if (!state.fired[i]) continue;
        for (size_t j = 0; j < n; ++j) total[j] += weights(i, j);
    }
    integrate_and_fire(state, total, params);
}

void lif_tick(NeuronState& state, std::span<const double> input_current,
              const SynapseList& weights, const LifParams& params) {
    params.validate();
    const size_t n = state.size();
    if (input_current.size() != n || weights.neuron_count() != n)
        throw std::invalid_argument("lif_tick: dimension mismatch");
    std::vector<double> total(input_current.begin(), input_current.end());
    weights.propagate(state.fired, total);
    integrate_and_fire(state, total, params);
}

namespace {

template <typename Weights>
SpikeStateMatrix run_window_impl(const Weights& weights, const Matrix& tick_currents,
                                 const LifParams& params, NeuronState* carry) {
    params.validate();
    if (tick_currents.rows() == 0)
        throw std::invalid_argument("run_window: window must be at least one tick");
    const size_t n = tick_currents.cols();
    NeuronState local(n);
    NeuronState& state = carry ? *carry : local;
    if (state.size() != n)
        throw std::invalid_argument("run_window: carried state has wrong size");

    SpikeStateMatrix spikes(n, tick_currents.rows());
    for (size_t t = 0; t < tick_currents.rows(); ++t) {
        lif_tick(state, tick_currents.row(t), weights, params);
        for (size_t i = 0; i < n; ++i) spikes(i, t) = state.fired[i];
    }
    return spikes;
}

}  // namespace

SpikeStateMatrix run_window(const Matrix& weights, const Matrix& tick_currents,
                            const LifParams& params, NeuronState* carry) {
    if (weights.rows() != tick_currents.cols())
        throw std::invalid_argument("run_window: weights do not match input width");
    return run_window_impl(weights, tick_currents, params, carry);
}

SpikeStateMatrix run_window(const SynapseList& weights, const Matrix& tick_currents,
                            const LifParams& params, NeuronState* carry) {
    if (weights.neuron_count() != tick_currents.cols())
        throw std::invalid_argument("run_window: weights do not match input width");
    return run_window_impl(weights, tick_currents, params, carry);
}

Matrix constant_currents(std::span<const double> amplitudes, size_t window) {
    Matrix m(window, amplitudes.size());
    for (size_t t = 0; t < window; ++t)
        for (size_t i = 0; i < amplitudes.size(); ++i) m(t, i) = amplitudes[i];
    return m;
}

}  // namespace lsm
