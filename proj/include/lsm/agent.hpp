#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lsm/evolution.hpp"
#include "lsm/lif.hpp"
#include "lsm/plasticity.hpp"
#include "lsm/rng.hpp"
#include "lsm/topology.hpp"

namespace lsm {

enum class PlasticityRule { None, Stdp, DaBcm };

PlasticityRule rule_from_string(const std::string& name);
const char* to_string(PlasticityRule rule);

// Winner by spike count; ties break uniformly at random among the tied set.
int lsm_policy(std::span<const int> spike_counts, Rng& rng);

struct AgentParams {
    LifParams lif;
    // Readout neurons pool many synapses per tick, so they carry their own
    // membrane constant and threshold. A zero threshold means: calibrate from
    // the probe response, so counts land in the responsive band regardless of
    // task or class sizes.
    double readout_v_th = 0.0;
    double readout_tau_m = 3.0;
    double readout_vth_scale = 0.5;  // calibrated threshold as a fraction of probe drive
    PlasticityParams plast;
    PlasticityRule liquid_rule = PlasticityRule::DaBcm;
    PlasticityRule readout_rule = PlasticityRule::DaBcm;
};

// A liquid wired to spiking readout neurons, one per action. Each decision
// runs the liquid for ticks_per_step ticks and picks the readout with the
// most spikes; learn() then adjusts the plastic layers with the step reward.
class LsmAgent {
public:
    LsmAgent(const AgentParams& params, Matrix liquid_weights,
             InputProjection projection, const FitnessProbe& probe,
             int n_actions, uint64_t readout_seed, uint64_t policy_seed);

    int act(std::span<const double> observation_amplitudes);
    void learn(double da);
    void begin_episode();

    Matrix liquid_dense() const { return liquid_.to_dense(); }
    const ReadoutWeights& readout() const { return readout_; }
    const std::vector<int>& last_counts() const { return last_counts_; }
    const TraceLayer& liquid_traces() const { return liquid_traces_; }
    const TraceLayer& readout_traces() const { return readout_traces_; }
    double readout_threshold() const { return params_.readout_v_th; }

    // Plastic parameters: liquid edges, readout edges, input projection edges.
    size_t parameter_count() const;

    int n_actions() const { return n_actions_; }

private:
    void apply_stdp_window();
    void apply_da_bcm(double da);

    AgentParams params_;
    int n_actions_ = 0;

    SynapseList liquid_;
    InputProjection projection_;
    ReadoutWeights readout_;

    NeuronState liquid_state_;
    std::vector<double> readout_v_;
    std::vector<uint8_t> readout_fired_;

    TraceLayer liquid_traces_;
    TraceLayer readout_traces_;

    std::vector<int> last_counts_;

    // Spike history of the last decision window, consumed by STDP in learn().
    std::vector<std::vector<uint8_t>> window_liquid_spikes_;
    std::vector<std::vector<uint8_t>> window_readout_spikes_;

    // Last spike tick per neuron within the episode; -1 when silent so far.
    std::vector<long> last_liquid_spike_;
    std::vector<long> last_readout_spike_;
    long tick_ = 0;
    long window_start_tick_ = 0;

    Rng policy_rng_;
};

}  // namespace lsm
