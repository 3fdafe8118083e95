#include "lsm/agent.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsm {

PlasticityRule rule_from_string(const std::string& name) {
    if (name == "none") return PlasticityRule::None;
    if (name == "stdp") return PlasticityRule::Stdp;
    if (name == "da-bcm") return PlasticityRule::DaBcm;
    throw std::invalid_argument("unknown plasticity rule: " + name);
}

const char* to_string(PlasticityRule rule) {
    switch (rule) {
        case PlasticityRule::None: return "none";
        case PlasticityRule::Stdp: return "stdp";
        case PlasticityRule::DaBcm: return "da-bcm";
    }
    return "?";
}

int lsm_policy(std::span<const int> spike_counts, Rng& rng) {
    if (spike_counts.empty())
        throw std::invalid_argument("lsm_policy: no actions");
    int best = spike_counts[0];
    for (int c : spike_counts) best = std::max(best, c);
    std::vector<int> tied;
    for (size_t a = 0; a < spike_counts.size(); ++a)
        if (spike_counts[a] == best) tied.push_back(static_cast<int>(a));
    return tied[rng.index(tied.size())];
}

LsmAgent::LsmAgent(const AgentParams& params, Matrix liquid_weights,
                   InputProjection projection, const FitnessProbe& probe,
                   int n_actions, uint64_t readout_seed, uint64_t policy_seed)
    : params_(params),
      n_actions_(n_actions),
      liquid_(SynapseList::from_dense(liquid_weights)),
      projection_(std::move(projection)),
      liquid_state_(liquid_weights.rows()),
      liquid_traces_(liquid_weights.rows()),
      readout_traces_(n_actions),
      policy_rng_(policy_seed) {
    params_.lif.validate();
    params_.plast.validate();
    if (n_actions_ < 1) throw std::invalid_argument("LsmAgent: need actions");

    // Readout wiring is gated on which neurons respond to the task's inputs.
    SpikeStateMatrix probe_spikes = probe.spike_record(liquid_);
    readout_ = init_readout(probe_spikes, n_actions_, probe.topo().beta, readout_seed);

    if (params_.readout_v_th <= 0.0) {
        // Pick the threshold from the drive the wired readout actually sees
        // during the probe, so spike counts stay informative for this liquid.
        std::vector<double> drives;
        for (size_t t = 0; t < probe_spikes.cols(); ++t) {
            std::vector<double> rin(n_actions_, 0.0);
            for (size_t i = 0; i < probe_spikes.rows(); ++i)
                if (probe_spikes(i, t)) rin[readout_.class_of[i]] += readout_.w[i];
            for (double d : rin)
                if (d > 0.0) drives.push_back(d);
        }
        if (drives.empty()) {
            params_.readout_v_th = 1.0;
        } else {
            std::sort(drives.begin(), drives.end());
            double q75 = drives[(drives.size() * 3) / 4];
            params_.readout_v_th = std::max(0.5, params_.readout_vth_scale * q75);
        }
    }

    readout_v_.assign(n_actions_, 0.0);
    readout_fired_.assign(n_actions_, 0);
    last_liquid_spike_.assign(liquid_state_.size(), -1);
    last_readout_spike_.assign(n_actions_, -1);
}

void LsmAgent::begin_episode() {
    liquid_state_.reset();
    std::fill(readout_v_.begin(), readout_v_.end(), 0.0);
    std::fill(readout_fired_.begin(), readout_fired_.end(), 0);
    liquid_traces_.reset_traces();
    readout_traces_.reset_traces();
    std::fill(last_liquid_spike_.begin(), last_liquid_spike_.end(), -1L);
    std::fill(last_readout_spike_.begin(), last_readout_spike_.end(), -1L);
    tick_ = 0;
    window_liquid_spikes_.clear();
    window_readout_spikes_.clear();
}

int LsmAgent::act(std::span<const double> observation_amplitudes) {
    const size_t n = liquid_state_.size();
    std::vector<double> input = projection_.inject(observation_amplitudes);
    std::vector<int> counts(n_actions_, 0);

    window_liquid_spikes_.clear();
    window_readout_spikes_.clear();
    window_start_tick_ = tick_;
    liquid_traces_.begin_window();
    readout_traces_.begin_window();
    // The readout counts one decision window at a time; leftover charge from
    // the previous window would smear the previous state into this count.
    std::fill(readout_v_.begin(), readout_v_.end(), 0.0);
    std::fill(readout_fired_.begin(), readout_fired_.end(), 0);

    for (int t = 0; t < params_.lif.ticks_per_step; ++t) {
        lif_tick(liquid_state_, input, liquid_, params_.lif);

        // Same-tick drive into the readout layer.
        std::vector<double> readout_in(n_actions_, 0.0);
        for (size_t i = 0; i < n; ++i)
            if (liquid_state_.fired[i])
                readout_in[readout_.class_of[i]] += readout_.w[i];
        for (int a = 0; a < n_actions_; ++a) {
            double v = readout_v_[a] +
                       (readout_in[a] - readout_v_[a]) / params_.readout_tau_m;
            // Subtractive reset keeps the count nearly linear in drive; the
            // one-tick refractory caps the rate at 1/2 so the trace of a
            // steady winner cannot outrun its own sliding threshold.
            if (v >= params_.readout_v_th && !readout_fired_[a]) {
                readout_v_[a] = v - params_.readout_v_th;
                readout_fired_[a] = 1;
                ++counts[a];
            } else {
                readout_v_[a] = v;
                readout_fired_[a] = 0;
            }
        }

        liquid_traces_.tick(liquid_state_.fired, params_.plast);
        readout_traces_.tick(readout_fired_, params_.plast);

        window_liquid_spikes_.push_back(liquid_state_.fired);
        window_readout_spikes_.push_back(readout_fired_);
        ++tick_;
    }
    liquid_traces_.sample_thetas(params_.plast);
    readout_traces_.sample_thetas(params_.plast);
    last_counts_ = counts;

    return lsm_policy(counts, policy_rng_);
}

void LsmAgent::apply_stdp_window() {
    const bool liq = params_.liquid_rule == PlasticityRule::Stdp;
    const bool read = params_.readout_rule == PlasticityRule::Stdp;
    auto edges = liquid_.edges();
    for (size_t t = 0; t < window_liquid_spikes_.size(); ++t) {
        const long now = window_start_tick_ + static_cast<long>(t);
        const auto& lspikes = window_liquid_spikes_[t];
        const auto& rspikes = window_readout_spikes_[t];
        if (liq) {
            for (auto& e : edges) {
                if (lspikes[e.post] && last_liquid_spike_[e.pre] >= 0 &&
                    last_liquid_spike_[e.pre] < now)
                    e.w = stdp_update(
                        e.w, static_cast<int>(now - last_liquid_spike_[e.pre]),
                        params_.plast);
                if (lspikes[e.pre] && last_liquid_spike_[e.post] >= 0 &&
                    last_liquid_spike_[e.post] < now)
                    e.w = stdp_update(
                        e.w, static_cast<int>(last_liquid_spike_[e.post] - now),
                        params_.plast);
            }
        }
        if (read) {
            for (size_t i = 0; i < readout_.class_of.size(); ++i) {
                int c = readout_.class_of[i];
                if (rspikes[c] && last_liquid_spike_[i] >= 0 &&
                    last_liquid_spike_[i] < now)
                    readout_.w[i] = stdp_update(
                        readout_.w[i],
                        static_cast<int>(now - last_liquid_spike_[i]), params_.plast);
                if (lspikes[i] && last_readout_spike_[c] >= 0 &&
                    last_readout_spike_[c] < now)
                    readout_.w[i] = stdp_update(
                        readout_.w[i],
                        static_cast<int>(last_readout_spike_[c] - now), params_.plast);
            }
        }
        for (size_t i = 0; i < lspikes.size(); ++i)
            if (lspikes[i]) last_liquid_spike_[i] = now;
        for (int c = 0; c < n_actions_; ++c)
            if (rspikes[c]) last_readout_spike_[c] = now;
    }
}

void LsmAgent::apply_da_bcm(double da) {
    double gated = std::clamp(da, -params_.plast.da_clip, params_.plast.da_clip);
    if (params_.liquid_rule == PlasticityRule::DaBcm) {
        PlasticityParams liquid_plast = params_.plast;
        liquid_plast.learning_rate *= params_.plast.liquid_lr_scale;
        for (auto& e : liquid_.edges())
            e.w = da_bcm_update(e.w, liquid_traces_.window_mean(e.pre),
                                liquid_traces_.window_mean(e.post),
                                liquid_traces_.theta[e.post], gated, liquid_plast);
    }
    if (params_.readout_rule == PlasticityRule::DaBcm) {
        for (size_t i = 0; i < readout_.class_of.size(); ++i) {
            int c = readout_.class_of[i];
            readout_.w[i] = da_bcm_update(readout_.w[i], liquid_traces_.window_mean(i),
                                          readout_traces_.window_mean(c),
                                          readout_traces_.theta[c], gated,
                                          params_.plast);
        }
    }
}

void LsmAgent::learn(double da) {
    // Spike-time bookkeeping advances even when both layers are frozen, so
    // switching rules mid-experiment would not see stale history.
    if (params_.liquid_rule == PlasticityRule::Stdp ||
        params_.readout_rule == PlasticityRule::Stdp) {
        apply_stdp_window();
    } else {
        for (size_t t = 0; t < window_liquid_spikes_.size(); ++t) {
            const long now = window_start_tick_ + static_cast<long>(t);
            for (size_t i = 0; i < window_liquid_spikes_[t].size(); ++i)
                if (window_liquid_spikes_[t][i]) last_liquid_spike_[i] = now;
            for (int c = 0; c < n_actions_; ++c)
                if (window_readout_spikes_[t][c]) last_readout_spike_[c] = now;
        }
    }
    apply_da_bcm(da);
}

size_t LsmAgent::parameter_count() const {
    size_t count = 0;
    for (const auto& e : liquid_.edges()) count += e.w != 0.0;
    count += readout_.nonzero_count();
    for (const auto& t : projection_.targets) count += t.size();
    return count;
}

}  // namespace lsm
