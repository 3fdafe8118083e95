#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lsm {

struct StdpParams {
    double a_plus = 0.01;
    double a_minus = 0.012;
    double tau_plus = 5.0;   // ticks
    double tau_minus = 5.0;  // ticks
};

struct PlasticityParams {
    double epsilon = 0.001;       // uniform weight decay
    double learning_rate = 0.01;  // scale applied to each update
    double w_min = 0.0;
    double w_max = 8.0;
    double tau_bcm = 0.9;        // spike trace decay per tick
    double theta_window = 25.0;  // sliding-threshold horizon, in trace samples
    // Reward shaping for the gated rule: the dopamine signal saturates at
    // +-da_clip, and the recurrent layer learns slower than the readout.
    double da_clip = 10.0;
    double liquid_lr_scale = 0.25;
    StdpParams stdp;

    void validate() const;
};

// e' = tau_bcm * e + o
double update_trace(double e, bool spike, double tau_bcm);

// phi(e) = e * (e - theta_m): depression below the sliding threshold,
// potentiation above it.
double bcm_phi(double e_post, double theta_m);

double bcm_update(double m, double e_pre, double e_post, double theta_m,
                  const PlasticityParams& p);

// Same update gated by a scalar dopamine signal. Zero freezes the weight,
// a negative signal reverses the direction.
double da_bcm_update(double m, double e_pre, double e_post, double theta_m,
                     double da, const PlasticityParams& p);

// Pair-based exponential STDP; delta_t is the post-minus-pre spike lag.
double stdp_update(double m, int delta_t, const PlasticityParams& p);

// Exponential moving average of the squared postsynaptic trace.
double update_theta(double theta_m, double e_post, double window);

// Per-neuron traces and sliding thresholds for one layer. Traces advance
// every tick; the per-step learning rule reads the trace averaged over the
// decision window (phase-free), and the sliding threshold is advanced on the
// same averaged samples so both see the same statistics.
struct TraceLayer {
    std::vector<double> e;
    std::vector<double> theta;
    std::vector<double> window_sum;
    int window_ticks = 0;

    explicit TraceLayer(size_t n = 0)
        : e(n, 0.0), theta(n, 0.0), window_sum(n, 0.0) {}

    void reset_traces() {
        std::fill(e.begin(), e.end(), 0.0);
        begin_window();
    }

    void begin_window() {
        std::fill(window_sum.begin(), window_sum.end(), 0.0);
        window_ticks = 0;
    }

    void tick(std::span<const uint8_t> fired, const PlasticityParams& p) {
        for (size_t i = 0; i < e.size(); ++i) {
            e[i] = update_trace(e[i], fired[i] != 0, p.tau_bcm);
            window_sum[i] += e[i];
        }
        ++window_ticks;
    }

    double window_mean(size_t i) const {
        return window_ticks == 0 ? 0.0 : window_sum[i] / window_ticks;
    }

    void sample_thetas(const PlasticityParams& p) {
        for (size_t i = 0; i < e.size(); ++i)
            theta[i] = update_theta(theta[i], window_mean(i), p.theta_window);
    }
};

}  // namespace lsm
