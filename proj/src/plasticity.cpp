#include "lsm/plasticity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lsm {

void PlasticityParams::validate() const {
    if (epsilon < 0.0) throw std::invalid_argument("PlasticityParams: epsilon must be >= 0");
    if (w_min >= w_max) throw std::invalid_argument("PlasticityParams: w_min must be < w_max");
    if (tau_bcm < 0.0 || tau_bcm >= 1.0)
        throw std::invalid_argument("PlasticityParams: tau_bcm must be in [0, 1)");
    if (theta_window < 1.0)
        throw std::invalid_argument("PlasticityParams: theta_window must be >= 1");
}

double update_trace(double e, bool spike, double tau_bcm) {
    return tau_bcm * e + (spike ? 1.0 : 0.0);
}

double bcm_phi(double e_post, double theta_m) {
    return e_post * (e_post - theta_m);
}

double bcm_update(double m, double e_pre, double e_post, double theta_m,
                  const PlasticityParams& p) {
    double dm = bcm_phi(e_post, theta_m) * e_pre - p.epsilon * m;
    return std::clamp(m + p.learning_rate * dm, p.w_min, p.w_max);
}

double da_bcm_update(double m, double e_pre, double e_post, double theta_m,
                     double da, const PlasticityParams& p) {
    double dm = bcm_phi(e_post, theta_m) * e_pre - p.epsilon * m;
    return std::clamp(m + p.learning_rate * da * dm, p.w_min, p.w_max);
}

double stdp_update(double m, int delta_t, const PlasticityParams& p) {
    if (delta_t > 0)
        m += p.stdp.a_plus * std::exp(-delta_t / p.stdp.tau_plus);
    else if (delta_t < 0)
        m -= p.stdp.a_minus * std::exp(delta_t / p.stdp.tau_minus);
    return std::clamp(m, p.w_min, p.w_max);
}

double update_theta(double theta_m, double e_post, double window) {
    double k = 1.0 / window;
    return (1.0 - k) * theta_m + k * e_post * e_post;
}

}  // namespace lsm
