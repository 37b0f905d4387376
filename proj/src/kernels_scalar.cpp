#include <cmath>
#include <limits>
#include <stdexcept>

#include "bounds_formulas.hpp"
#include "kernels_common.hpp"
#include "lowdiss/kernels.hpp"

namespace lowdiss::kernels::scalar {

void engine_batch(const EngineSpec& spec, std::span<const double> t_h,
                  std::span<const double> t_c, std::span<double> power,
                  std::span<double> efficiency) {
    require_same_size(t_h.size(), t_c.size(), power.size(), efficiency.size());
    const double eta_c = spec.eta_carnot();
    const double work_rev = eta_c * spec.q_rev;
    for (std::size_t i = 0; i < t_h.size(); ++i) {
        power[i] = detail::power(spec.m_hot, spec.m_cold, work_rev, t_h[i], t_c[i]);
        const double intake = spec.q_rev - spec.m_hot / t_h[i];
        efficiency[i] = intake > 0.0 ? detail::efficiency(spec.m_hot, spec.m_cold, eta_c,
                                                          spec.q_rev, t_h[i], t_c[i])
                                     : std::numeric_limits<double>::quiet_NaN();
    }
}

void eta_upper_batch(std::span<const double> p_norm, double zeta, double eta_c,
                     std::span<double> out) {
    require_same_size(p_norm.size(), out.size());
    for (std::size_t i = 0; i < p_norm.size(); ++i) {
        out[i] = detail::eta_upper(p_norm[i], zeta, eta_c);
    }
}

void eta_lower_batch(std::span<const double> p_norm, double zeta, double eta_c,
                     std::span<double> out) {
    require_same_size(p_norm.size(), out.size());
    for (std::size_t i = 0; i < p_norm.size(); ++i) {
        out[i] = detail::eta_lower(p_norm[i], zeta, eta_c);
    }
}

void constraint_slack_batch(std::span<const double> p_norm, std::span<const double> eta_norm,
                            double eta_c, std::span<double> out) {
    require_same_size(p_norm.size(), eta_norm.size(), out.size());
    for (std::size_t i = 0; i < p_norm.size(); ++i) {
        out[i] = detail::eq_constraint_slack(p_norm[i], eta_norm[i], eta_c);
    }
}

void lower_slack_batch(std::span<const double> p_norm, std::span<const double> eta_norm,
                       std::span<double> out) {
    require_same_size(p_norm.size(), eta_norm.size(), out.size());
    for (std::size_t i = 0; i < p_norm.size(); ++i) {
        out[i] = detail::universal_lower_slack(p_norm[i], eta_norm[i]);
    }
}

}  // namespace lowdiss::kernels::scalar
