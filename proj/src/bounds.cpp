#include "lowdiss/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bounds_formulas.hpp"
#include "lowdiss/errors.hpp"

namespace lowdiss {

namespace {

void check_unit_interval(double p_norm, double zeta, double eta_c) {
    if (!(p_norm >= 0.0 && p_norm <= 1.0)) {
        throw DomainError("normalized power must lie in [0, 1], got " + std::to_string(p_norm));
    }
    if (!(zeta >= -1.0 && zeta <= 1.0)) {
        throw DomainError("zeta must lie in [-1, 1], got " + std::to_string(zeta));
    }
    if (!(eta_c > 0.0 && eta_c < 1.0)) {
        throw DomainError("Carnot efficiency must lie in (0, 1), got " + std::to_string(eta_c));
    }
}

void check_power(const EngineSpec& spec, double p) {
    const double pm = p_max(spec);
    if (!(p > 0.0)) {
        throw OutOfRangeError("power must be positive, got " + std::to_string(p));
    }
    if (p > pm * (1.0 + 1e-14)) {
        throw OutOfRangeError("power " + std::to_string(p) + " exceeds maximum power " +
                              std::to_string(pm));
    }
}

double clamp_p_norm(double p_norm) { return std::min(p_norm, 1.0); }

}  // namespace

void EngineSpec::validate() const {
    if (!(m_hot >= 0.0) || !(m_cold >= 0.0)) {
        throw DomainError("dissipation coefficients must be nonnegative");
    }
    if (m_hot == 0.0 && m_cold == 0.0) {
        throw DomainError("at least one dissipation coefficient must be positive");
    }
    if (!(t_cold_bath > 0.0 && t_cold_bath < t_hot_bath) || !std::isfinite(t_hot_bath)) {
        throw DomainError("bath temperatures must satisfy 0 < T_c < T_h");
    }
    if (!(q_rev > 0.0) || !std::isfinite(q_rev)) {
        throw DomainError("reversible heat must be positive");
    }
}

double EngineSpec::m_total() const {
    const double s = std::sqrt(m_hot) + std::sqrt(m_cold);
    return s * s;
}

double EngineSpec::zeta() const { return zeta_from(m_hot, m_cold); }

double zeta_from(double m_hot, double m_cold) {
    const double a = std::sqrt(m_hot);
    const double b = std::sqrt(m_cold);
    return (a - b) / (a + b);
}

double carnot_efficiency(const EngineSpec& spec) {
    spec.validate();
    return spec.eta_carnot();
}

double power(const EngineSpec& spec, StrokeTimes times) {
    if (!(times.t_h > 0.0 && times.t_c > 0.0)) {
        throw DomainError("stroke times must be positive");
    }
    return detail::power(spec.m_hot, spec.m_cold, spec.eta_carnot() * spec.q_rev, times.t_h,
                         times.t_c);
}

double efficiency(const EngineSpec& spec, StrokeTimes times) {
    if (!(times.t_h > 0.0 && times.t_c > 0.0)) {
        throw DomainError("stroke times must be positive");
    }
    const double intake = spec.q_rev - spec.m_hot / times.t_h;
    if (!(intake > 0.0)) {
        throw InvalidRegimeError("no net heat intake from the hot bath at t_h = " +
                                 std::to_string(times.t_h));
    }
    return detail::efficiency(spec.m_hot, spec.m_cold, spec.eta_carnot(), spec.q_rev, times.t_h,
                              times.t_c);
}

HeatPair heats(const EngineSpec& spec, StrokeTimes times) {
    return {spec.q_rev - spec.m_hot / times.t_h,
            -(1.0 - spec.eta_carnot()) * spec.q_rev - spec.m_cold / times.t_c};
}

double p_max(const EngineSpec& spec) {
    spec.validate();
    const double w = spec.eta_carnot() * spec.q_rev;
    return w * w / (4.0 * spec.m_total());
}

StrokeTimes emp_times(const EngineSpec& spec) {
    spec.validate();
    if (!(spec.m_hot > 0.0 && spec.m_cold > 0.0)) {
        throw DomainError("maximum-power times need both dissipation coefficients positive");
    }
    const double pm = p_max(spec);
    return {std::sqrt(spec.m_hot / pm), std::sqrt(spec.m_cold / pm)};
}

BoundWindow tau_window(const EngineSpec& spec, double p) {
    check_power(spec, p);
    const double p_norm = clamp_p_norm(p / p_max(spec));
    const double s = std::sqrt(1.0 - p_norm);
    const double scale = spec.eta_carnot() * spec.q_rev / (2.0 * p);
    return {scale * (1.0 - s), scale * (1.0 + s)};
}

double eta_upper(double p_norm, double zeta, double eta_c) {
    check_unit_interval(p_norm, zeta, eta_c);
    return detail::eta_upper(p_norm, zeta, eta_c);
}

double eta_lower_detailed(double p_norm, double zeta, double eta_c) {
    check_unit_interval(p_norm, zeta, eta_c);
    return detail::eta_lower(p_norm, zeta, eta_c);
}

double eta_at_lower_tangency(double p_norm, double zeta, double eta_c) {
    check_unit_interval(p_norm, zeta, eta_c);
    const double s = std::sqrt(1.0 - p_norm);
    return 0.5 * (1.0 - s) / (1.0 - 0.25 * eta_c * (1.0 + zeta) * (1.0 + s));
}

double universal_constraint_slack(NormalizedPoint point, double eta_c) {
    return detail::eq_constraint_slack(point.p_norm, point.eta_norm, eta_c);
}

double universal_lower_slack(NormalizedPoint point) {
    return detail::universal_lower_slack(point.p_norm, point.eta_norm);
}

double window_slack(const EngineSpec& spec, StrokeTimes times) {
    const double tau = times.total();
    const double p = power(spec, times);
    const double m = spec.m_total();
    return -(p * tau * tau - spec.eta_carnot() * spec.q_rev * tau + m) / m;
}

StrokeTimes times_at_upper_bound(const EngineSpec& spec, double p) {
    check_power(spec, p);
    const double eta_c = spec.eta_carnot();
    const double p_norm = clamp_p_norm(p / p_max(spec));
    const double tau_plus = tau_window(spec, p).tau_plus;
    const double en = detail::eta_upper(p_norm, spec.zeta(), eta_c);
    // Double root of t_c^2 + (a - tau_plus) t_c + c = 0 where
    // a = ((1 - en eta_C) M_h - M_c) / ((1 - en) eta_C Q).
    const double a = ((1.0 - en * eta_c) * spec.m_hot - spec.m_cold) /
                     ((1.0 - en) * eta_c * spec.q_rev);
    double t_c = 0.5 * (tau_plus - a);
    t_c = std::clamp(t_c, 0.0, tau_plus);
    return {tau_plus - t_c, t_c};
}

StrokeTimes th_at_lower_bound(const EngineSpec& spec, double p) {
    check_power(spec, p);
    const double tau_minus = tau_window(spec, p).tau_minus;
    const double z = spec.zeta();
    const double t_h = 0.5 * tau_minus * (1.0 + z);
    const double t_c = tau_minus - t_h;
    if (t_c < 0.0 || t_h < 0.0) {
        throw DegenerateError("lower-bound solver left the admissible quadrant");
    }
    return {t_h, t_c};
}

double monotonicity_scan(double eta_c, std::size_t grid_p, std::size_t grid_zeta, double h) {
    if (grid_p < 2 || grid_zeta < 2) {
        throw DomainError("monotonicity scan needs at least a 2x2 grid");
    }
    if (!(h > 0.0 && h <= 1e-3)) {
        throw DomainError("finite-difference step must lie in (0, 1e-3]");
    }
    if (!(eta_c > 0.0 && eta_c < 1.0)) {
        throw DomainError("Carnot efficiency must lie in (0, 1)");
    }
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_p; ++i) {
        const double pn = static_cast<double>(i) / static_cast<double>(grid_p - 1);
        for (std::size_t j = 0; j < grid_zeta; ++j) {
            const double z = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(grid_zeta - 1);
            double d;
            if (z - h < -1.0) {
                d = (detail::eta_upper(pn, z + h, eta_c) - detail::eta_upper(pn, z, eta_c)) / h;
            } else if (z + h > 1.0) {
                d = (detail::eta_upper(pn, z, eta_c) - detail::eta_upper(pn, z - h, eta_c)) / h;
            } else {
                d = (detail::eta_upper(pn, z + h, eta_c) - detail::eta_upper(pn, z - h, eta_c)) /
                    (2.0 * h);
            }
            worst = std::min(worst, d);
        }
    }
    return worst;
}

double mni_pmax(const EngineSpec& spec, StrokeTimes times) {
    if (!(times.t_h > 0.0 && times.t_c > 0.0)) {
        throw DomainError("stroke times must be positive");
    }
    const double w = spec.eta_carnot() * spec.q_rev;
    const double rate = spec.m_hot / times.t_h + spec.m_cold / times.t_c;
    return w * w / (4.0 * rate * times.total());
}

}  // namespace lowdiss
