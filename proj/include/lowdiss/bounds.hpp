// bounds.hpp - low-dissipation engine model and its efficiency/power bounds
//
// Temperatures are energies (k_B = 1). A low-dissipation engine is fully
// described by its two dissipation coefficients M_h, M_c, the bath
// temperatures and the reversible heat Q_h^(r) drawn from the hot bath.
// Every function here is pure.

#pragma once

#include <cstddef>

namespace lowdiss {

struct EngineSpec {
    double m_hot{};        // M_h, energy * time
    double m_cold{};       // M_c, energy * time
    double t_hot_bath{};   // T_h
    double t_cold_bath{};  // T_c
    double q_rev{};        // Q_h^(r)

    /// Throws DomainError unless M_h, M_c >= 0 (not both 0), 0 < T_c < T_h, Q_h^(r) > 0.
    void validate() const;

    double eta_carnot() const { return 1.0 - t_cold_bath / t_hot_bath; }
    /// (sqrt(M_h) + sqrt(M_c))^2
    double m_total() const;
    /// Dissipation asymmetry in [-1, 1]; +1 when all dissipation is on the hot side.
    double zeta() const;
};

struct StrokeTimes {
    double t_h{};
    double t_c{};

    double total() const { return t_h + t_c; }
};

struct NormalizedPoint {
    double p_norm{};    // P / P_max
    double eta_norm{};  // eta / eta_C
};

struct BoundWindow {
    double tau_minus{};
    double tau_plus{};
};

double carnot_efficiency(const EngineSpec& spec);

/// Cycle power. Negative when dissipation exceeds the reversible work.
double power(const EngineSpec& spec, StrokeTimes times);

/// Cycle efficiency. Throws InvalidRegimeError when Q_h^(r) - M_h/t_h <= 0.
double efficiency(const EngineSpec& spec, StrokeTimes times);

/// Hot- and cold-bath heats (Q_c is negative for a working engine).
struct HeatPair {
    double q_h{};
    double q_c{};
};
HeatPair heats(const EngineSpec& spec, StrokeTimes times);

double p_max(const EngineSpec& spec);

/// Stroke times achieving p_max: t_x = sqrt(M_x / P_max). Requires M_h, M_c > 0.
StrokeTimes emp_times(const EngineSpec& spec);

/// Admissible total cycle time at output power p, 0 < p <= p_max.
BoundWindow tau_window(const EngineSpec& spec, double p);

/// Upper bound on eta/eta_C at normalized power p_norm for dissipation asymmetry zeta.
double eta_upper(double p_norm, double zeta, double eta_c);

/// Detailed lower bound on eta/eta_C. Decreasing in zeta; at zeta = -1 it is
/// the universal lower bound (1 - sqrt(1 - p_norm)) / 2.
double eta_lower_detailed(double p_norm, double zeta, double eta_c);

/// Normalized efficiency at the point where the power level curve touches
/// t_h + t_c = tau_minus. This is an attainable efficiency, not a bound.
double eta_at_lower_tangency(double p_norm, double zeta, double eta_c);

/// 1 - [eta_norm + (1 - eta_C) p_norm / (2 (1 + sqrt(1 - p_norm)) - eta_C p_norm)].
/// Nonnegative for every realizable point; zero on the zeta = 1 upper bound.
double universal_constraint_slack(NormalizedPoint point, double eta_c);

/// 2 eta_norm + sqrt(1 - p_norm) - 1; nonnegative for every realizable point.
double universal_lower_slack(NormalizedPoint point);

/// -(P tau^2 - eta_C Q tau + M) / M at tau = t_h + t_c; nonnegative whenever power > 0.
double window_slack(const EngineSpec& spec, StrokeTimes times);

/// Times on t_h + t_c = tau_plus where the efficiency level curve is tangent to
/// that line; efficiency there equals eta_upper * eta_C. Power at these
/// times is <= p, with equality only when the tangency coincides with the
/// point where the power level curve touches tau_plus (e.g. zeta = 1).
StrokeTimes times_at_upper_bound(const EngineSpec& spec, double p);

/// The unique point on t_h + t_c = tau_minus with power p (double root of the
/// quadratic in t_h obtained by substituting the constraint into the power).
/// t_h = tau_minus (1 + zeta) / 2. May return t_h = 0 or t_c = 0 when zeta = -1 or +1.
StrokeTimes th_at_lower_bound(const EngineSpec& spec, double p);

/// Minimum central-difference d(eta_upper)/d(zeta) over a uniform
/// grid_p x grid_zeta grid on [0,1] x [-1,1]; one-sided at zeta = +-1.
double monotonicity_scan(double eta_c, std::size_t grid_p, std::size_t grid_zeta, double h);

/// Tight-coupling maximum power of the minimally nonlinear irreversible model
/// expressed with low-dissipation parameters. Depends on the stroke times and
/// never exceeds p_max.
double mni_pmax(const EngineSpec& spec, StrokeTimes times);

/// Dissipation asymmetry from two coefficients.
double zeta_from(double m_hot, double m_cold);

}  // namespace lowdiss
