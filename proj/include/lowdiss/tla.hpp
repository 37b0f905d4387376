// tla.hpp - two-level atom driven through a four-stroke Carnot-like cycle
//
// The atom Hamiltonian is omega(t) sigma_z / 2 and its state is fully
// described by the excited-state population p_e. Bath contact follows
//
//     dp_e/dt = -kappa(t) p_e + C(t),
//     C = gamma n(omega),  kappa = gamma (2 n(omega) + 1),  n = 1 / (exp(beta omega) - 1).
//
// Sign conventions: work_on is the work done ON the atom, heat is the energy
// absorbed FROM the bath, heat = dU - work_on. Entropies are in units of k_B.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lowdiss/bounds.hpp"

namespace lowdiss::tla {

enum class Stroke { hot, adiabat_hot_to_cold, cold, adiabat_cold_to_hot };

struct CycleProtocol {
    double omega_h_start{};  // omega_h^i
    double eps_h{};          // omega_h^f - omega_h^i
    double omega_c_start{};  // omega_c^i
    double eps_c{};          // omega_c^f - omega_c^i
    double t_h{};
    double t_c{};
    double delta{};          // duration of each adiabat

    void validate() const;

    double omega_h_end() const { return omega_h_start + eps_h; }
    double omega_c_end() const { return omega_c_start + eps_c; }
    double period() const { return t_h + t_c + 2.0 * delta; }
};

struct BathCoupling {
    double beta_h{};
    double beta_c{};
    double gamma_h{};
    double gamma_c{};

    void validate() const;
};

struct AtomState {
    double p_e{};
};

/// Bath-contact stroke with a linear ramp omega0 -> omega0 + eps over `duration`.
struct IsothermalStroke {
    double beta{};
    double gamma{};
    double omega0{};
    double eps{};
    double duration{};

    void validate() const;
    double omega(double local_t) const { return omega0 + eps * (local_t / duration); }
    double ramp_rate() const { return eps / duration; }
};

/// The hot or cold stroke of a cycle. Throws DomainError for an adiabat.
IsothermalStroke isothermal_stroke(const CycleProtocol& protocol, const BathCoupling& coupling,
                                   Stroke stroke);

/// Piecewise-linear level spacing over one period, 0 <= t <= period().
double omega_at(const CycleProtocol& protocol, double t);

struct Rates {
    double kappa{};
    double c_pump{};
};

/// Rates at cycle time t; both vanish on the adiabats.
Rates rates(const CycleProtocol& protocol, const BathCoupling& coupling, double t);
Rates rates(const IsothermalStroke& stroke, double local_t);

double occupation(double beta, double omega);
double equilibrium_population(double beta, double omega);
double binary_entropy(double p);

struct StepControl {
    double halving_tol{1e-10};       // |p_e(n) - p_e(2n)| accepted at the end of a stroke
    double quadrature_tol{1e-15};    // same for work and heat, relative to the largest omega
    std::size_t min_steps{64};
    std::size_t max_steps{std::size_t{1} << 24};
};

struct TrajectorySample {
    double t{};
    double omega{};
    double p_e{};
};

struct StrokeTrajectory {
    double beta{};
    double ramp_rate{};                     // d(omega)/dt
    std::vector<TrajectorySample> samples;  // uniform in t, odd count
    double heat_flux_integral{};            // integral of omega dp_e/dt, integrated with the ODE
};

/// RK4 step count for `stroke` satisfying the halving criterion from `start`.
std::size_t choose_steps(AtomState start, const IsothermalStroke& stroke, const StepControl& ctrl);

/// Final population after `steps` RK4 steps.
AtomState propagate(AtomState start, const IsothermalStroke& stroke, std::size_t steps);

/// Full trajectory with a fixed step count.
StrokeTrajectory integrate(AtomState start, const IsothermalStroke& stroke, std::size_t steps);

/// Trajectory with the step count chosen by `ctrl`.
StrokeTrajectory evolve_stroke(AtomState start, const IsothermalStroke& stroke,
                               const StepControl& ctrl = {});

/// Population at local time t from the integral representation of the
/// solution, evaluated by adaptive Gauss-Kronrod quadrature.
double formal_solution(double p_e0, const IsothermalStroke& stroke, double t);

struct StrokeLedger {
    double heat{};
    double work_on{};
    double d_entropy{};
    double s_irr{};    // d_entropy - beta * heat
    double s_relax{};  // extra production if left to relax at the final frequency

    /// Production of the stroke plus its relaxation to equilibrium.
    double s_settled() const { return s_irr + s_relax; }
};

/// Thermodynamic accounting of an isothermal trajectory. Work is Simpson's
/// rule over the samples; heat follows from the first law.
StrokeLedger stroke_ledger(const StrokeTrajectory& trajectory);

struct SteadyCycleOptions {
    double tol{1e-12};
    std::size_t max_cycles{100000};
    StepControl steps{};
};

struct CycleResult {
    double q_h{};
    double q_c{};
    double work_out{};
    std::optional<double> eta;  // empty when q_h <= 0
    double power{};
    StrokeLedger hot_ledger;
    StrokeLedger cold_ledger;
    std::size_t cycles_to_converge{};
    double p_start{};  // population at the start of the hot stroke
    /// work_out - (q_h + q_c), with heats from the ODE-integrated flux.
    double first_law_residual{};
};

/// Iterates whole cycles until the start-of-cycle population repeats to
/// within `tol`, then accounts one further cycle. Throws ConvergenceError
/// after `max_cycles`.
CycleResult find_steady_cycle(const CycleProtocol& protocol, const BathCoupling& coupling,
                              AtomState initial, const SteadyCycleOptions& opts = {});

/// Ledger of a single stroke started in equilibrium at omega0.
StrokeLedger simulate_isothermal(const IsothermalStroke& stroke, const StepControl& ctrl = {});

// Analytic irreversible entropy production of a linear ramp started in
// equilibrium. All take (beta, omega0, eps, gamma, t_f).

/// 2 gamma / (beta omega0), the high-temperature relaxation rate.
double effective_rate(double beta, double omega0, double gamma);

/// High-temperature, small-ramp expression including the second-order term.
double analytic_si_high_t(double beta, double omega0, double eps, double gamma, double t_f);
/// (beta eps)^2 / (4 g t_f) with g the effective rate.
double si_high_t_leading(double beta, double omega0, double eps, double gamma, double t_f);
/// (beta eps)^2 / (4 g t_f) (1 - (1 - exp(-g t_f)) / (g t_f)); tends to (beta eps)^2 / 8.
double si_high_t_relaxed(double beta, double omega0, double eps, double gamma, double t_f);
/// (beta eps)^2 / 8
double si_high_t_short_limit(double beta, double eps);

/// Low-temperature expression. Throws DomainError when |gamma t_f - beta eps| < 1e-12.
double analytic_si_low_t(double beta, double omega0, double eps, double gamma, double t_f);
/// (beta eps / (gamma t_f)) exp(-beta omega0) (1 - exp(-beta eps))
double si_low_t_leading(double beta, double omega0, double eps, double gamma, double t_f);
/// exp(-beta omega0) (beta eps + exp(-beta eps) - 1)
double si_low_t_short_limit(double beta, double omega0, double eps);

/// Microscopic dissipation coefficient beta^2 omega^i eps^2 / (8 gamma),
/// valid for beta omega << 1 and |eps| << omega.
double m_coefficient(double beta, double omega_start, double eps, double gamma);

/// Slow-driving dissipation coefficient without the high-temperature and
/// small-ramp approximations: beta eps^2 * integral_0^1 p0 (1 - p0) / kappa ds.
double dissipation_coefficient(const IsothermalStroke& stroke);

/// Coupling whose gamma_c puts the m_coefficient-based asymmetry at target_zeta.
/// Throws DomainError for |target_zeta| >= 1.
BathCoupling couplings_for_zeta(const CycleProtocol& protocol, double beta_h, double beta_c,
                                double target_zeta, double gamma_h);

/// T_h [S(p0(beta_h omega_h^f)) - S(p0(beta_h omega_h^i))]
double reversible_heat(const CycleProtocol& protocol, const BathCoupling& coupling);

enum class Coefficients { leading, slow_driving };

/// Low-dissipation parameters of the cycle: temperatures, reversible heat and
/// M_h, M_c from either m_coefficient or dissipation_coefficient.
EngineSpec equivalent_engine(const CycleProtocol& protocol, const BathCoupling& coupling,
                             Coefficients which = Coefficients::slow_driving);

/// Default cycle: beta_h = 1/10, beta_c = 1/9, omega_h: 1 -> 0.5, omega_c: 0.45 -> 0.9,
/// gamma_h = 0.1 and gamma_c tuned for zeta = 0.5, delta = 0.
CycleProtocol default_protocol();
BathCoupling default_coupling();

}  // namespace lowdiss::tla
