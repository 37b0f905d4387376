#include "lowdiss/tla.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lowdiss/errors.hpp"

namespace lowdiss::tla {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-13;
constexpr unsigned kQuadDepth = 30;

/// ln sinh(x) for x > 0 without overflow.
double log_sinh(double x) { return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x)); }

double require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw ConvergenceError(std::string("non-finite value in ") + what);
    }
    return x;
}

/// Right-hand side of the population equation at local time t.
double population_rate(const IsothermalStroke& stroke, double t, double p) {
    const Rates r = rates(stroke, t);
    return -r.kappa * p + r.c_pump;
}

/// Neumaier compensated running sum.
struct CompensatedSum {
    double sum{};
    double carry{};

    void add(double x) {
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

double max_kappa(const IsothermalStroke& stroke) {
    return std::max(rates(stroke, 0.0).kappa, rates(stroke, stroke.duration).kappa);
}

}  // namespace

void CycleProtocol::validate() const {
    const std::array<double, 4> ends{omega_h_start, omega_h_end(), omega_c_start, omega_c_end()};
    for (double w : ends) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw DomainError("level spacing must stay strictly positive over the cycle");
        }
    }
    if (!(t_h > 0.0 && t_c > 0.0)) {
        throw DomainError("isothermal stroke durations must be positive");
    }
    if (!(delta >= 0.0)) {
        throw DomainError("adiabat duration must be nonnegative");
    }
}

void BathCoupling::validate() const {
    if (!(beta_h > 0.0 && beta_c > 0.0 && gamma_h > 0.0 && gamma_c > 0.0)) {
        throw DomainError("inverse temperatures and rates must be positive");
    }
    if (!(beta_h < beta_c)) {
        throw DomainError("hot bath must be hotter than the cold bath (beta_h < beta_c)");
    }
}

void IsothermalStroke::validate() const {
    if (!(beta > 0.0 && gamma > 0.0 && omega0 > 0.0 && omega0 + eps > 0.0 && duration > 0.0)) {
        throw DomainError("invalid isothermal stroke parameters");
    }
}

IsothermalStroke isothermal_stroke(const CycleProtocol& protocol, const BathCoupling& coupling,
                                   Stroke stroke) {
    switch (stroke) {
        case Stroke::hot:
            return {coupling.beta_h, coupling.gamma_h, protocol.omega_h_start, protocol.eps_h,
                    protocol.t_h};
        case Stroke::cold:
            return {coupling.beta_c, coupling.gamma_c, protocol.omega_c_start, protocol.eps_c,
                    protocol.t_c};
        case Stroke::adiabat_hot_to_cold:
        case Stroke::adiabat_cold_to_hot:
            break;
    }
    throw DomainError("adiabatic strokes have no bath");
}

double omega_at(const CycleProtocol& p, double t) {
    const double tau = p.period();
    if (!(t >= 0.0 && t <= tau)) {
        throw DomainError("time " + std::to_string(t) + " outside the cycle [0, " +
                          std::to_string(tau) + "]");
    }
    if (t <= p.t_h) {
        return p.omega_h_start + p.eps_h * (t / p.t_h);
    }
    if (t < p.t_h + p.delta) {
        const double f = (t - p.t_h) / p.delta;
        return p.omega_h_end() + (p.omega_c_start - p.omega_h_end()) * f;
    }
    const double cold_start = p.t_h + p.delta;
    if (t <= cold_start + p.t_c) {
        return p.omega_c_start + p.eps_c * ((t - cold_start) / p.t_c);
    }
    const double f = (t - cold_start - p.t_c) / p.delta;
    return p.omega_c_end() + (p.omega_h_start - p.omega_c_end()) * f;
}

Rates rates(const IsothermalStroke& stroke, double local_t) {
    const double n = occupation(stroke.beta, stroke.omega(local_t));
    return {stroke.gamma * (2.0 * n + 1.0), stroke.gamma * n};
}

Rates rates(const CycleProtocol& p, const BathCoupling& coupling, double t) {
    const double w = omega_at(p, t);
    if (t <= p.t_h) {
        const double n = occupation(coupling.beta_h, w);
        return {coupling.gamma_h * (2.0 * n + 1.0), coupling.gamma_h * n};
    }
    const double cold_start = p.t_h + p.delta;
    if (t >= cold_start && t <= cold_start + p.t_c) {
        const double n = occupation(coupling.beta_c, w);
        return {coupling.gamma_c * (2.0 * n + 1.0), coupling.gamma_c * n};
    }
    return {0.0, 0.0};
}

double occupation(double beta, double omega) { return 1.0 / std::expm1(beta * omega); }

double equilibrium_population(double beta, double omega) {
    if (!(beta > 0.0 && omega > 0.0)) {
        throw DomainError("equilibrium population needs beta, omega > 0");
    }
    return 1.0 / (std::exp(beta * omega) + 1.0);
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

AtomState propagate(AtomState start, const IsothermalStroke& stroke, std::size_t steps) {
    const double h = stroke.duration / static_cast<double>(steps);
    double p = start.p_e;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * h;
        const double k1 = population_rate(stroke, t, p);
        const double k2 = population_rate(stroke, t + 0.5 * h, p + 0.5 * h * k1);
        const double k3 = population_rate(stroke, t + 0.5 * h, p + 0.5 * h * k2);
        const double k4 = population_rate(stroke, t + h, p + h * k3);
        p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return {require_finite(p, "stroke propagation")};
}

std::size_t choose_steps(AtomState start, const IsothermalStroke& stroke, const StepControl& ctrl) {
    stroke.validate();
    // RK4 is comfortably stable and accurate below kappa h ~ 0.25.
    const double stiff = std::ceil(max_kappa(stroke) * stroke.duration / 0.25);
    std::size_t n = std::max<std::size_t>(ctrl.min_steps, static_cast<std::size_t>(stiff));
    n += n % 2;
    const double energy = std::max(std::abs(stroke.omega0), std::abs(stroke.omega0 + stroke.eps));
    auto measure = [&](std::size_t steps) {
        const StrokeTrajectory traj = integrate(start, stroke, steps);
        return std::array<double, 3>{traj.samples.back().p_e, stroke_ledger(traj).work_on,
                                     traj.heat_flux_integral};
    };
    std::array<double, 3> previous = measure(n);
    while (n * 2 <= ctrl.max_steps) {
        n *= 2;
        const std::array<double, 3> current = measure(n);
        if (std::abs(current[0] - previous[0]) < ctrl.halving_tol &&
            std::abs(current[1] - previous[1]) < ctrl.quadrature_tol * energy &&
            std::abs(current[2] - previous[2]) < ctrl.quadrature_tol * energy) {
            return n;
        }
        previous = current;
    }
    throw ConvergenceError("stroke integration did not meet the halving tolerance");
}

StrokeTrajectory integrate(AtomState start, const IsothermalStroke& stroke, std::size_t steps) {
    stroke.validate();
    steps = std::max<std::size_t>(steps + steps % 2, 2);
    const double h = stroke.duration / static_cast<double>(steps);
    StrokeTrajectory out;
    out.beta = stroke.beta;
    out.ramp_rate = stroke.ramp_rate();
    out.samples.reserve(steps + 1);
    double p = start.p_e;
    CompensatedSum q;
    CompensatedSum pop;
    pop.add(p);
    out.samples.push_back({0.0, stroke.omega(0.0), p});
    // The heat flux omega * dp/dt is carried as a second component of the state.
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * h;
        const double k1 = population_rate(stroke, t, p);
        const double k2 = population_rate(stroke, t + 0.5 * h, p + 0.5 * h * k1);
        const double k3 = population_rate(stroke, t + 0.5 * h, p + 0.5 * h * k2);
        const double k4 = population_rate(stroke, t + h, p + h * k3);
        const double w_mid = stroke.omega(t + 0.5 * h);
        q.add(h / 6.0 *
              (stroke.omega(t) * k1 + 2.0 * w_mid * k2 + 2.0 * w_mid * k3 + stroke.omega(t + h) * k4));
        pop.add(h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
        p = pop.value();
        const double t_next = (i + 1 == steps) ? stroke.duration : static_cast<double>(i + 1) * h;
        out.samples.push_back({t_next, stroke.omega(t_next), require_finite(p, "stroke integration")});
    }
    out.heat_flux_integral = q.value();
    return out;
}

StrokeTrajectory evolve_stroke(AtomState start, const IsothermalStroke& stroke,
                               const StepControl& ctrl) {
    return integrate(start, stroke, choose_steps(start, stroke, ctrl));
}

double formal_solution(double p_e0, const IsothermalStroke& stroke, double t) {
    stroke.validate();
    if (!(t >= 0.0 && t <= stroke.duration)) {
        throw DomainError("formal solution time outside the stroke");
    }
    if (t == 0.0) return p_e0;
    const double v = stroke.ramp_rate();
    const double x_t = 0.5 * stroke.beta * stroke.omega(t);
    const double log_sinh_t = log_sinh(x_t);
    const double kappa0 = rates(stroke, 0.0).kappa;
    // Accumulated rate between t1 and t, integral of gamma coth(beta omega / 2).
    auto decay = [&](double t1) {
        if (v == 0.0) return kappa0 * (t - t1);
        const double x1 = 0.5 * stroke.beta * stroke.omega(t1);
        return 2.0 * stroke.gamma / (stroke.beta * v) * (log_sinh_t - log_sinh(x1));
    };
    auto integrand = [&](double t1) { return std::exp(-decay(t1)) * rates(stroke, t1).c_pump; };
    double error = 0.0;
    double driven = 0.0;
    // The integrand is concentrated within a few relaxation times of t.
    const double split = std::max(0.0, t - 40.0 / kappa0);
    if (split > 0.0) {
        driven += gauss_kronrod<double, 61>::integrate(integrand, 0.0, split, kQuadDepth, kQuadTol,
                                                       &error);
    }
    driven += gauss_kronrod<double, 61>::integrate(integrand, split, t, kQuadDepth, kQuadTol,
                                                   &error);
    return require_finite(p_e0 * std::exp(-decay(0.0)) + driven, "formal solution quadrature");
}

StrokeLedger stroke_ledger(const StrokeTrajectory& trajectory) {
    const auto& s = trajectory.samples;
    if (s.size() < 3 || s.size() % 2 == 0) {
        throw DomainError("ledger needs an odd number (>= 3) of uniform samples");
    }
    const std::size_t intervals = s.size() - 1;
    const double h = (s.back().t - s.front().t) / static_cast<double>(intervals);
    CompensatedSum sum;
    sum.add(s.front().p_e - 0.5);
    sum.add(s.back().p_e - 0.5);
    for (std::size_t i = 1; i < intervals; ++i) {
        sum.add((i % 2 == 1 ? 4.0 : 2.0) * (s[i].p_e - 0.5));
    }
    const double acc = sum.value();
    StrokeLedger ledger;
    ledger.work_on = trajectory.ramp_rate * acc * h / 3.0;
    const double du = s.back().omega * (s.back().p_e - 0.5) - s.front().omega * (s.front().p_e - 0.5);
    ledger.heat = du - ledger.work_on;
    ledger.d_entropy = binary_entropy(s.back().p_e) - binary_entropy(s.front().p_e);
    ledger.s_irr = ledger.d_entropy - trajectory.beta * ledger.heat;
    const double p = s.back().p_e;
    const double p_eq = equilibrium_population(trajectory.beta, s.back().omega);
    ledger.s_relax = p * std::log(p / p_eq) + (1.0 - p) * std::log((1.0 - p) / (1.0 - p_eq));
    return ledger;
}

CycleResult find_steady_cycle(const CycleProtocol& protocol, const BathCoupling& coupling,
                              AtomState initial, const SteadyCycleOptions& opts) {
    protocol.validate();
    coupling.validate();
    if (!(opts.tol > 0.0)) {
        throw DomainError("steady-cycle tolerance must be positive");
    }
    if (!(initial.p_e > 0.0 && initial.p_e < 1.0)) {
        throw DomainError("initial population must lie in (0, 1)");
    }
    const IsothermalStroke hot = isothermal_stroke(protocol, coupling, Stroke::hot);
    const IsothermalStroke cold = isothermal_stroke(protocol, coupling, Stroke::cold);
    const std::size_t n_hot = choose_steps(initial, hot, opts.steps);
    const std::size_t n_cold = choose_steps(propagate(initial, hot, n_hot), cold, opts.steps);

    AtomState state = initial;
    std::size_t cycles = 0;
    bool converged = false;
    while (cycles < opts.max_cycles) {
        ++cycles;
        const AtomState next = propagate(propagate(state, hot, n_hot), cold, n_cold);
        const double change = std::abs(next.p_e - state.p_e);
        state = next;
        if (change < opts.tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw ConvergenceError("no steady cycle within " + std::to_string(opts.max_cycles) +
                               " cycles");
    }

    CycleResult r;
    r.cycles_to_converge = cycles;
    r.p_start = state.p_e;
    const StrokeTrajectory hot_traj = integrate(state, hot, n_hot);
    const AtomState after_hot{hot_traj.samples.back().p_e};
    const StrokeTrajectory cold_traj = integrate(after_hot, cold, n_cold);
    const AtomState after_cold{cold_traj.samples.back().p_e};
    r.hot_ledger = stroke_ledger(hot_traj);
    r.cold_ledger = stroke_ledger(cold_traj);
    // Adiabats change omega at frozen population.
    const double adiabat_work = (protocol.omega_c_start - protocol.omega_h_end()) * (after_hot.p_e - 0.5) +
                                (protocol.omega_h_start - protocol.omega_c_end()) * (after_cold.p_e - 0.5);
    r.work_out = -(r.hot_ledger.work_on + r.cold_ledger.work_on + adiabat_work);
    r.q_h = r.hot_ledger.heat;
    r.q_c = r.cold_ledger.heat;
    r.power = r.work_out / protocol.period();
    if (r.q_h > 0.0) r.eta = r.work_out / r.q_h;
    r.first_law_residual = r.work_out - (hot_traj.heat_flux_integral + cold_traj.heat_flux_integral);
    return r;
}

StrokeLedger simulate_isothermal(const IsothermalStroke& stroke, const StepControl& ctrl) {
    const AtomState start{equilibrium_population(stroke.beta, stroke.omega0)};
    return stroke_ledger(evolve_stroke(start, stroke, ctrl));
}

double effective_rate(double beta, double omega0, double gamma) {
    return 2.0 * gamma / (beta * omega0);
}

double analytic_si_high_t(double beta, double omega0, double eps, double gamma, double t_f) {
    const double x = effective_rate(beta, omega0, gamma) * t_f;
    const double e = -std::expm1(-x);
    const double pe = equilibrium_population(beta, omega0 + eps);
    const double pg = 1.0 - pe;
    const double be = beta * eps;
    return be * be / (4.0 * x) * (1.0 - e / x * (1.0 + e / (4.0 * pg * pe)));
}

double si_high_t_leading(double beta, double omega0, double eps, double gamma, double t_f) {
    const double be = beta * eps;
    return be * be / (4.0 * effective_rate(beta, omega0, gamma) * t_f);
}

double si_high_t_relaxed(double beta, double omega0, double eps, double gamma, double t_f) {
    const double x = effective_rate(beta, omega0, gamma) * t_f;
    const double be = beta * eps;
    // (1 - (1 - e^-x)/x) / x, expanded near x = 0 to avoid cancellation.
    const double shape = x < 1e-4 ? 0.5 - x / 6.0 + x * x / 24.0 : (1.0 + std::expm1(-x) / x) / x;
    return be * be / 4.0 * shape;
}

double si_high_t_short_limit(double beta, double eps) {
    const double be = beta * eps;
    return be * be / 8.0;
}

double analytic_si_low_t(double beta, double omega0, double eps, double gamma, double t_f) {
    const double x = gamma * t_f;
    const double be = beta * eps;
    if (std::abs(x - be) < 1e-12) {
        throw DomainError("low-temperature expression is singular at gamma t_f = beta eps");
    }
    const double pe = equilibrium_population(beta, omega0 + eps);
    const double pg = 1.0 - pe;
    const double boltz = std::exp(-beta * omega0);
    const double gap = std::exp(-be) - std::exp(-x);
    return be * be * boltz / (x - be) *
           (-std::expm1(-be) / be + std::expm1(-x) / x - gap * gap / (pe * pg) * boltz / (x - be));
}

double si_low_t_leading(double beta, double omega0, double eps, double gamma, double t_f) {
    const double be = beta * eps;
    return be / (gamma * t_f) * std::exp(-beta * omega0) * (-std::expm1(-be));
}

double si_low_t_short_limit(double beta, double omega0, double eps) {
    const double be = beta * eps;
    return std::exp(-beta * omega0) * (be + std::expm1(-be));
}

double m_coefficient(double beta, double omega_start, double eps, double gamma) {
    if (!(beta > 0.0 && omega_start > 0.0 && gamma > 0.0)) {
        throw DomainError("m_coefficient needs beta, omega, gamma > 0");
    }
    return beta * beta * omega_start * eps * eps / (8.0 * gamma);
}

double dissipation_coefficient(const IsothermalStroke& stroke) {
    stroke.validate();
    auto integrand = [&](double s) {
        const double w = stroke.omega0 + stroke.eps * s;
        const double p = equilibrium_population(stroke.beta, w);
        const double kappa = stroke.gamma * (2.0 * occupation(stroke.beta, w) + 1.0);
        return p * (1.0 - p) / kappa;
    };
    double error = 0.0;
    const double integral =
        gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, kQuadDepth, kQuadTol, &error);
    return stroke.beta * stroke.eps * stroke.eps * integral;
}

BathCoupling couplings_for_zeta(const CycleProtocol& protocol, double beta_h, double beta_c,
                                double target_zeta, double gamma_h) {
    if (!(std::abs(target_zeta) < 1.0)) {
        throw DomainError("zeta = +-1 needs a zero or infinite coupling");
    }
    if (protocol.eps_c == 0.0 || protocol.eps_h == 0.0) {
        throw DomainError("both isothermal strokes need a nonzero ramp to tune zeta");
    }
    const double m_hot = m_coefficient(beta_h, protocol.omega_h_start, protocol.eps_h, gamma_h);
    const double ratio = (1.0 - target_zeta) / (1.0 + target_zeta);
    const double m_cold = m_hot * ratio * ratio;
    const double gamma_c = beta_c * beta_c * protocol.omega_c_start * protocol.eps_c *
                           protocol.eps_c / (8.0 * m_cold);
    BathCoupling c{beta_h, beta_c, gamma_h, gamma_c};
    c.validate();
    return c;
}

double reversible_heat(const CycleProtocol& protocol, const BathCoupling& coupling) {
    const double s_end =
        binary_entropy(equilibrium_population(coupling.beta_h, protocol.omega_h_end()));
    const double s_start =
        binary_entropy(equilibrium_population(coupling.beta_h, protocol.omega_h_start));
    return (s_end - s_start) / coupling.beta_h;
}

EngineSpec equivalent_engine(const CycleProtocol& protocol, const BathCoupling& coupling,
                             Coefficients which) {
    protocol.validate();
    coupling.validate();
    EngineSpec spec;
    spec.t_hot_bath = 1.0 / coupling.beta_h;
    spec.t_cold_bath = 1.0 / coupling.beta_c;
    spec.q_rev = reversible_heat(protocol, coupling);
    if (which == Coefficients::leading) {
        spec.m_hot = m_coefficient(coupling.beta_h, protocol.omega_h_start, protocol.eps_h,
                                   coupling.gamma_h);
        spec.m_cold = m_coefficient(coupling.beta_c, protocol.omega_c_start, protocol.eps_c,
                                    coupling.gamma_c);
    } else {
        spec.m_hot = dissipation_coefficient(isothermal_stroke(protocol, coupling, Stroke::hot));
        spec.m_cold = dissipation_coefficient(isothermal_stroke(protocol, coupling, Stroke::cold));
    }
    spec.validate();
    return spec;
}

CycleProtocol default_protocol() {
    // Endpoints satisfy beta_h omega_h^f = beta_c omega_c^i and
    // beta_c omega_c^f = beta_h omega_h^i, so the adiabats connect thermal states.
    return {1.0, -0.5, 0.45, 0.45, 20.0, 5.0, 0.0};
}

BathCoupling default_coupling() {
    return couplings_for_zeta(default_protocol(), 0.1, 1.0 / 9.0, 0.5, 0.1);
}

}  // namespace lowdiss::tla
