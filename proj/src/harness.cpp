#include "lowdiss/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lowdiss/errors.hpp"
#include "lowdiss/kernels.hpp"

namespace lowdiss::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_uniform(TimeRange r, double u) {
    const double a = std::log(r.lo);
    return std::exp(a + u * (std::log(r.hi) - a));
}

void check_range(TimeRange r, const char* name) {
    if (!(r.lo > 0.0 && r.hi >= r.lo && std::isfinite(r.hi))) {
        throw DomainError(std::string(name) + " must satisfy 0 < lo <= hi");
    }
}

enum class Outcome { kept, no_heat, no_work };

Outcome classify(double q_h, double work) {
    if (!(q_h > 0.0)) return Outcome::no_heat;
    if (!(work > 0.0)) return Outcome::no_work;
    return Outcome::kept;
}

template <typename Row>
Dataset collect(Mode mode, const EngineSpec& spec, std::vector<Row>& rows,
                const std::vector<Outcome>& outcomes) {
    Dataset d;
    d.mode = mode;
    d.spec = spec;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        switch (outcomes[i]) {
            case Outcome::kept:
                d.rows.push_back(rows[i]);
                break;
            case Outcome::no_heat:
                ++d.discarded_heat;
                break;
            case Outcome::no_work:
                ++d.discarded_work;
                break;
        }
    }
    return d;
}

}  // namespace

std::string mode_name(Mode mode) {
    return mode == Mode::simulated ? "simulated" : "phenomenological";
}

Mode parse_mode(const std::string& text) {
    if (text == "phenomenological") return Mode::phenomenological;
    if (text == "simulated") return Mode::simulated;
    throw DomainError("unknown sampling mode '" + text + "'");
}

std::string regime_name(RegimeFlag flag) {
    switch (flag) {
        case RegimeFlag::in_regime:
            return "in_regime";
        case RegimeFlag::out_of_regime:
            return "out_of_regime";
        case RegimeFlag::failed:
            break;
    }
    return "failed";
}

void SampleConfig::validate() const {
    if (n_samples < 1) throw DomainError("n_samples must be at least 1");
    check_range(t_range_h, "t_range_h");
    check_range(t_range_c, "t_range_c");
}

double sample_uniform(std::uint64_t seed, std::size_t index, std::size_t k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
    std::mt19937_64 gen(seq);
    gen.discard(k);
    // Top 53 bits give every double in [0, 1) on the 2^-53 lattice.
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

StrokeTimes sample_times(const SampleConfig& config, std::size_t index) {
    return {log_uniform(config.t_range_h, sample_uniform(config.seed, index, 0)),
            log_uniform(config.t_range_c, sample_uniform(config.seed, index, 1))};
}

Dataset sample_points(const SampleConfig& config, const EngineSpec& spec) {
    config.validate();
    spec.validate();
    const std::size_t n = config.n_samples;
    std::vector<double> t_h(n), t_c(n), pw(n), eff(n);
    for (std::size_t i = 0; i < n; ++i) {
        const StrokeTimes t = sample_times(config, i);
        t_h[i] = t.t_h;
        t_c[i] = t.t_c;
    }
    kernels::engine_batch(spec, t_h, t_c, pw, eff);

    const double pm = p_max(spec);
    const double eta_c = spec.eta_carnot();
    std::vector<SampleRow> rows(n);
    std::vector<Outcome> outcomes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const HeatPair q = heats(spec, {t_h[i], t_c[i]});
        const double work = q.q_h + q.q_c;
        rows[i] = {i,        Mode::phenomenological, t_h[i],         t_c[i],
                   q.q_h,    q.q_c,                  work,           eff[i],
                   pw[i],    pw[i] / pm,             eff[i] / eta_c, RegimeFlag::in_regime};
        outcomes[i] = classify(q.q_h, work);
    }
    return collect(Mode::phenomenological, spec, rows, outcomes);
}

double stroke_effective_rate(const tla::IsothermalStroke& stroke) {
    return tla::effective_rate(stroke.beta, stroke.omega0, stroke.gamma);
}

Dataset sample_points(const SampleConfig& config, const tla::CycleProtocol& protocol,
                      const tla::BathCoupling& coupling, const tla::SteadyCycleOptions& options) {
    config.validate();
    const EngineSpec spec = tla::equivalent_engine(protocol, coupling);
    const double pm = p_max(spec);
    const double eta_c = spec.eta_carnot();
    const tla::AtomState start{tla::equilibrium_population(coupling.beta_h, protocol.omega_h_start)};

    const std::size_t n = config.n_samples;
    std::vector<SampleRow> rows(n);
    std::vector<Outcome> outcomes(n, Outcome::kept);
    parallel_for(n, config.threads, [&](std::size_t i) {
        const StrokeTimes t = sample_times(config, i);
        tla::CycleProtocol proto = protocol;
        proto.t_h = t.t_h;
        proto.t_c = t.t_c;
        SampleRow& row = rows[i];
        row.sample_id = i;
        row.mode = Mode::simulated;
        row.t_h = t.t_h;
        row.t_c = t.t_c;
        const double x_h =
            stroke_effective_rate(tla::isothermal_stroke(proto, coupling, tla::Stroke::hot)) * t.t_h;
        const double x_c =
            stroke_effective_rate(tla::isothermal_stroke(proto, coupling, tla::Stroke::cold)) * t.t_c;
        row.regime = (x_h >= kRegimeThreshold && x_c >= kRegimeThreshold) ? RegimeFlag::in_regime
                                                                          : RegimeFlag::out_of_regime;
        try {
            const tla::CycleResult r = tla::find_steady_cycle(proto, coupling, start, options);
            row.q_h = r.q_h;
            row.q_c = r.q_c;
            row.work = r.work_out;
            row.eta = r.eta.value_or(kNaN);
            row.power = r.power;
            row.p_norm = r.power / pm;
            row.eta_norm = row.eta / eta_c;
            outcomes[i] = classify(r.q_h, r.work_out);
        } catch (const ConvergenceError&) {
            row.q_h = row.q_c = row.work = row.eta = row.power = row.p_norm = row.eta_norm = kNaN;
            row.regime = RegimeFlag::failed;
        }
    });
    return collect(Mode::simulated, spec, rows, outcomes);
}

const std::vector<std::string>& bound_ids() {
    static const std::vector<std::string> ids{"eq1", "eq8", "eq11", "eq14", "eqA3", "pmax"};
    return ids;
}

double audit_threshold(Mode mode) { return mode == Mode::simulated ? -1e-6 : -1e-12; }

AuditReport audit_bounds(const Dataset& dataset) {
    const EngineSpec& spec = dataset.spec;
    spec.validate();
    const double eta_c = spec.eta_carnot();
    const double zeta = spec.zeta();
    const double m = spec.m_total();
    const double w_rev = eta_c * spec.q_rev;

    AuditReport report;
    report.threshold = audit_threshold(dataset.mode);
    for (const std::string& id : bound_ids()) {
        report.min_slack_per_bound[id] = std::numeric_limits<double>::infinity();
    }
    for (const SampleRow& row : dataset.rows) {
        if (row.regime != RegimeFlag::in_regime) {
            ++report.n_skipped;
            continue;
        }
        ++report.n_checked;
        const NormalizedPoint pt{row.p_norm, row.eta_norm};
        const double p_curve = std::clamp(row.p_norm, 0.0, 1.0);
        const double tau = row.t_h + row.t_c;
        const double values[] = {
            universal_constraint_slack(pt, eta_c),
            -(row.power * tau * tau - w_rev * tau + m) / m,
            eta_upper(p_curve, zeta, eta_c) - row.eta_norm,
            universal_lower_slack(pt),
            row.eta_norm - eta_lower_detailed(p_curve, zeta, eta_c),
            1.0 - row.p_norm,
        };
        for (std::size_t b = 0; b < bound_ids().size(); ++b) {
            const std::string& id = bound_ids()[b];
            Violation v{row.sample_id, id, values[b]};
            if (v.slack < report.threshold) report.violations.push_back(v);
            report.min_slack_per_bound[id] = std::min(report.min_slack_per_bound[id], v.slack);
            report.slacks.push_back(std::move(v));
        }
    }
    if (report.n_checked == 0) {
        throw DomainError("dataset has no auditable rows");
    }
    return report;
}

TangencyReport tangency_probe(const EngineSpec& spec, double p, double eta) {
    spec.validate();
    if (!(spec.m_hot > 0.0 && spec.m_cold > 0.0)) {
        throw DomainError("tangency probe needs both dissipation coefficients positive");
    }
    TangencyReport rep;
    rep.window = tau_window(spec, p);
    const double eta_c = spec.eta_carnot();
    const double p_norm = std::min(p / p_max(spec), 1.0);
    rep.eta_upper = eta_upper(p_norm, spec.zeta(), eta_c) * eta_c;
    rep.eta_lower = eta_lower_detailed(p_norm, spec.zeta(), eta_c) * eta_c;

    // The power level curve is closed: t_h sweeps [mid - half, mid + half]
    // and t_c takes the larger (sin > 0) or smaller root of the quadratic.
    const double w_rev = eta_c * spec.q_rev;
    const double a = w_rev - 2.0 * std::sqrt(p * spec.m_cold);
    const double disc_h = std::max(a * a - 4.0 * p * spec.m_hot, 0.0);
    const double mid = a / (2.0 * p);
    const double half = std::sqrt(disc_h) / (2.0 * p);
    auto point = [&](double theta) {
        const double th = mid + half * std::cos(theta);
        const double b = w_rev - spec.m_hot / th - p * th;
        const double root = std::sqrt(std::max(b * b - 4.0 * p * spec.m_cold, 0.0));
        const double sign = std::sin(theta) >= 0.0 ? 1.0 : -1.0;
        return StrokeTimes{th, (b + sign * root) / (2.0 * p)};
    };
    auto g = [&](double theta) { return efficiency(spec, point(theta)) - eta; };

    const double tol = 1e-12 * std::max(1.0, std::abs(eta));
    std::vector<StrokeTimes> found;
    rep.eta_max_on_curve = -std::numeric_limits<double>::infinity();
    rep.eta_min_on_curve = std::numeric_limits<double>::infinity();

    if (half <= 1e-12 * mid) {
        const StrokeTimes t = point(0.0);
        const double e = efficiency(spec, t);
        rep.eta_max_on_curve = rep.eta_min_on_curve = e;
        if (std::abs(e - eta) <= tol) found.push_back(t);
    } else {
        constexpr std::size_t n = 2048;
        const double step = 2.0 * std::numbers::pi / n;
        std::vector<double> gv(n);
        for (std::size_t k = 0; k < n; ++k) gv[k] = g(step * static_cast<double>(k));
        for (std::size_t k = 0; k < n; ++k) {
            const double lo = step * static_cast<double>(k);
            const double g0 = gv[k];
            const double g1 = gv[(k + 1) % n];
            if (g0 == 0.0) {
                found.push_back(point(lo));
            } else if ((g0 < 0.0) != (g1 < 0.0) && g1 != 0.0) {
                double x0 = lo, x1 = lo + step, f0 = g0;
                for (int it = 0; it < 100 && x1 - x0 > 1e-15; ++it) {
                    const double xm = 0.5 * (x0 + x1);
                    const double fm = g(xm);
                    if ((fm < 0.0) == (f0 < 0.0)) {
                        x0 = xm;
                        f0 = fm;
                    } else {
                        x1 = xm;
                    }
                }
                found.push_back(point(0.5 * (x0 + x1)));
            }
            const double gp = gv[(k + n - 1) % n];
            const bool is_max = g0 >= gp && g0 >= g1;
            const bool is_min = g0 <= gp && g0 <= g1;
            if (!is_max && !is_min) continue;
            // Golden-section refinement of the local extremum.
            const double sgn = is_max ? 1.0 : -1.0;
            double x0 = lo - step, x1 = lo + step;
            const double r = (std::sqrt(5.0) - 1.0) / 2.0;
            double c = x1 - r * (x1 - x0), d = x0 + r * (x1 - x0);
            double fc = sgn * g(c), fd = sgn * g(d);
            for (int it = 0; it < 200 && x1 - x0 > 1e-13; ++it) {
                if (fc > fd) {
                    x1 = d;
                    d = c;
                    fd = fc;
                    c = x1 - r * (x1 - x0);
                    fc = sgn * g(c);
                } else {
                    x0 = c;
                    c = d;
                    fc = fd;
                    d = x0 + r * (x1 - x0);
                    fd = sgn * g(d);
                }
            }
            const double x_ext = 0.5 * (x0 + x1);
            const double g_ext = std::max(sgn * g(x_ext), sgn * g0) * sgn;
            rep.eta_max_on_curve = std::max(rep.eta_max_on_curve, g_ext + eta);
            rep.eta_min_on_curve = std::min(rep.eta_min_on_curve, g_ext + eta);
            if (std::abs(g_ext) <= tol) found.push_back(point(x_ext));
        }
    }

    for (const StrokeTimes& t : found) {
        const bool duplicate = std::any_of(rep.intersections.begin(), rep.intersections.end(),
                                           [&](const StrokeTimes& u) {
                                               return std::hypot(t.t_h - u.t_h, t.t_c - u.t_c) <= 1e-6;
                                           });
        if (!duplicate) rep.intersections.push_back(t);
    }
    for (const StrokeTimes& t : rep.intersections) {
        rep.touches_tau_plus |= std::abs(t.total() - rep.window.tau_plus) <= 1e-6 * rep.window.tau_plus;
        rep.touches_tau_minus |=
            std::abs(t.total() - rep.window.tau_minus) <= 1e-6 * rep.window.tau_minus;
    }
    return rep;
}

std::vector<EntropyRow> entropy_scan(const tla::IsothermalStroke& stroke,
                                     const std::vector<double>& t_f_grid,
                                     const tla::StepControl& ctrl, std::size_t threads) {
    if (t_f_grid.empty()) throw DomainError("entropy scan needs a nonempty t_f grid");
    std::vector<EntropyRow> rows(t_f_grid.size());
    parallel_for(t_f_grid.size(), threads, [&](std::size_t i) {
        tla::IsothermalStroke s = stroke;
        s.duration = t_f_grid[i];
        const tla::StrokeLedger ledger = tla::simulate_isothermal(s, ctrl);
        EntropyRow& row = rows[i];
        row = {s.beta, s.omega0, s.eps, s.gamma, s.duration, ledger.s_settled(),
               tla::analytic_si_high_t(s.beta, s.omega0, s.eps, s.gamma, s.duration), kNaN};
        try {
            row.s_irr_low_t = tla::analytic_si_low_t(s.beta, s.omega0, s.eps, s.gamma, s.duration);
        } catch (const DomainError&) {
        }
    });
    return rows;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi >= lo) || n == 0) throw DomainError("invalid log grid");
    std::vector<double> out(n);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = n == 1 ? lo : std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (!(hi >= lo) || n == 0) throw DomainError("invalid linear grid");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    if (n > 1) out.back() = hi;
    return out;
}

std::vector<CurveRow> bound_curves(double eta_c, const std::vector<double>& zetas,
                                   const std::vector<double>& p_grid) {
    for (double z : zetas) eta_upper(0.0, z, eta_c);  // validates zeta and eta_c
    for (double p : p_grid) eta_upper(p, 0.0, eta_c);  // validates the power grid
    const std::size_t n = p_grid.size();
    std::vector<double> upper(n), lower(n), zero(n, 0.0), eq1(n);
    kernels::constraint_slack_batch(p_grid, zero, eta_c, eq1);
    std::vector<CurveRow> rows;
    rows.reserve(zetas.size() * n);
    for (double z : zetas) {
        kernels::eta_upper_batch(p_grid, z, eta_c, upper);
        kernels::eta_lower_batch(p_grid, z, eta_c, lower);
        for (std::size_t i = 0; i < n; ++i) {
            // At eta_norm = 0 the constraint slack is the upper curve itself.
            rows.push_back({eta_c, z, p_grid[i], upper[i], lower[i], eq1[i],
                            0.5 * (1.0 - std::sqrt(1.0 - p_grid[i]))});
        }
    }
    return rows;
}

std::vector<MniRow> mni_compare(const EngineSpec& spec, const std::vector<double>& scales) {
    const StrokeTimes emp = emp_times(spec);
    const double pm = p_max(spec);
    std::vector<MniRow> rows;
    rows.reserve(scales.size() * scales.size());
    for (double sh : scales) {
        for (double sc : scales) {
            rows.push_back({sh, sc, pm, mni_pmax(spec, {sh * emp.t_h, sc * emp.t_c})});
        }
    }
    return rows;
}

}  // namespace lowdiss::harness
