// harness.hpp - sampling, bound auditing and dataset generation
//
// Datasets are plain vectors of rows; the csv module writes them out.
// Every random draw is derived from (seed, sample index), so results do not
// depend on the number of worker threads.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lowdiss/bounds.hpp"
#include "lowdiss/tla.hpp"

namespace lowdiss::harness {

enum class Mode { phenomenological, simulated };

std::string mode_name(Mode mode);
/// Throws DomainError for anything other than "phenomenological" or "simulated".
Mode parse_mode(const std::string& text);

struct TimeRange {
    double lo{};
    double hi{};
};

struct SampleConfig {
    std::size_t n_samples{1000};
    TimeRange t_range_h{0.1, 100.0};
    TimeRange t_range_c{0.1, 100.0};
    std::uint64_t seed{42};
    Mode mode{Mode::phenomenological};
    std::size_t threads{0};  // 0 = hardware concurrency

    void validate() const;
};

/// Uniform double in [0, 1) from the sample's private stream; draw k of sample i.
double sample_uniform(std::uint64_t seed, std::size_t index, std::size_t k);

/// Log-uniform stroke times of sample `index`.
StrokeTimes sample_times(const SampleConfig& config, std::size_t index);

enum class RegimeFlag { in_regime, out_of_regime, failed };

std::string regime_name(RegimeFlag flag);

/// gamma-tilde t of both strokes must reach this for a simulated point to be audited.
inline constexpr double kRegimeThreshold = 10.0;

struct SampleRow {
    std::size_t sample_id{};
    Mode mode{};
    double t_h{};
    double t_c{};
    double q_h{};
    double q_c{};
    double work{};
    double eta{};
    double power{};
    double p_norm{};
    double eta_norm{};
    RegimeFlag regime{RegimeFlag::in_regime};
};

struct Dataset {
    Mode mode{};
    EngineSpec spec;  // parameters used to normalize power and efficiency
    std::vector<SampleRow> rows;
    std::size_t discarded_heat{};  // Q_h <= 0
    std::size_t discarded_work{};  // W <= 0 (with Q_h > 0)
};

/// Closed-form engine at log-uniform stroke times.
Dataset sample_points(const SampleConfig& config, const EngineSpec& spec);

/// Steady cycles of the two-level atom at log-uniform stroke times; the
/// protocol's own t_h, t_c are replaced per sample. Normalization uses
/// equivalent_engine(protocol, coupling). Failed simulations stay in the
/// dataset with NaN values and RegimeFlag::failed.
Dataset sample_points(const SampleConfig& config, const tla::CycleProtocol& protocol,
                      const tla::BathCoupling& coupling,
                      const tla::SteadyCycleOptions& options = {});

/// gamma-tilde of the stroke, 2 gamma / (beta omega0).
double stroke_effective_rate(const tla::IsothermalStroke& stroke);

struct Violation {
    std::size_t sample_id{};
    std::string bound_id;
    double slack{};
};

struct AuditReport {
    std::size_t n_checked{};
    std::size_t n_skipped{};
    double threshold{};
    std::vector<Violation> violations;
    std::vector<Violation> slacks;  // every evaluated (sample, bound) pair
    std::map<std::string, double> min_slack_per_bound;
};

/// Bound identifiers in audit order: eq1, eq8, eq11, eq14, eqA3, pmax.
const std::vector<std::string>& bound_ids();

/// Evaluates every bound on every in-regime row. Slack below -1e-12
/// (phenomenological) or -1e-6 (simulated) counts as a violation.
/// Throws DomainError when no row is auditable.
AuditReport audit_bounds(const Dataset& dataset);

/// Slack threshold used for datasets of `mode`.
double audit_threshold(Mode mode);

struct TangencyReport {
    std::vector<StrokeTimes> intersections;
    BoundWindow window;
    double eta_max_on_curve{};  // extremes of efficiency along the power level curve
    double eta_min_on_curve{};
    double eta_upper{};  // eta_upper * eta_C
    double eta_lower{};  // eta_lower_detailed * eta_C
    bool touches_tau_plus{};
    bool touches_tau_minus{};

    std::size_t count() const { return intersections.size(); }
};

/// Intersections of the level curves power = p and efficiency = eta in the
/// (t_h, t_c) quadrant. Tangential contacts count once. Requires M_h, M_c > 0
/// and 0 < p <= p_max (OutOfRangeError otherwise).
TangencyReport tangency_probe(const EngineSpec& spec, double p, double eta);

struct EntropyRow {
    double beta{};
    double omega0{};
    double eps{};
    double gamma{};
    double t_f{};
    double s_irr_numeric{};  // stroke production plus relaxation at the final frequency
    double s_irr_high_t{};
    double s_irr_low_t{};  // NaN where the low-temperature form is singular
};

/// One stroke simulation per t_f, started in equilibrium; the duration of
/// `stroke` is ignored.
std::vector<EntropyRow> entropy_scan(const tla::IsothermalStroke& stroke,
                                     const std::vector<double>& t_f_grid,
                                     const tla::StepControl& ctrl = {}, std::size_t threads = 0);

/// n points log-spaced over [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t n);
/// n points evenly spaced over [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

struct CurveRow {
    double eta_c{};
    double zeta{};
    double p_norm{};
    double eta_upper{};
    double eta_lower{};
    double eq1_upper{};
    double eq14_lower{};
};

std::vector<CurveRow> bound_curves(double eta_c, const std::vector<double>& zetas,
                                   const std::vector<double>& p_grid);

struct MniRow {
    double scale_h{};  // t_h / t_h at maximum power
    double scale_c{};
    double p_max{};
    double mni_pmax{};
};

/// mni_pmax against p_max on a grid of stroke times scaled from the EMP times.
std::vector<MniRow> mni_compare(const EngineSpec& spec, const std::vector<double>& scales);

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware).
/// The first exception thrown by any worker is rethrown.
template <typename Body>
void parallel_for(std::size_t n, std::size_t threads, Body&& body);

}  // namespace lowdiss::harness

#include "lowdiss/detail/parallel_for.hpp"
