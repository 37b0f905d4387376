#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <optional>
#include <ostream>

#include "lowdiss/bounds.hpp"
#include "lowdiss/config.hpp"
#include "lowdiss/csv.hpp"
#include "lowdiss/errors.hpp"
#include "lowdiss/harness.hpp"
#include "lowdiss/tla.hpp"

namespace lowdiss::cli {

namespace {

using csv::format_shortest;

struct Common {
    std::string config_path;
    std::size_t threads{0};
    std::string output;
};

config::RunConfig load_config(const Common& common) {
    config::RunConfig cfg =
        common.config_path.empty() ? config::RunConfig{} : config::load(common.config_path);
    if (!common.output.empty()) cfg.output_directory = common.output;
    return cfg;
}

void print_kv(std::ostream& out, const std::string& key, double value) {
    out << key << " = " << format_shortest(value) << '\n';
}

int cmd_bounds(double p_norm, double zeta, double eta_c, std::ostream& out) {
    const double upper = eta_upper(p_norm, zeta, eta_c);
    const double lower = eta_lower_detailed(p_norm, zeta, eta_c);
    const double s = std::sqrt(1.0 - p_norm);
    print_kv(out, "p_norm", p_norm);
    print_kv(out, "zeta", zeta);
    print_kv(out, "eta_c", eta_c);
    print_kv(out, "eta_upper", upper);
    print_kv(out, "eta_lower", lower);
    print_kv(out, "eq1_upper", universal_constraint_slack({p_norm, 0.0}, eta_c));
    print_kv(out, "eq14_lower", 0.5 * (1.0 - s));
    return kSuccess;
}

struct SimulateFlags {
    std::optional<double> t_h, t_c;
};

int cmd_simulate(const Common& common, const SimulateFlags& flags, std::ostream& out) {
    config::RunConfig cfg = load_config(common);
    if (flags.t_h) cfg.protocol.t_h = *flags.t_h;
    if (flags.t_c) cfg.protocol.t_c = *flags.t_c;
    const tla::BathCoupling bath = cfg.bath_coupling();
    const EngineSpec spec = tla::equivalent_engine(cfg.protocol, bath);
    const tla::AtomState start{tla::equilibrium_population(bath.beta_h, cfg.protocol.omega_h_start)};
    const tla::CycleResult r = tla::find_steady_cycle(cfg.protocol, bath, start, cfg.cycle);

    const double pm = p_max(spec);
    const double eta_c = spec.eta_carnot();
    harness::SampleRow row{0,         harness::Mode::simulated,
                           cfg.protocol.t_h, cfg.protocol.t_c,
                           r.q_h,     r.q_c,
                           r.work_out, r.eta.value_or(std::nan("")),
                           r.power,   r.power / pm,
                           r.eta.value_or(std::nan("")) / eta_c, harness::RegimeFlag::in_regime};
    const double x_h = harness::stroke_effective_rate(
                           tla::isothermal_stroke(cfg.protocol, bath, tla::Stroke::hot)) *
                       cfg.protocol.t_h;
    const double x_c = harness::stroke_effective_rate(
                           tla::isothermal_stroke(cfg.protocol, bath, tla::Stroke::cold)) *
                       cfg.protocol.t_c;
    if (x_h < harness::kRegimeThreshold || x_c < harness::kRegimeThreshold) {
        row.regime = harness::RegimeFlag::out_of_regime;
    }

    print_kv(out, "gamma_c", bath.gamma_c);
    print_kv(out, "t_h", cfg.protocol.t_h);
    print_kv(out, "t_c", cfg.protocol.t_c);
    print_kv(out, "cycles_to_converge", static_cast<double>(r.cycles_to_converge));
    print_kv(out, "q_h", r.q_h);
    print_kv(out, "q_c", r.q_c);
    print_kv(out, "work", r.work_out);
    print_kv(out, "power", r.power);
    out << "eta = " << (r.eta ? format_shortest(*r.eta) : std::string("undefined")) << '\n';
    print_kv(out, "eta_carnot", eta_c);
    print_kv(out, "p_max", pm);
    print_kv(out, "p_norm", row.p_norm);
    print_kv(out, "eta_norm", row.eta_norm);
    print_kv(out, "first_law_residual", r.first_law_residual);
    out << "regime = " << harness::regime_name(row.regime) << '\n';

    const auto path = cfg.output_directory / "samples.csv";
    csv::append_sample(path, row);
    out << "appended " << path.string() << '\n';
    return kSuccess;
}

struct SampleFlags {
    std::optional<std::size_t> n;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
};

int cmd_sample(const Common& common, const SampleFlags& flags, std::ostream& out) {
    config::RunConfig cfg = load_config(common);
    if (flags.n) cfg.sampling.n = *flags.n;
    if (flags.seed) cfg.sampling.seed = *flags.seed;
    if (flags.mode) cfg.sampling.mode = harness::parse_mode(*flags.mode);
    const harness::SampleConfig sc = cfg.sample_config(common.threads);

    const harness::Dataset data =
        sc.mode == harness::Mode::simulated
            ? harness::sample_points(sc, cfg.protocol, cfg.bath_coupling(), cfg.cycle)
            : harness::sample_points(sc, cfg.engine);
    const harness::AuditReport report = harness::audit_bounds(data);

    const auto samples_path = cfg.output_directory / "samples.csv";
    const auto audit_path = cfg.output_directory / "audit.csv";
    csv::write_file(samples_path, [&](std::ostream& o) { csv::write_samples(o, data.rows); });
    csv::write_file(audit_path, [&](std::ostream& o) { csv::write_audit(o, report); });

    out << "mode = " << harness::mode_name(data.mode) << '\n';
    out << "rows = " << data.rows.size() << '\n';
    out << "discarded_q_h_nonpositive = " << data.discarded_heat << '\n';
    out << "discarded_work_nonpositive = " << data.discarded_work << '\n';
    out << "audited = " << report.n_checked << '\n';
    out << "skipped = " << report.n_skipped << '\n';
    out << "violations = " << report.violations.size() << '\n';
    for (const auto& [id, slack] : report.min_slack_per_bound) {
        print_kv(out, "min_slack." + id, slack);
    }
    out << "wrote " << samples_path.string() << '\n' << "wrote " << audit_path.string() << '\n';
    return kSuccess;
}

int cmd_entropy_scan(const Common& common, std::ostream& out) {
    const config::RunConfig cfg = load_config(common);
    const auto& e = cfg.entropy;
    const std::vector<double> grid = harness::log_grid(e.t_f_min, e.t_f_max, e.points);
    std::vector<harness::EntropyRow> rows;
    for (double beta : e.betas) {
        const tla::IsothermalStroke stroke{beta, e.gamma, e.omega0, e.eps, 1.0};
        const auto part = harness::entropy_scan(stroke, grid, cfg.cycle.steps, common.threads);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    const auto path = cfg.output_directory / "entropy.csv";
    csv::write_file(path, [&](std::ostream& o) { csv::write_entropy(o, rows); });
    out << "rows = " << rows.size() << '\n' << "wrote " << path.string() << '\n';
    return kSuccess;
}

int cmd_curves(const Common& common, std::optional<double> eta_c, std::ostream& out) {
    const config::RunConfig cfg = load_config(common);
    const auto grid = harness::linear_grid(0.0, 1.0, cfg.curves.points);
    const auto rows = harness::bound_curves(eta_c.value_or(cfg.curves.eta_c), cfg.curves.zetas, grid);
    const auto path = cfg.output_directory / "curves.csv";
    csv::write_file(path, [&](std::ostream& o) { csv::write_curves(o, rows); });
    out << "rows = " << rows.size() << '\n' << "wrote " << path.string() << '\n';
    return kSuccess;
}

int cmd_mni_compare(const Common& common, std::ostream& out) {
    const config::RunConfig cfg = load_config(common);
    const auto scales = harness::log_grid(cfg.mni.scale_min, cfg.mni.scale_max, cfg.mni.points);
    const auto rows = harness::mni_compare(cfg.engine, scales);
    out << fmt::format("{:>24} {:>24} {:>24} {:>24} {:>24}\n", "t_h/t_h*", "t_c/t_c*", "p_max",
                       "mni_pmax", "ratio");
    for (const auto& r : rows) {
        out << fmt::format("{:>24} {:>24} {:>24} {:>24} {:>24}\n", format_shortest(r.scale_h),
                           format_shortest(r.scale_c), format_shortest(r.p_max),
                           format_shortest(r.mni_pmax), format_shortest(r.mni_pmax / r.p_max));
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Efficiency and power bounds of low-dissipation heat engines"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--config", common.config_path, "configuration file")->check(CLI::ExistingFile);
    app.add_option("--threads", common.threads, "worker threads (0 = all cores)");
    app.add_option("--output", common.output, "output directory (overrides [output] directory)");

    double p_norm{}, zeta{}, eta_c{};
    auto* bounds = app.add_subcommand("bounds", "print the efficiency bounds at one operating point");
    bounds->add_option("--p", p_norm, "normalized power P/P_max")->required();
    bounds->add_option("--zeta", zeta, "dissipation asymmetry")->required();
    bounds->add_option("--eta-c", eta_c, "Carnot efficiency")->required();

    SimulateFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "run one steady two-level-atom cycle");
    simulate->add_option("--t-h", sim_flags.t_h, "hot stroke duration");
    simulate->add_option("--t-c", sim_flags.t_c, "cold stroke duration");

    SampleFlags sample_flags;
    auto* sample = app.add_subcommand("sample", "random operating points and bound audit");
    sample->add_option("--n", sample_flags.n, "number of samples");
    sample->add_option("--seed", sample_flags.seed, "random seed");
    sample->add_option("--mode", sample_flags.mode, "phenomenological or simulated");

    auto* entropy = app.add_subcommand("entropy-scan", "entropy production against stroke time");

    std::optional<double> curves_eta_c;
    auto* curves = app.add_subcommand("curves", "tabulate the bound curves");
    curves->add_option("--eta-c", curves_eta_c, "Carnot efficiency");

    auto* mni = app.add_subcommand("mni-compare", "compare maximum powers of the two models");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*bounds) return cmd_bounds(p_norm, zeta, eta_c, out);
        if (*simulate) return cmd_simulate(common, sim_flags, out);
        if (*sample) return cmd_sample(common, sample_flags, out);
        if (*entropy) return cmd_entropy_scan(common, out);
        if (*curves) return cmd_curves(common, curves_eta_c, out);
        if (*mni) return cmd_mni_compare(common, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return kUsageError;
}

}  // namespace lowdiss::cli
