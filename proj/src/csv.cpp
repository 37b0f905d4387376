#include "lowdiss/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace lowdiss::csv {

std::string format_field(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.16e}", x);
}

std::string format_shortest(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_sample_row(std::ostream& out, const harness::SampleRow& r) {
    out << r.sample_id << ',' << harness::mode_name(r.mode) << ',' << format_field(r.t_h) << ','
        << format_field(r.t_c) << ',' << format_field(r.q_h) << ',' << format_field(r.q_c) << ','
        << format_field(r.work) << ',' << format_field(r.eta) << ',' << format_field(r.power)
        << ',' << format_field(r.p_norm) << ',' << format_field(r.eta_norm) << ','
        << harness::regime_name(r.regime) << '\n';
}

void write_samples(std::ostream& out, const std::vector<harness::SampleRow>& rows) {
    out << kSamplesHeader << '\n';
    for (const auto& r : rows) write_sample_row(out, r);
}

void write_entropy(std::ostream& out, const std::vector<harness::EntropyRow>& rows) {
    out << kEntropyHeader << '\n';
    for (const auto& r : rows) {
        out << format_field(r.beta) << ',' << format_field(r.omega0) << ',' << format_field(r.eps)
            << ',' << format_field(r.gamma) << ',' << format_field(r.t_f) << ','
            << format_field(r.s_irr_numeric) << ',' << format_field(r.s_irr_high_t) << ','
            << format_field(r.s_irr_low_t) << '\n';
    }
}

void write_curves(std::ostream& out, const std::vector<harness::CurveRow>& rows) {
    out << kCurvesHeader << '\n';
    for (const auto& r : rows) {
        out << format_field(r.eta_c) << ',' << format_field(r.zeta) << ',' << format_field(r.p_norm)
            << ',' << format_field(r.eta_upper) << ',' << format_field(r.eta_lower) << ','
            << format_field(r.eq1_upper) << ',' << format_field(r.eq14_lower) << '\n';
    }
}

void write_audit(std::ostream& out, const harness::AuditReport& report) {
    out << kAuditHeader << '\n';
    for (const auto& v : report.slacks) {
        out << v.sample_id << ',' << v.bound_id << ',' << format_field(v.slack) << '\n';
    }
}

void append_sample(const std::filesystem::path& path, const harness::SampleRow& row) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for appending");
    if (fresh) out << kSamplesHeader << '\n';
    write_sample_row(out, row);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace lowdiss::csv
