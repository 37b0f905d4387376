// csv.hpp - dataset writers and number formatting
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lowdiss/harness.hpp"

namespace lowdiss::csv {

/// 17 significant digits in scientific notation; "nan", "inf", "-inf" otherwise.
std::string format_field(double x);

/// Shortest text that parses back to exactly x.
std::string format_shortest(double x);

inline constexpr const char* kSamplesHeader =
    "sample_id,mode,t_h,t_c,q_h,q_c,work,eta,power,p_norm,eta_norm,regime_flag";
inline constexpr const char* kEntropyHeader =
    "beta,omega0,eps,gamma,t_f,s_irr_numeric,s_irr_high_t,s_irr_low_t";
inline constexpr const char* kCurvesHeader =
    "eta_c,zeta,p_norm,eta_upper,eta_lower,eq1_upper,eq14_lower";
inline constexpr const char* kAuditHeader = "sample_id,bound_id,slack";

void write_sample_row(std::ostream& out, const harness::SampleRow& row);
void write_samples(std::ostream& out, const std::vector<harness::SampleRow>& rows);
void write_entropy(std::ostream& out, const std::vector<harness::EntropyRow>& rows);
void write_curves(std::ostream& out, const std::vector<harness::CurveRow>& rows);
void write_audit(std::ostream& out, const harness::AuditReport& report);

/// Opens `path` for writing (creating parent directories) and calls fill.
/// Throws std::runtime_error when the file cannot be written.
template <typename Fill>
void write_file(const std::filesystem::path& path, Fill&& fill);

/// Appends one samples.csv row, writing the header first if the file is new or empty.
void append_sample(const std::filesystem::path& path, const harness::SampleRow& row);

}  // namespace lowdiss::csv

#include <fstream>
#include <stdexcept>

template <typename Fill>
void lowdiss::csv::write_file(const std::filesystem::path& path, Fill&& fill) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    fill(out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}
