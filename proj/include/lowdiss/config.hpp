// config.hpp - run configuration for the command-line tool
//
// Plain-text format:
//
//     # comment
//     [engine]
//     M_h = 9
//
// Sections and keys (defaults in parentheses):
//
//   [engine]    M_h (9), M_c (1), T_h (10), T_c (4), Q_rev (10)
//   [protocol]  omega_h_i (1), omega_h_f (0.5), omega_c_i (0.45), omega_c_f (0.9),
//               t_h (20), t_c (5), delta (0)
//   [coupling]  beta_h (0.1), beta_c (1/9), gamma_h (0.1), gamma_c (derived), zeta (0.5)
//               gamma_c, when absent, is tuned so that the dissipation asymmetry equals zeta.
//   [cycle]     tol (1e-12), max_cycles (100000), halving_tol (1e-10)
//   [sampling]  n (1000), t_h_min, t_h_max, t_c_min, t_c_max, seed (42),
//               mode (phenomenological | simulated)
//               Ranges default to [0.1, 100] in phenomenological mode and to
//               gamma-tilde t in [10, 1000] per stroke in simulated mode.
//   [entropy]   betas (0.1, 0.1111111111111111), omega0 (1), eps (0.1), gamma (1),
//               t_f_min (5e-5), t_f_max (50), points (61)
//   [curves]    eta_c (0.1), zetas (-1, 0, 0.5, 0.8, 1), points (201)
//   [mni]       scale_min (0.25), scale_max (4), points (9)
//   [output]    directory (out)
//
// Unknown sections or keys, duplicate keys and malformed values raise ConfigError.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lowdiss/bounds.hpp"
#include "lowdiss/errors.hpp"
#include "lowdiss/harness.hpp"
#include "lowdiss/tla.hpp"

namespace lowdiss::config {

class ConfigError : public DomainError {
public:
    explicit ConfigError(const std::string& what) : DomainError(what) {}
};

struct CouplingSection {
    double beta_h{0.1};
    double beta_c{1.0 / 9.0};
    double gamma_h{0.1};
    std::optional<double> gamma_c;
    double zeta{0.5};
};

struct SamplingSection {
    std::size_t n{1000};
    std::optional<double> t_h_min, t_h_max, t_c_min, t_c_max;
    std::uint64_t seed{42};
    harness::Mode mode{harness::Mode::phenomenological};
};

struct EntropySection {
    std::vector<double> betas{0.1, 1.0 / 9.0};
    double omega0{1.0};
    double eps{0.1};
    double gamma{1.0};
    double t_f_min{5e-5};
    double t_f_max{50.0};
    std::size_t points{61};
};

struct CurvesSection {
    double eta_c{0.1};
    std::vector<double> zetas{-1.0, 0.0, 0.5, 0.8, 1.0};
    std::size_t points{201};
};

struct MniSection {
    double scale_min{0.25};
    double scale_max{4.0};
    std::size_t points{9};
};

struct RunConfig {
    EngineSpec engine{9.0, 1.0, 10.0, 4.0, 10.0};
    tla::CycleProtocol protocol = tla::default_protocol();
    CouplingSection coupling;
    tla::SteadyCycleOptions cycle;
    SamplingSection sampling;
    EntropySection entropy;
    CurvesSection curves;
    MniSection mni;
    std::filesystem::path output_directory{"out"};

    /// Coupling with gamma_c filled in from zeta when it was not given.
    tla::BathCoupling bath_coupling() const;
    /// Sampling parameters with the mode-dependent default ranges applied.
    harness::SampleConfig sample_config(std::size_t threads) const;
};

RunConfig parse(std::istream& in);
RunConfig parse_string(const std::string& text);
RunConfig load(const std::filesystem::path& path);

}  // namespace lowdiss::config
