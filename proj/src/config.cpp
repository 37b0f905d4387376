#include "lowdiss/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace lowdiss::config {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
    throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double to_double(const std::string& text, std::size_t line) {
    double value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        fail(line, "expected a number, got '" + text + "'");
    }
    return value;
}

template <typename Int>
Int to_integer(const std::string& text, std::size_t line) {
    Int value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        fail(line, "expected a nonnegative integer, got '" + text + "'");
    }
    return value;
}

std::vector<double> to_list(const std::string& text, std::size_t line) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), line));
    if (out.empty()) fail(line, "expected a comma-separated list of numbers");
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, std::size_t)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
    static const std::map<std::string, std::map<std::string, Setter>> table{
        {"engine",
         {
             {"M_h", [](RunConfig& c, const std::string& v, std::size_t l) { c.engine.m_hot = to_double(v, l); }},
             {"M_c", [](RunConfig& c, const std::string& v, std::size_t l) { c.engine.m_cold = to_double(v, l); }},
             {"T_h", [](RunConfig& c, const std::string& v, std::size_t l) { c.engine.t_hot_bath = to_double(v, l); }},
             {"T_c", [](RunConfig& c, const std::string& v, std::size_t l) { c.engine.t_cold_bath = to_double(v, l); }},
             {"Q_rev", [](RunConfig& c, const std::string& v, std::size_t l) { c.engine.q_rev = to_double(v, l); }},
         }},
        {"protocol",
         {
             {"omega_h_i", [](RunConfig& c, const std::string& v, std::size_t l) {
                  const double end = c.protocol.omega_h_end();
                  c.protocol.omega_h_start = to_double(v, l);
                  c.protocol.eps_h = end - c.protocol.omega_h_start;
              }},
             {"omega_h_f", [](RunConfig& c, const std::string& v, std::size_t l) {
                  c.protocol.eps_h = to_double(v, l) - c.protocol.omega_h_start;
              }},
             {"omega_c_i", [](RunConfig& c, const std::string& v, std::size_t l) {
                  const double end = c.protocol.omega_c_end();
                  c.protocol.omega_c_start = to_double(v, l);
                  c.protocol.eps_c = end - c.protocol.omega_c_start;
              }},
             {"omega_c_f", [](RunConfig& c, const std::string& v, std::size_t l) {
                  c.protocol.eps_c = to_double(v, l) - c.protocol.omega_c_start;
              }},
             {"t_h", [](RunConfig& c, const std::string& v, std::size_t l) { c.protocol.t_h = to_double(v, l); }},
             {"t_c", [](RunConfig& c, const std::string& v, std::size_t l) { c.protocol.t_c = to_double(v, l); }},
             {"delta", [](RunConfig& c, const std::string& v, std::size_t l) { c.protocol.delta = to_double(v, l); }},
         }},
        {"coupling",
         {
             {"beta_h", [](RunConfig& c, const std::string& v, std::size_t l) { c.coupling.beta_h = to_double(v, l); }},
             {"beta_c", [](RunConfig& c, const std::string& v, std::size_t l) { c.coupling.beta_c = to_double(v, l); }},
             {"gamma_h", [](RunConfig& c, const std::string& v, std::size_t l) { c.coupling.gamma_h = to_double(v, l); }},
             {"gamma_c", [](RunConfig& c, const std::string& v, std::size_t l) { c.coupling.gamma_c = to_double(v, l); }},
             {"zeta", [](RunConfig& c, const std::string& v, std::size_t l) { c.coupling.zeta = to_double(v, l); }},
         }},
        {"cycle",
         {
             {"tol", [](RunConfig& c, const std::string& v, std::size_t l) { c.cycle.tol = to_double(v, l); }},
             {"max_cycles", [](RunConfig& c, const std::string& v, std::size_t l) {
                  c.cycle.max_cycles = to_integer<std::size_t>(v, l);
              }},
             {"halving_tol", [](RunConfig& c, const std::string& v, std::size_t l) {
                  c.cycle.steps.halving_tol = to_double(v, l);
              }},
         }},
        {"sampling",
         {
             {"n", [](RunConfig& c, const std::string& v, std::size_t l) { c.sampling.n = to_integer<std::size_t>(v, l); }},
             {"t_h_min", [](RunConfig& c, const std::string& v, std::size_t l) { c.sampling.t_h_min = to_double(v, l); }},
             {"t_h_max", [](RunConfig& c, const std::string& v, std::size_t l) { c.sampling.t_h_max = to_double(v, l); }},
             {"t_c_min", [](RunConfig& c, const std::string& v, std::size_t l) { c.sampling.t_c_min = to_double(v, l); }},
             {"t_c_max", [](RunConfig& c, const std::string& v, std::size_t l) { c.sampling.t_c_max = to_double(v, l); }},
             {"seed", [](RunConfig& c, const std::string& v, std::size_t l) {
                  c.sampling.seed = to_integer<std::uint64_t>(v, l);
              }},
             {"mode", [](RunConfig& c, const std::string& v, std::size_t l) {
                  try {
                      c.sampling.mode = harness::parse_mode(v);
                  } catch (const DomainError& e) {
                      fail(l, e.what());
                  }
              }},
         }},
        {"entropy",
         {
             {"betas", [](RunConfig& c, const std::string& v, std::size_t l) { c.entropy.betas = to_list(v, l); }},
             {"omega0", [](RunConfig& c, const std::string& v, std::size_t l) { c.entropy.omega0 = to_double(v, l); }},
             {"eps", [](RunConfig& c, const std::string& v, std::size_t l) { c.entropy.eps = to_double(v, l); }},
             {"gamma", [](RunConfig& c, const std::string& v, std::size_t l) { c.entropy.gamma = to_double(v, l); }},
             {"t_f_min", [](RunConfig& c, const std::string& v, std::size_t l) { c.entropy.t_f_min = to_double(v, l); }},
             {"t_f_max", [](RunConfig& c, const std::string& v, std::size_t l) { c.entropy.t_f_max = to_double(v, l); }},
             {"points", [](RunConfig& c, const std::string& v, std::size_t l) {
                  c.entropy.points = to_integer<std::size_t>(v, l);
              }},
         }},
        {"curves",
         {
             {"eta_c", [](RunConfig& c, const std::string& v, std::size_t l) { c.curves.eta_c = to_double(v, l); }},
             {"zetas", [](RunConfig& c, const std::string& v, std::size_t l) { c.curves.zetas = to_list(v, l); }},
             {"points", [](RunConfig& c, const std::string& v, std::size_t l) {
                  c.curves.points = to_integer<std::size_t>(v, l);
              }},
         }},
        {"mni",
         {
             {"scale_min", [](RunConfig& c, const std::string& v, std::size_t l) { c.mni.scale_min = to_double(v, l); }},
             {"scale_max", [](RunConfig& c, const std::string& v, std::size_t l) { c.mni.scale_max = to_double(v, l); }},
             {"points", [](RunConfig& c, const std::string& v, std::size_t l) {
                  c.mni.points = to_integer<std::size_t>(v, l);
              }},
         }},
        {"output",
         {
             {"directory", [](RunConfig& c, const std::string& v, std::size_t) { c.output_directory = v; }},
         }},
    };
    return table;
}

}  // namespace

tla::BathCoupling RunConfig::bath_coupling() const {
    if (coupling.gamma_c) {
        tla::BathCoupling c{coupling.beta_h, coupling.beta_c, coupling.gamma_h, *coupling.gamma_c};
        c.validate();
        return c;
    }
    return tla::couplings_for_zeta(protocol, coupling.beta_h, coupling.beta_c, coupling.zeta,
                                   coupling.gamma_h);
}

harness::SampleConfig RunConfig::sample_config(std::size_t threads) const {
    harness::SampleConfig sc;
    sc.n_samples = sampling.n;
    sc.seed = sampling.seed;
    sc.mode = sampling.mode;
    sc.threads = threads;
    harness::TimeRange h{0.1, 100.0}, c{0.1, 100.0};
    if (sampling.mode == harness::Mode::simulated) {
        const tla::BathCoupling bath = bath_coupling();
        const double g_h = harness::stroke_effective_rate(
            tla::isothermal_stroke(protocol, bath, tla::Stroke::hot));
        const double g_c = harness::stroke_effective_rate(
            tla::isothermal_stroke(protocol, bath, tla::Stroke::cold));
        h = {harness::kRegimeThreshold / g_h, 100.0 * harness::kRegimeThreshold / g_h};
        c = {harness::kRegimeThreshold / g_c, 100.0 * harness::kRegimeThreshold / g_c};
    }
    sc.t_range_h = {sampling.t_h_min.value_or(h.lo), sampling.t_h_max.value_or(h.hi)};
    sc.t_range_c = {sampling.t_c_min.value_or(c.lo), sampling.t_c_max.value_or(c.hi)};
    sc.validate();
    return sc;
}

RunConfig parse(std::istream& in) {
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find_first_of("#;");
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "malformed section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!schema().count(section)) fail(line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        if (section.empty()) fail(line_no, "key outside of any section");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const auto& keys = schema().at(section);
        const auto it = keys.find(key);
        if (it == keys.end()) fail(line_no, "unknown key '" + key + "' in [" + section + "]");
        if (!seen.insert(section + "." + key).second) {
            fail(line_no, "duplicate key '" + key + "' in [" + section + "]");
        }
        it->second(cfg, value, line_no);
    }
    return cfg;
}

RunConfig parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

RunConfig load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    return parse(in);
}

}  // namespace lowdiss::config
