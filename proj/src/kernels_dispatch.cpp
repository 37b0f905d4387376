#include "lowdiss/kernels.hpp"

namespace lowdiss::kernels {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::avx2:
            return "avx2";
        case Isa::scalar:
            break;
    }
    return "scalar";
}

bool avx2_available() {
#if defined(LOWDISS_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported;
#else
    return false;
#endif
}

Isa active_isa() { return avx2_available() ? Isa::avx2 : Isa::scalar; }

void engine_batch(const EngineSpec& spec, std::span<const double> t_h,
                  std::span<const double> t_c, std::span<double> power,
                  std::span<double> efficiency) {
    if (avx2_available()) {
        avx2::engine_batch(spec, t_h, t_c, power, efficiency);
    } else {
        scalar::engine_batch(spec, t_h, t_c, power, efficiency);
    }
}

void eta_upper_batch(std::span<const double> p_norm, double zeta, double eta_c,
                     std::span<double> out) {
    if (avx2_available()) {
        avx2::eta_upper_batch(p_norm, zeta, eta_c, out);
    } else {
        scalar::eta_upper_batch(p_norm, zeta, eta_c, out);
    }
}

void eta_lower_batch(std::span<const double> p_norm, double zeta, double eta_c,
                     std::span<double> out) {
    if (avx2_available()) {
        avx2::eta_lower_batch(p_norm, zeta, eta_c, out);
    } else {
        scalar::eta_lower_batch(p_norm, zeta, eta_c, out);
    }
}

void constraint_slack_batch(std::span<const double> p_norm, std::span<const double> eta_norm,
                            double eta_c, std::span<double> out) {
    if (avx2_available()) {
        avx2::constraint_slack_batch(p_norm, eta_norm, eta_c, out);
    } else {
        scalar::constraint_slack_batch(p_norm, eta_norm, eta_c, out);
    }
}

void lower_slack_batch(std::span<const double> p_norm, std::span<const double> eta_norm,
                       std::span<double> out) {
    if (avx2_available()) {
        avx2::lower_slack_batch(p_norm, eta_norm, out);
    } else {
        scalar::lower_slack_batch(p_norm, eta_norm, out);
    }
}

}  // namespace lowdiss::kernels
