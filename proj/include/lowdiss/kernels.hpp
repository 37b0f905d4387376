// kernels.hpp - batch evaluation of the engine model and the bound slacks
//
// Three implementations share one contract: `scalar` is the reference,
// `avx2` processes four doubles per instruction, and the unqualified
// functions dispatch to the best variant the running CPU supports. All
// spans passed to one call must have the same length.

#pragma once

#include <span>
#include <string_view>

#include "lowdiss/bounds.hpp"

namespace lowdiss::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True when the binary carries the AVX2 variant and the CPU can run it.
bool avx2_available();

/// Variant chosen by the dispatching entry points.
Isa active_isa();

#define LOWDISS_KERNEL_DECLS                                                                    \
    /* power and efficiency of the engine at each (t_h, t_c); efficiency is NaN where the */     \
    /* hot-bath intake is nonpositive */                                                        \
    void engine_batch(const EngineSpec& spec, std::span<const double> t_h,                      \
                      std::span<const double> t_c, std::span<double> power,                     \
                      std::span<double> efficiency);                                            \
    void eta_upper_batch(std::span<const double> p_norm, double zeta, double eta_c,             \
                         std::span<double> out);                                                \
    void eta_lower_batch(std::span<const double> p_norm, double zeta, double eta_c,             \
                         std::span<double> out);                                                \
    void constraint_slack_batch(std::span<const double> p_norm, std::span<const double> eta_norm, \
                                double eta_c, std::span<double> out);                           \
    void lower_slack_batch(std::span<const double> p_norm, std::span<const double> eta_norm,    \
                           std::span<double> out);

namespace scalar {
LOWDISS_KERNEL_DECLS
}
namespace avx2 {
LOWDISS_KERNEL_DECLS
}
LOWDISS_KERNEL_DECLS

#undef LOWDISS_KERNEL_DECLS

}  // namespace lowdiss::kernels
