// AVX2 variants of the batch kernels. The formulas are the templates from
// bounds_formulas.hpp instantiated on a four-lane double vector. The loop
// tail calls the scalar variant so that no double instantiation is compiled
// with -mavx2 (the linker may otherwise pick it for the scalar path).

#include <cmath>
#include <limits>

#include "bounds_formulas.hpp"
#include "kernels_common.hpp"
#include "lowdiss/kernels.hpp"

#if defined(LOWDISS_BUILD_AVX2)
#include <immintrin.h>

namespace lowdiss::kernels::avx2 {

namespace {

struct Vec4d {
    __m256d v;

    Vec4d() = default;
    explicit Vec4d(double x) : v(_mm256_set1_pd(x)) {}
    explicit Vec4d(__m256d x) : v(x) {}

    static Vec4d load(const double* p) { return Vec4d(_mm256_loadu_pd(p)); }
    void store(double* p) const { _mm256_storeu_pd(p, v); }
};

inline Vec4d operator+(Vec4d a, Vec4d b) { return Vec4d(_mm256_add_pd(a.v, b.v)); }
inline Vec4d operator-(Vec4d a, Vec4d b) { return Vec4d(_mm256_sub_pd(a.v, b.v)); }
inline Vec4d operator*(Vec4d a, Vec4d b) { return Vec4d(_mm256_mul_pd(a.v, b.v)); }
inline Vec4d operator/(Vec4d a, Vec4d b) { return Vec4d(_mm256_div_pd(a.v, b.v)); }
inline Vec4d sqrt(Vec4d a) { return Vec4d(_mm256_sqrt_pd(a.v)); }
inline Vec4d fmax_zero(Vec4d a) { return Vec4d(_mm256_max_pd(a.v, _mm256_setzero_pd())); }

constexpr std::size_t kLanes = 4;

}  // namespace

void engine_batch(const EngineSpec& spec, std::span<const double> t_h,
                  std::span<const double> t_c, std::span<double> power,
                  std::span<double> efficiency) {
    require_same_size(t_h.size(), t_c.size(), power.size(), efficiency.size());
    const double eta_c = 1.0 - spec.t_cold_bath / spec.t_hot_bath;
    const Vec4d mh(spec.m_hot), mc(spec.m_cold), q(spec.q_rev), ec(eta_c);
    const Vec4d work_rev(eta_c * spec.q_rev);
    const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());
    const std::size_t n = t_h.size();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const Vec4d th = Vec4d::load(t_h.data() + i);
        const Vec4d tc = Vec4d::load(t_c.data() + i);
        detail::power(mh, mc, work_rev, th, tc).store(power.data() + i);
        const Vec4d eff = detail::efficiency(mh, mc, ec, q, th, tc);
        const __m256d intake = (q - mh / th).v;
        const __m256d ok = _mm256_cmp_pd(intake, _mm256_setzero_pd(), _CMP_GT_OQ);
        _mm256_storeu_pd(efficiency.data() + i, _mm256_blendv_pd(nan, eff.v, ok));
    }
    scalar::engine_batch(spec, t_h.subspan(i), t_c.subspan(i), power.subspan(i),
                         efficiency.subspan(i));
}

void eta_upper_batch(std::span<const double> p_norm, double zeta, double eta_c,
                     std::span<double> out) {
    require_same_size(p_norm.size(), out.size());
    const Vec4d z(zeta), ec(eta_c);
    std::size_t i = 0;
    for (; i + kLanes <= p_norm.size(); i += kLanes) {
        detail::eta_upper(Vec4d::load(p_norm.data() + i), z, ec).store(out.data() + i);
    }
    scalar::eta_upper_batch(p_norm.subspan(i), zeta, eta_c, out.subspan(i));
}

void eta_lower_batch(std::span<const double> p_norm, double zeta, double eta_c,
                     std::span<double> out) {
    require_same_size(p_norm.size(), out.size());
    const Vec4d z(zeta), ec(eta_c);
    std::size_t i = 0;
    for (; i + kLanes <= p_norm.size(); i += kLanes) {
        detail::eta_lower(Vec4d::load(p_norm.data() + i), z, ec).store(out.data() + i);
    }
    scalar::eta_lower_batch(p_norm.subspan(i), zeta, eta_c, out.subspan(i));
}

void constraint_slack_batch(std::span<const double> p_norm, std::span<const double> eta_norm,
                            double eta_c, std::span<double> out) {
    require_same_size(p_norm.size(), eta_norm.size(), out.size());
    const Vec4d ec(eta_c);
    std::size_t i = 0;
    for (; i + kLanes <= p_norm.size(); i += kLanes) {
        detail::eq_constraint_slack(Vec4d::load(p_norm.data() + i),
                                    Vec4d::load(eta_norm.data() + i), ec)
            .store(out.data() + i);
    }
    scalar::constraint_slack_batch(p_norm.subspan(i), eta_norm.subspan(i), eta_c, out.subspan(i));
}

void lower_slack_batch(std::span<const double> p_norm, std::span<const double> eta_norm,
                       std::span<double> out) {
    require_same_size(p_norm.size(), eta_norm.size(), out.size());
    std::size_t i = 0;
    for (; i + kLanes <= p_norm.size(); i += kLanes) {
        detail::universal_lower_slack(Vec4d::load(p_norm.data() + i),
                                      Vec4d::load(eta_norm.data() + i))
            .store(out.data() + i);
    }
    scalar::lower_slack_batch(p_norm.subspan(i), eta_norm.subspan(i), out.subspan(i));
}

}  // namespace lowdiss::kernels::avx2

#else  // no AVX2 in this build: the variant forwards to the reference

namespace lowdiss::kernels::avx2 {

void engine_batch(const EngineSpec& spec, std::span<const double> t_h,
                  std::span<const double> t_c, std::span<double> power,
                  std::span<double> efficiency) {
    scalar::engine_batch(spec, t_h, t_c, power, efficiency);
}
void eta_upper_batch(std::span<const double> p_norm, double zeta, double eta_c,
                     std::span<double> out) {
    scalar::eta_upper_batch(p_norm, zeta, eta_c, out);
}
void eta_lower_batch(std::span<const double> p_norm, double zeta, double eta_c,
                     std::span<double> out) {
    scalar::eta_lower_batch(p_norm, zeta, eta_c, out);
}
void constraint_slack_batch(std::span<const double> p_norm, std::span<const double> eta_norm,
                            double eta_c, std::span<double> out) {
    scalar::constraint_slack_batch(p_norm, eta_norm, eta_c, out);
}
void lower_slack_batch(std::span<const double> p_norm, std::span<const double> eta_norm,
                       std::span<double> out) {
    scalar::lower_slack_batch(p_norm, eta_norm, out);
}

}  // namespace lowdiss::kernels::avx2

#endif
