// bounds_formulas.hpp - closed-form expressions shared by the scalar API and
// the batch kernels. Each formula is a template over the arithmetic type so
// the same expression is instantiated for double and for SIMD lanes; the
// lane type must provide +, -, *, /, sqrt() and fmax_zero().

#pragma once

#include <algorithm>
#include <cmath>

namespace lowdiss::detail {

inline double fmax_zero(double x) { return std::max(x, 0.0); }

template <typename T>
inline T power(T m_hot, T m_cold, T work_rev, T t_h, T t_c) {
    return (work_rev - m_hot / t_h - m_cold / t_c) / (t_h + t_c);
}

template <typename T>
inline T efficiency(T m_hot, T m_cold, T eta_c, T q_rev, T t_h, T t_c) {
    const T hot = m_hot / t_h;
    return (eta_c * q_rev - hot - m_cold / t_c) / (q_rev - hot);
}

template <typename T>
inline T eta_upper(T p_norm, T zeta, T eta_c) {
    using std::sqrt;
    const T one(1.0);
    const T s = sqrt(fmax_zero(one - p_norm));
    const T one_s = one + s;
    const T a = one_s * one_s;
    const T zp = one + zeta;
    const T quarter_zp2_eta = zp * zp * T(0.25) * eta_c;
    const T d = a + (one - quarter_zp2_eta) * p_norm;
    const T root = sqrt(fmax_zero(eta_c * T(0.5) * (quarter_zp2_eta - zeta) * (one - s) + one - eta_c));
    const T tail = one - root - zp * T(0.25) * eta_c * (one - s);
    return a / d + (one - zeta * zeta) * p_norm * one_s / (d * d) * tail;
}

template <typename T>
inline T eta_lower(T p_norm, T zeta, T eta_c) {
    using std::sqrt;
    const T one(1.0);
    const T s = sqrt(fmax_zero(one - p_norm));
    return T(0.5) * (one - s) / (one - T(0.125) * eta_c * (one + zeta) * (one + s));
}

template <typename T>
inline T eq_constraint_slack(T p_norm, T eta_norm, T eta_c) {
    using std::sqrt;
    const T one(1.0);
    const T s = sqrt(fmax_zero(one - p_norm));
    return one - (eta_norm + (one - eta_c) * p_norm / (T(2.0) * (one + s) - eta_c * p_norm));
}

template <typename T>
inline T universal_lower_slack(T p_norm, T eta_norm) {
    using std::sqrt;
    const T one(1.0);
    return T(2.0) * eta_norm + sqrt(fmax_zero(one - p_norm)) - one;
}

}  // namespace lowdiss::detail
