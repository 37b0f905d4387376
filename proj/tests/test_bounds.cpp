#include <doctest.h>

#include <cmath>

#include "lowdiss/bounds.hpp"
#include "lowdiss/errors.hpp"
#include "oracles.hpp"

using namespace lowdiss;

namespace {

const EngineSpec kReference{9.0, 1.0, 10.0, 4.0, 10.0};

EngineSpec with_zeta(double zeta) {
    // Keep M = 16 while splitting it according to zeta.
    const double root_m = 4.0;
    const double a = root_m * (1.0 + zeta) / 2.0, b = root_m * (1.0 - zeta) / 2.0;
    return {a * a, b * b, 10.0, 4.0, 10.0};
}

}  // namespace

TEST_CASE("engine model at the maximum-power times") {
    CHECK(carnot_efficiency(kReference) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(kReference.m_total() == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(p_max(kReference) == doctest::Approx(0.5625).epsilon(1e-15));
    const StrokeTimes t = emp_times(kReference);
    CHECK(t.t_h == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(t.t_c == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(power(kReference, t) == doctest::Approx(0.5625).epsilon(1e-14));
    CHECK(efficiency(kReference, t) == doctest::Approx(3.0 / 7.75).epsilon(1e-14));
    CHECK(efficiency(kReference, t) / 0.6 == doctest::Approx(0.645161).epsilon(1e-6));
    const HeatPair q = heats(kReference, t);
    CHECK(q.q_h + q.q_c == doctest::Approx(power(kReference, t) * t.total()).epsilon(1e-14));
}

TEST_CASE("maximum power agrees with a brute-force grid") {
    for (const EngineSpec& s : {kReference, EngineSpec{2.0, 3.0, 5.0, 1.0, 4.0}, with_zeta(-0.7)}) {
        CHECK(oracle::brute_max_power(s, 1e-2, 1e3) == doctest::Approx(p_max(s)).epsilon(1e-6));
    }
}

TEST_CASE("power and efficiency limits and errors") {
    CHECK(power(kReference, {1e9, 1e9}) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(efficiency(kReference, {1e12, 1e12}) == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(power(kReference, {1.0, 0.1}) < 0.0);
    CHECK_THROWS_AS(efficiency(kReference, {0.5, 1.0}), InvalidRegimeError);
    CHECK_THROWS_AS(power(kReference, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(p_max(EngineSpec{0.0, 0.0, 10.0, 4.0, 10.0}), DomainError);
    CHECK_THROWS_AS(p_max(EngineSpec{1.0, 1.0, 4.0, 10.0, 10.0}), DomainError);
    const EngineSpec single{4.0, 0.0, 10.0, 4.0, 10.0};
    CHECK(p_max(single) == doctest::Approx(36.0 / 16.0).epsilon(1e-15));
    CHECK_THROWS_AS(emp_times(single), DomainError);
    const StrokeTimes sym = emp_times(EngineSpec{2.0, 2.0, 3.0, 1.0, 1.0});
    CHECK(sym.t_h == doctest::Approx(sym.t_c).epsilon(1e-15));
}

TEST_CASE("time window") {
    const BoundWindow w = tau_window(kReference, 0.3375);
    CHECK(w.tau_minus == doctest::Approx(3.2671).epsilon(1e-4));
    CHECK(w.tau_plus == doctest::Approx(14.5107).epsilon(1e-4));
    for (double tau : {w.tau_minus, w.tau_plus}) {
        CHECK(0.3375 * tau * tau - 6.0 * tau + 16.0 == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
    const BoundWindow at_max = tau_window(kReference, p_max(kReference));
    CHECK(at_max.tau_minus == doctest::Approx(at_max.tau_plus).epsilon(1e-15));
    CHECK(at_max.tau_plus == doctest::Approx(6.0 / (2.0 * 0.5625)).epsilon(1e-15));
    CHECK_THROWS_AS(tau_window(kReference, 0.0), OutOfRangeError);
    CHECK_THROWS_AS(tau_window(kReference, 0.6), OutOfRangeError);
}

TEST_CASE("upper bound endpoint identities") {
    for (double ec = 0.1; ec < 0.95; ec += 0.1) {
        CHECK(eta_upper(1.0, 1.0, ec) == doctest::Approx(1.0 / (2.0 - ec)).epsilon(1e-14));
        CHECK(eta_upper(1.0, -1.0, ec) == doctest::Approx(0.5).epsilon(1e-14));
        for (double z : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
            CHECK(eta_upper(0.0, z, ec) == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
    CHECK(eta_upper(1.0, 0.5, 0.6) == doctest::Approx(0.650983).epsilon(1e-6));
    CHECK_THROWS_AS(eta_upper(1.5, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(eta_upper(0.5, 1.5, 0.5), DomainError);
    CHECK_THROWS_AS(eta_upper(0.5, 0.0, 1.0), DomainError);
}

TEST_CASE("upper bound is the best efficiency on the long-time edge of the window") {
    for (double zeta : {-0.8, 0.0, 0.5, 0.9}) {
        const EngineSpec s = with_zeta(zeta);
        for (double pn : {0.1, 0.4, 0.7, 0.95}) {
            const double p = pn * p_max(s);
            const double tau = tau_window(s, p).tau_plus;
            const double expected = eta_upper(pn, zeta, 0.6) * 0.6;
            CHECK(oracle::max_efficiency_on_line(s, tau) == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("upper bound dominates the efficiency on every power level set") {
    for (double zeta : {-0.5, 0.5, 0.8}) {
        const EngineSpec s = with_zeta(zeta);
        for (double pn = 0.1; pn < 0.95; pn += 0.2) {
            const auto ex = oracle::efficiency_extremes_at_power(s, pn * p_max(s));
            CHECK(ex.max <= eta_upper(pn, zeta, 0.6) * 0.6 * (1.0 + 1e-12));
            CHECK(ex.min >= eta_lower_detailed(pn, zeta, 0.6) * 0.6 * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("detailed lower bound values") {
    CHECK(eta_lower_detailed(1.0, 0.5, 0.6) == doctest::Approx(0.5 / 0.8875).epsilon(1e-14));
    CHECK(eta_lower_detailed(0.0, 0.3, 0.6) == 0.0);
    for (double pn : {0.1, 0.5, 0.9}) {
        CHECK(eta_lower_detailed(pn, -1.0, 0.4) ==
              doctest::Approx(0.5 * (1.0 - std::sqrt(1.0 - pn))).epsilon(1e-15));
    }
}

TEST_CASE("times on the window edges") {
    const EngineSpec s = kReference;
    const double p = 0.6 * p_max(s);
    const BoundWindow w = tau_window(s, p);

    const StrokeTimes up = times_at_upper_bound(s, p);
    CHECK(up.total() == doctest::Approx(w.tau_plus).epsilon(1e-12));
    CHECK(up.total() == doctest::Approx(14.5107).epsilon(1e-4));
    CHECK(efficiency(s, up) == doctest::Approx(eta_upper(0.6, s.zeta(), 0.6) * 0.6).epsilon(1e-9));
    CHECK(power(s, up) <= p * (1.0 + 1e-12));

    const StrokeTimes lo = th_at_lower_bound(s, p);
    CHECK(lo.total() == doctest::Approx(w.tau_minus).epsilon(1e-12));
    CHECK(power(s, lo) == doctest::Approx(p).epsilon(1e-12));
    CHECK(efficiency(s, lo) ==
          doctest::Approx(eta_at_lower_tangency(0.6, s.zeta(), 0.6) * 0.6).epsilon(1e-9));
    // The quadratic in t_h obtained from power = p on t_h + t_c = tau_minus has a double root.
    const double r = 6.0 - p * w.tau_minus;
    const double b = r * w.tau_minus + s.m_hot - s.m_cold;
    CHECK(b * b - 4.0 * r * s.m_hot * w.tau_minus == doctest::Approx(0.0).scale(b * b).epsilon(1e-10));

    const StrokeTimes cold_only = th_at_lower_bound(EngineSpec{0.0, 4.0, 10.0, 4.0, 10.0}, 0.3);
    CHECK(cold_only.t_h == 0.0);
    CHECK(cold_only.t_c > 0.0);

    // With all dissipation on the hot side the two tangencies coincide.
    const EngineSpec hot_only{16.0, 0.0, 10.0, 4.0, 10.0};
    const StrokeTimes t1 = times_at_upper_bound(hot_only, 0.3);
    CHECK(t1.t_c == 0.0);
    const double p1 = (6.0 - 16.0 / t1.t_h) / t1.t_h;
    const double e1 = (6.0 - 16.0 / t1.t_h) / (10.0 - 16.0 / t1.t_h);
    CHECK(p1 == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(e1 == doctest::Approx(eta_upper(0.3 / p_max(hot_only), 1.0, 0.6) * 0.6).epsilon(1e-9));
}

TEST_CASE("universal slacks vanish on their boundaries") {
    for (double ec : {0.1, 0.5, 0.9}) {
        CHECK(universal_constraint_slack({1.0, 1.0 / (2.0 - ec)}, ec) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
        CHECK(universal_constraint_slack({0.0, 1.0}, ec) == 0.0);
        for (double pn : {0.2, 0.6, 0.95}) {
            CHECK(universal_constraint_slack({pn, eta_upper(pn, 1.0, ec)}, ec) ==
                  doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
        }
    }
    CHECK(universal_lower_slack({1.0, 0.5}) == 0.0);
    CHECK(universal_lower_slack({0.0, 0.0}) == 0.0);
}

TEST_CASE("property: convexity of the dissipation sum") {
    auto g = oracle::rng(11);
    for (int i = 0; i < 20000; ++i) {
        const double mh = oracle::log_uniform(g, 1e-3, 1e3), mc = oracle::log_uniform(g, 1e-3, 1e3);
        const double th = oracle::log_uniform(g, 1e-3, 1e3), tc = oracle::log_uniform(g, 1e-3, 1e3);
        const double lhs = mh / th + mc / tc;
        const double rhs = std::pow(std::sqrt(mh) + std::sqrt(mc), 2) / (th + tc);
        REQUIRE((rhs - lhs) / lhs < 1e-12);
    }
}

TEST_CASE("property: window, sandwich and efficiency monotonicity on random engines") {
    auto g = oracle::rng(23);
    int checked = 0;
    for (int i = 0; i < 20000; ++i) {
        const EngineSpec s{oracle::log_uniform(g, 0.01, 100.0), oracle::log_uniform(g, 0.01, 100.0),
                           10.0, oracle::uniform(g, 0.5, 9.5), oracle::log_uniform(g, 0.1, 100.0)};
        const StrokeTimes t{oracle::log_uniform(g, 0.01, 1000.0), oracle::log_uniform(g, 0.01, 1000.0)};
        const double p = power(s, t);
        const double intake = s.q_rev - s.m_hot / t.t_h;
        if (!(p > 0.0 && intake > 0.0)) continue;
        ++checked;
        const double ec = s.eta_carnot();
        const double pn = p / p_max(s);
        const double en = efficiency(s, t) / ec;
        REQUIRE(window_slack(s, t) >= -1e-12);
        REQUIRE(pn <= 1.0 + 1e-12);
        REQUIRE(universal_constraint_slack({pn, en}, ec) >= -1e-12);
        REQUIRE(universal_lower_slack({pn, en}) >= -1e-12);
        REQUIRE(en <= eta_upper(std::min(pn, 1.0), s.zeta(), ec) + 1e-9);
        REQUIRE(en >= eta_lower_detailed(std::min(pn, 1.0), s.zeta(), ec) - 1e-9);
        const double h = 1e-6;
        REQUIRE(efficiency(s, {t.t_h * (1 + h), t.t_c}) > efficiency(s, {t.t_h * (1 - h), t.t_c}));
        REQUIRE(efficiency(s, {t.t_h, t.t_c * (1 + h)}) > efficiency(s, {t.t_h, t.t_c * (1 - h)}));
    }
    CHECK(checked > 1000);
}

TEST_CASE("monotonicity of the upper bound in zeta") {
    for (double ec : {1e-6, 0.4, 0.8, 1.0 - 1e-6}) {
        CHECK(monotonicity_scan(ec, 200, 200, 1e-5) >= -1e-9);
    }
    CHECK(std::abs(monotonicity_scan(1e-6, 50, 50, 1e-5)) < 1e-5);
    CHECK_THROWS_AS(monotonicity_scan(0.5, 1, 10, 1e-5), DomainError);
    CHECK_THROWS_AS(monotonicity_scan(0.5, 10, 10, 1e-2), DomainError);
}

TEST_CASE("minimally nonlinear model maximum power") {
    CHECK(mni_pmax(kReference, emp_times(kReference)) == doctest::Approx(p_max(kReference)).epsilon(1e-14));
    const EngineSpec sym{2.0, 2.0, 10.0, 4.0, 10.0};
    CHECK(mni_pmax(sym, {3.0, 3.0}) == doctest::Approx(p_max(sym)).epsilon(1e-14));
    auto g = oracle::rng(5);
    for (int i = 0; i < 1000; ++i) {
        const StrokeTimes t{oracle::log_uniform(g, 0.1, 100.0), oracle::log_uniform(g, 0.1, 100.0)};
        REQUIRE(mni_pmax(kReference, t) <= p_max(kReference) * (1.0 + 1e-15));
    }
}

TEST_CASE("zeta") {
    CHECK(kReference.zeta() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(zeta_from(1.0, 1.0) == 0.0);
    CHECK(zeta_from(1.0, 0.0) == 1.0);
    CHECK(zeta_from(0.0, 1.0) == -1.0);
    CHECK(with_zeta(0.3).zeta() == doctest::Approx(0.3).epsilon(1e-14));
}
