#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "lowdiss/csv.hpp"
#include "lowdiss/errors.hpp"
#include "lowdiss/harness.hpp"
#include "oracles.hpp"

using namespace lowdiss;
using namespace lowdiss::harness;

namespace {

const EngineSpec kReference{9.0, 1.0, 10.0, 4.0, 10.0};

}  // namespace

TEST_CASE("random streams are keyed by seed and index") {
    CHECK(sample_uniform(1, 0, 0) == sample_uniform(1, 0, 0));
    CHECK(sample_uniform(1, 0, 0) != sample_uniform(2, 0, 0));
    CHECK(sample_uniform(1, 0, 0) != sample_uniform(1, 1, 0));
    CHECK(sample_uniform(1, 0, 0) != sample_uniform(1, 0, 1));
    double lo = 1.0, hi = 0.0;
    for (std::size_t i = 0; i < 2000; ++i) {
        const double u = sample_uniform(7, i, 0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("sample configuration validation") {
    SampleConfig c;
    c.n_samples = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.t_range_h = {-1.0, 2.0};
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.t_range_c = {3.0, 2.0};
    CHECK_THROWS_AS(c.validate(), DomainError);
    CHECK(parse_mode("simulated") == Mode::simulated);
    CHECK_THROWS_AS(parse_mode("other"), DomainError);
}

TEST_CASE("phenomenological sampling is deterministic and respects the bounds") {
    SampleConfig c;
    c.n_samples = 10000;
    c.seed = 3;
    const Dataset d1 = sample_points(c, kReference);
    const Dataset d2 = sample_points(c, kReference);
    std::ostringstream a, b;
    csv::write_samples(a, d1.rows);
    csv::write_samples(b, d2.rows);
    CHECK(a.str() == b.str());
    CHECK(d1.rows.size() + d1.discarded_heat + d1.discarded_work == c.n_samples);
    CHECK(d1.rows.size() > 1000);

    const SampleConfig one{1, c.t_range_h, c.t_range_c, 3, Mode::phenomenological, 1};
    const Dataset single = sample_points(one, kReference);
    if (!single.rows.empty()) CHECK(single.rows[0].t_h == d1.rows[0].t_h);

    for (const SampleRow& r : d1.rows) {
        const BoundWindow w = tau_window(kReference, r.power);
        REQUIRE(r.t_h + r.t_c >= w.tau_minus * (1 - 1e-12));
        REQUIRE(r.t_h + r.t_c <= w.tau_plus * (1 + 1e-12));
        REQUIRE(r.q_h > 0.0);
        REQUIRE(r.work > 0.0);
    }
    const AuditReport rep = audit_bounds(d1);
    CHECK(rep.violations.empty());
    CHECK(rep.n_checked == d1.rows.size());
    CHECK(rep.slacks.size() == d1.rows.size() * bound_ids().size());
    for (const auto& [id, slack] : rep.min_slack_per_bound) {
        CHECK(std::isfinite(slack));
        CHECK(slack >= -1e-12);
    }
}

TEST_CASE("audit of a maximum-power dataset") {
    Dataset d;
    d.mode = Mode::phenomenological;
    d.spec = kReference;
    const StrokeTimes t = emp_times(kReference);
    const HeatPair q = heats(kReference, t);
    const double eta = efficiency(kReference, t);
    d.rows.push_back({0, Mode::phenomenological, t.t_h, t.t_c, q.q_h, q.q_c, q.q_h + q.q_c, eta,
                      power(kReference, t), 1.0, eta / 0.6, RegimeFlag::in_regime});
    const AuditReport rep = audit_bounds(d);
    CHECK(rep.violations.empty());
    CHECK(d.rows[0].eta_norm > 0.5);
    CHECK(d.rows[0].eta_norm < 1.0 / 1.4);
    CHECK(rep.min_slack_per_bound.at("pmax") == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

    d.rows[0].regime = RegimeFlag::out_of_regime;
    CHECK_THROWS_AS(audit_bounds(d), DomainError);
    d.rows.clear();
    CHECK_THROWS_AS(audit_bounds(d), DomainError);
}

TEST_CASE("simulated sampling flags the regime and is thread-count independent") {
    SampleConfig c;
    c.mode = Mode::simulated;
    c.n_samples = 12;
    c.seed = 9;
    c.t_range_h = {1.0, 200.0};
    c.t_range_c = {0.1, 20.0};
    c.threads = 1;
    const Dataset one = sample_points(c, tla::default_protocol(), tla::default_coupling());
    c.threads = 4;
    const Dataset four = sample_points(c, tla::default_protocol(), tla::default_coupling());
    std::ostringstream a, b;
    csv::write_samples(a, one.rows);
    csv::write_samples(b, four.rows);
    CHECK(a.str() == b.str());
    std::set<RegimeFlag> flags;
    for (const SampleRow& r : one.rows) flags.insert(r.regime);
    CHECK(flags.count(RegimeFlag::out_of_regime) == 1);
    const AuditReport rep = audit_bounds(one);
    CHECK(rep.n_skipped > 0);
    CHECK(rep.violations.empty());
}

TEST_CASE("tangency probe at sixty percent of maximum power") {
    const double p = 0.6 * p_max(kReference);
    const auto ex = oracle::efficiency_extremes_at_power(kReference, p);

    const TangencyReport between = tangency_probe(kReference, p, 0.5 * (ex.max + ex.min));
    CHECK(between.count() == 2);
    CHECK(between.eta_max_on_curve == doctest::Approx(ex.max).epsilon(1e-10));
    CHECK(between.eta_min_on_curve == doctest::Approx(ex.min).epsilon(1e-10));
    for (const StrokeTimes& t : between.intersections) {
        CHECK(power(kReference, t) == doctest::Approx(p).epsilon(1e-9));
        CHECK(t.total() >= between.window.tau_minus * (1 - 1e-9));
        CHECK(t.total() <= between.window.tau_plus * (1 + 1e-9));
    }

    CHECK(tangency_probe(kReference, p, ex.max).count() == 1);
    CHECK(tangency_probe(kReference, p, ex.min).count() == 1);
    CHECK(tangency_probe(kReference, p, ex.max * 1.001).count() == 0);
    CHECK(tangency_probe(kReference, p, ex.min * 0.999).count() == 0);
    CHECK(tangency_probe(kReference, p, between.eta_upper * 1.01).count() == 0);
    CHECK(between.eta_upper >= ex.max);
    CHECK(between.eta_lower <= ex.min);

    const TangencyReport top = tangency_probe(kReference, p_max(kReference), efficiency(kReference, emp_times(kReference)));
    CHECK(top.count() == 1);
    CHECK(top.touches_tau_minus);
    CHECK(top.touches_tau_plus);

    CHECK_THROWS_AS(tangency_probe(kReference, 0.0, 0.3), OutOfRangeError);
    CHECK_THROWS_AS(tangency_probe(kReference, 0.6, 0.3), OutOfRangeError);
}

TEST_CASE("bound curves") {
    const auto grid = linear_grid(0.0, 1.0, 101);
    const std::vector<double> zetas{-1.0, 0.0, 0.5, 0.8, 1.0};
    const auto rows = bound_curves(0.8, zetas, grid);
    REQUIRE(rows.size() == zetas.size() * grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t z = 0; z + 1 < zetas.size(); ++z) {
            REQUIRE(rows[z * grid.size() + i].eta_upper <= rows[(z + 1) * grid.size() + i].eta_upper + 1e-15);
        }
        const CurveRow& top = rows[(zetas.size() - 1) * grid.size() + i];
        REQUIRE(top.eta_upper == doctest::Approx(top.eq1_upper).epsilon(1e-13));
        REQUIRE(rows[i].eta_lower == doctest::Approx(rows[i].eq14_lower).epsilon(1e-13));
    }
    for (std::size_t z = 0; z < zetas.size(); ++z) CHECK(rows[z * grid.size()].eta_upper == 1.0);
    CHECK_THROWS_AS(bound_curves(0.8, {2.0}, grid), DomainError);
}

TEST_CASE("entropy scan columns") {
    const tla::IsothermalStroke s{0.1, 1.0, 1.0, 0.1, 1.0};
    const auto rows = entropy_scan(s, {0.1, 0.5, 5.0}, {}, 2);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].t_f == 0.5);
    CHECK(rows[1].s_irr_high_t == tla::analytic_si_high_t(0.1, 1.0, 0.1, 1.0, 0.5));
    CHECK(rows[1].s_irr_numeric > 0.0);
    const auto singular = entropy_scan({1.0, 1.0, 1.0, 0.1, 1.0}, {0.1});
    CHECK(std::isnan(singular[0].s_irr_low_t));
    CHECK_THROWS_AS(entropy_scan(s, {}), DomainError);

    // Long strokes: T s t_f approaches the leading-order coefficient up to the ramp correction.
    const auto longest = entropy_scan(s, {2000.0});
    const double m = longest[0].s_irr_numeric * 2000.0 / 0.1;
    CHECK(m == doctest::Approx(tla::m_coefficient(0.1, 1.0, 0.1, 1.0)).epsilon(0.06));
}

TEST_CASE("grids and the minimally nonlinear comparison") {
    const auto g = log_grid(1.0, 100.0, 3);
    CHECK(g[1] == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(linear_grid(0.0, 1.0, 5)[2] == 0.5);
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 3), DomainError);
    const auto rows = mni_compare(kReference, {0.5, 1.0, 2.0});
    CHECK(rows.size() == 9);
    for (const MniRow& r : rows) {
        CHECK(r.mni_pmax <= r.p_max * (1 + 1e-15));
        if (r.scale_h == r.scale_c) CHECK(r.mni_pmax == doctest::Approx(r.p_max).epsilon(1e-14));
    }
}

TEST_CASE("parallel_for propagates worker exceptions") {
    std::vector<int> hits(100, 0);
    parallel_for(100, 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(50, 3,
                                 [](std::size_t i) {
                                     if (i == 17) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
