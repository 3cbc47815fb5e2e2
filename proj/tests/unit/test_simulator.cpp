#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "cyclebound/bounds.hpp"
#include "cyclebound/error.hpp"
#include "cyclebound/harness.hpp"
#include "cyclebound/simulator.hpp"

using namespace cyclebound;
using doctest::Approx;

namespace {

int region_index(Region r) {
    switch (r) {
        case Region::R1: return 0;
        case Region::R2: return 1;
        case Region::R3: return 2;
        case Region::R4: return 3;
        default: return -1;
    }
}

}  // namespace

TEST_CASE("equilibrium start stays put") {
    const Params p(0.05, 0.05, 1.0);
    SimConfig cfg;
    const Trajectory t = integrate(equilibrium(p), p, cfg, nullptr, 100.0);
    CHECK(t.events.empty());
    const LogState e = to_log(equilibrium(p));
    for (const Sample& s : t.samples) {
        CHECK(std::abs(s.y.u - e.u) <= cfg.atol_log);
        CHECK(std::abs(s.y.v - e.v) <= cfg.atol_log);
    }
    CHECK(t.samples.back().tau == Approx(100.0));
}

TEST_CASE("region tour from P0") {
    const Params p(0.05, 0.05, 1.0);
    SimConfig cfg;
    const TransitPoints tp = transit_points(p, 0.8, cfg);
    const auto& ev = tp.trajectory.events;
    REQUIRE(ev.size() == 4);
    CHECK(ev[0].kind == EventKind::S_eq_lambda_down);
    CHECK(ev[1].kind == EventKind::X_eq_h_min);
    CHECK(ev[2].kind == EventKind::S_eq_lambda_up);
    CHECK(ev[3].kind == EventKind::X_eq_h_max);

    CHECK(x1_lower(p, 0.8) < tp.x1);
    CHECK(tp.x1 < x1_upper(p));
    CHECK(tp.s4 > 0.8);
    const Interval s3 = statement3_bounds(p);
    CHECK(s3.contains(tp.ln_x3));
    const Interval s2 = statement2_bounds(p);
    CHECK(s2.contains(tp.ln_s2));

    CHECK_THROWS_AS(transit_points(p, 0.01, cfg), std::invalid_argument);
    CHECK_THROWS_AS(transit_points(Params(0.4, 0.4, 1.0), 0.8, cfg), std::invalid_argument);
}

TEST_CASE("events sit on their isoclines") {
    const Params p(0.02, 0.05, 2.0);
    SimConfig cfg;
    std::size_t n = 0;
    const Trajectory t = integrate(State{h(0.8, p), 0.8}, p, cfg, [&n](const Event&) { return ++n == 12; });
    REQUIRE(t.events.size() == 12);
    EventKind want = EventKind::S_eq_lambda_down;
    for (const Event& e : t.events) {
        CHECK(e.kind == want);
        want = next_kind(want);
        const LogRates r = log_vector_field(e.y, p);
        if (e.kind == EventKind::S_eq_lambda_down || e.kind == EventKind::S_eq_lambda_up) {
            CHECK(std::abs(e.y.v - std::log(p.lambda())) <= 1e-9);
            CHECK(std::abs(r.du) <= 1e-9);
        } else {
            CHECK(std::abs(e.y.u - log_h_of_log(e.y.v, p.a())) <= 1e-9);
        }
    }
}

TEST_CASE("trajectory samples visit the regions in order") {
    const Params p(0.05, 0.02, 0.3);
    SimConfig cfg;
    std::size_t n = 0;
    const Trajectory t = integrate(State{h(0.8, p), 0.8}, p, cfg, [&n](const Event&) { return ++n == 12; });
    int prev = -1;
    int changes = 0;
    for (const Sample& s : t.samples) {
        CHECK(std::isfinite(s.y.u));
        CHECK(std::isfinite(s.y.v));
        CHECK(std::exp(s.y.v) > 0.0);
        const int r = region_index(classify_region_log(s.y, p));
        if (r < 0) continue;
        if (prev >= 0 && r != prev) {
            CHECK(r == (prev + 1) % 4);
            ++changes;
        }
        prev = r;
    }
    CHECK(changes >= 11);
}

TEST_CASE("halving rtol moves the events little") {
    const Params p(0.05, 0.05, 1.0);
    SimConfig c1, c2;
    c1.rtol = 1e-9;
    c2.rtol = 0.5e-9;
    const TransitPoints a = transit_points(p, 0.8, c1);
    const TransitPoints b = transit_points(p, 0.8, c2);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& ea = a.trajectory.events[i].y;
        const auto& eb = b.trajectory.events[i].y;
        CHECK(std::abs(ea.u - eb.u) <= 10 * c1.rtol * std::max(1.0, std::abs(ea.u)));
        CHECK(std::abs(ea.v - eb.v) <= 10 * c1.rtol * std::max(1.0, std::abs(ea.v)));
    }
}

TEST_CASE("limit cycle inside the bounds") {
    const Params p(0.05, 0.05, 1.0);
    SimConfig cfg;
    const CycleReport r = cycle_extreme_report(p, cfg);
    CHECK(r.extremes.converged);
    CHECK(r.extremes.residual <= cfg.cycle_tol);
    CHECK(r.margins.min() > 0.0);
    CHECK(r.extremes.period > 0.0);
    CHECK(r.bounds.proven);
    CHECK(r.extremes.x_max == Approx(r.extremes.p1_x));
}

TEST_CASE("limit cycle is attracting") {
    const Params p(0.02, 0.02, 0.3);
    SimConfig cfg;
    const CycleExtremes a = limit_cycle(p, cfg);
    const CycleExtremes b = limit_cycle(p, cfg, 1.5 * x1_upper(p));
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(std::abs(std::log(a.x_max) - std::log(b.x_max)) <= 10 * cfg.cycle_tol);
    CHECK_THROWS_AS(limit_cycle(p, cfg, 0.5 * p.h_lambda()), std::invalid_argument);
}

TEST_CASE("self-convergence of the extremes") {
    const Params p(0.05, 0.05, 1.0);
    SimConfig c1, c2;
    c2.rtol = 1e-12;
    const CycleExtremes a = limit_cycle(p, c1);
    const CycleExtremes b = limit_cycle(p, c2);
    CHECK(std::abs(std::log(a.x_max) - std::log(b.x_max)) < 1e-6);
    CHECK(std::abs(a.ln_x_min - b.ln_x_min) < 1e-6);
    CHECK(std::abs(a.ln_s_min - b.ln_s_min) < 1e-6);
    CHECK(std::abs(a.ln_s_max - b.ln_s_max) < 1e-6);
}

TEST_CASE("deep minima stay representable") {
    const Params p(0.05, 0.05, 5.0);
    const CycleExtremes e = limit_cycle(p, SimConfig{});
    CHECK(e.converged);
    // Reference from an independent LSODA run in log space, rtol 1e-12.
    CHECK(e.ln_x_min == Approx(-86.82869).epsilon(1e-6));
    CHECK(e.ln_x_min > theorem_a(p).ln_x_min_lo);
    CHECK(std::isfinite(e.ln_x_min));
    CHECK(e.nonfinite == 0);
}

TEST_CASE("forced report outside the proven range") {
    const CycleReport r = cycle_extreme_report(Params(0.1, 0.1, 1.0), SimConfig{}, {0.8, true});
    CHECK_FALSE(r.bounds.proven);
    CHECK(std::isfinite(r.margins.min()));
}

TEST_CASE("simulator errors") {
    SimConfig cfg;
    CHECK_THROWS_AS(integrate(State{0.5, 0.5}, Params::limit(0.05, 0.05, 0.0), cfg, nullptr, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(State{-0.5, 0.5}, Params(0.05, 0.05, 1.0), cfg, nullptr, 1.0), std::invalid_argument);
    SimConfig tiny = cfg;
    tiny.max_steps = 10;
    CHECK_THROWS_AS(limit_cycle(Params(0.05, 0.05, 1.0), tiny), SimulationError);
    SimConfig bad = cfg;
    bad.rtol = 0.0;
    CHECK_THROWS_AS(integrate(State{0.5, 0.5}, Params(0.05, 0.05, 1.0), bad, nullptr, 1.0), std::invalid_argument);
}

TEST_CASE("event kind cycle") {
    EventKind k = EventKind::S_eq_lambda_down;
    for (int i = 0; i < 4; ++i) k = next_kind(k);
    CHECK(k == EventKind::S_eq_lambda_down);
    CHECK(to_string(EventKind::X_eq_h_max) == "X_eq_h_max");
}
