#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>
#include <json.hpp>

#include "cyclebound/model.hpp"
#include "cyclebound/params_json.hpp"

using namespace cyclebound;
using doctest::Approx;

TEST_CASE("params validation and flags") {
    CHECK_THROWS_AS(Params(0.0, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Params(0.1, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Params(0.1, 0.1, 0.0), std::invalid_argument);
    CHECK_NOTHROW(Params::limit(0.1, 0.1, 0.0));
    CHECK(Params::limit(0.1, 0.1, 0.0).limit_mode());
    CHECK_FALSE(Params(0.1, 0.1, 1.0).limit_mode());

    CHECK(Params(0.1, 0.1, 1.0).cycle_regime());
    CHECK_FALSE(Params(0.5, 0.25, 1.0).cycle_regime());  // 2 lambda + a = 1
    CHECK_FALSE(Params(0.2, 0.45, 1.0).cycle_regime());

    CHECK(Params(0.05, 0.05, 1.0).star_star());
    CHECK(Params(0.1, 0.01, 1.0).star_star());
    CHECK_FALSE(Params(0.1, 0.1, 1.0).star_star());
    CHECK_FALSE(Params(0.06, 0.02, 1.0).star_star());
    CHECK_FALSE(Params(0.04, 0.06, 1.0).star_star());

    const Params p(0.05, 0.05, 1.0);
    CHECK(p.h_lambda() == Approx(0.95 * 0.1));
    CHECK(p.hopf_margin() == Approx(0.85));
    CHECK(p.with_m(3.0).m() == 3.0);
    CHECK(p.with_m(3.0).a() == 0.05);
}

TEST_CASE("prey isocline") {
    const Params p(0.1, 0.1, 1.0);
    CHECK(h(0.0, p) == Approx(0.1));
    CHECK(h(1.0, p) == 0.0);
    CHECK(h(0.45, p) == Approx(0.3025));
    CHECK(h(1.5, p) < 0.0);
}

TEST_CASE("log of the isocline") {
    for (double a : {0.01, 0.1, 0.4})
        for (double s : {1e-6, 0.01, 0.3, 0.9, 0.999999}) CHECK(log_h_of_log(std::log(s), a) == Approx(std::log((1 - s) * (s + a))).epsilon(1e-12));
    CHECK(std::isinf(log_h_of_log(0.0, 0.1)));
    // 1 - s ~ 1e-30 stays resolved
    CHECK(log_h_of_log(-1e-30, 0.1) == Approx(std::log(1e-30 * 1.1)).epsilon(1e-12));
}

TEST_CASE("vector field") {
    const Params p(0.1, 0.1, 1.0);
    const State eq = equilibrium(p);
    CHECK(eq.x == Approx(0.18));
    CHECK(eq.s == 0.1);
    const Rates r0 = vector_field(eq, p);
    CHECK(std::abs(r0.dx) <= 1e-15);
    CHECK(std::abs(r0.ds) <= 1e-15);

    const Rates r = vector_field({0.5, 0.5}, p);
    CHECK(r.dx == Approx(0.2));
    CHECK(r.ds == Approx(-0.1));

    const Rates on_h = vector_field({h(0.7, p), 0.7}, p);
    CHECK(on_h.ds == 0.0);
    CHECK(on_h.dx == Approx(1.0 * 0.6 * h(0.7, p)));

    const Params q(0.05, 0.05, 1.0);
    const State e2 = equilibrium(q);
    CHECK(e2.x == Approx(0.095));
    CHECK(e2.s == 0.05);
}

TEST_CASE("log vector field is conjugate to the vector field") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-5.0, 1.0), us(-6.0, -1e-3), ua(0.001, 0.5), um(0.01, 10.0);
    for (int i = 0; i < 100; ++i) {
        const Params p(ua(rng), 0.1 * ua(rng), um(rng));
        const LogState ls{ux(rng), us(rng)};
        const State st = from_log(ls);
        const Rates r = vector_field(st, p);
        const LogRates lr = log_vector_field(ls, p);
        CHECK(lr.du * st.x == Approx(r.dx).epsilon(1e-13));
        CHECK(lr.dv * st.s == Approx(r.ds).epsilon(1e-12).scale(std::abs(st.x * st.s) + std::abs(h(st.s, p) * st.s)));
    }
    const Params p(0.05, 0.05, 2.0);
    const LogRates at_l = log_vector_field({-1.0, std::log(0.05)}, p);
    CHECK(std::abs(at_l.du) <= 1e-16);
    const LogRates at_eq = log_vector_field(to_log(equilibrium(p)), p);
    CHECK(std::abs(at_eq.du) <= 1e-16);
    CHECK(std::abs(at_eq.dv) <= 1e-15);
}

TEST_CASE("phase slope") {
    const Params p(0.1, 0.1, 1.0);
    CHECK(phase_slope({0.5, 0.5}, p) == Approx(-0.5));
    CHECK(phase_slope({h(0.3, p), 0.3}, p) == 0.0);
    CHECK_THROWS_AS(phase_slope({0.5, 0.1}, p), std::domain_error);
}

TEST_CASE("region classification") {
    const Params p(0.1, 0.1, 1.0);
    CHECK(classify_region({1.0, 0.5}, p) == Region::R1);
    CHECK(classify_region({0.01, 0.05}, p) == Region::R3);
    CHECK(classify_region({0.5, 0.05}, p) == Region::R2);
    CHECK(classify_region({0.01, 0.5}, p) == Region::R4);
    CHECK(classify_region(equilibrium(p), p) == Region::Equilibrium);
    CHECK(classify_region({h(0.5, p), 0.5}, p) == Region::OnIsoclineH);
    CHECK(classify_region({0.7, 0.1}, p) == Region::OnIsoclineLambda);
    CHECK(to_string(Region::R3) == "R3");
}

TEST_CASE("nondimensionalization") {
    const Params p = nondimensionalize({1.0, 10.0, 3.0, 1.0, 2.0, 1.0});
    CHECK(p.a() == Approx(0.1));
    CHECK(p.m() == Approx(1.0));
    CHECK(p.lambda() == Approx(0.1));
    CHECK(nondimensionalize({2.0, 5.0, 1.0, 5.0, 3.0, 1.0}).a() == Approx(1.0));
    CHECK_THROWS_AS(nondimensionalize({1.0, 10.0, 1.0, 1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(nondimensionalize({1.0, 10.0, 1.0, 1.0, 1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(nondimensionalize({-1.0, 10.0, 1.0, 1.0, 2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("parameter records") {
    using nlohmann::json;
    const Params a = params_from_json(json{{"a", 0.05}, {"lambda", 0.02}, {"m", 3.0}});
    CHECK(a.a() == 0.05);
    CHECK(a.lambda() == 0.02);
    CHECK(a.m() == 3.0);
    const Params b = params_from_json(json{{"r", 1.0}, {"K", 10.0}, {"q", 2.0}, {"H", 1.0}, {"p", 2.0}, {"d", 1.0}});
    CHECK(b.a() == Approx(0.1));
    CHECK(b.lambda() == Approx(0.1));
    CHECK(b.m() == Approx(1.0));
    CHECK_THROWS_AS(params_from_json(json{{"a", 0.05}, {"lambda", 0.02}}), std::invalid_argument);
    CHECK_THROWS_AS(params_from_json(json{{"a", 0.05}, {"lambda", 0.02}, {"m", 1.0}, {"r", 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(params_from_json(json::array()), std::invalid_argument);
    const json back = to_json(a);
    CHECK(back.at("m").get<double>() == 3.0);
    CHECK(back.at("star_star").get<bool>());
}
