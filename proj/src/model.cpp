#include "cyclebound/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cyclebound {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

Params::Params(double a, double lambda, double m) : Params(a, lambda, m, false) {}

Params Params::limit(double a, double lambda, double m) { return Params(a, lambda, m, true); }

Params::Params(double a, double lambda, double m, bool limit_mode)
    : a_(a), lambda_(lambda), m_(m), limit_mode_(limit_mode) {
    if (!positive_finite(a)) throw std::invalid_argument("Params: a must be positive");
    if (!positive_finite(lambda)) throw std::invalid_argument("Params: lambda must be positive");
    if (limit_mode) {
        if (!(std::isfinite(m) && m >= 0.0))
            throw std::invalid_argument("Params: m must be non-negative in limit mode");
    } else if (!positive_finite(m)) {
        throw std::invalid_argument("Params: m must be positive");
    }
    h_lambda_ = h(lambda, a);
    hopf_margin_ = 1.0 - 2.0 * lambda - a;
    star_star_ = (a <= 1.0 / 20 && lambda <= 1.0 / 20) || (a <= 1.0 / 10 && lambda <= 1.0 / 100);
}

Params Params::with_m(double m) const { return Params(a_, lambda_, m, limit_mode_); }

std::string_view to_string(Region r) {
    switch (r) {
        case Region::R1: return "R1";
        case Region::R2: return "R2";
        case Region::R3: return "R3";
        case Region::R4: return "R4";
        case Region::OnIsoclineH: return "OnIsoclineH";
        case Region::OnIsoclineLambda: return "OnIsoclineLambda";
        case Region::Equilibrium: return "Equilibrium";
    }
    return "?";
}

LogState to_log(const State& st) { return {std::log(st.x), std::log(st.s)}; }

State from_log(const LogState& ls) { return {std::exp(ls.u), std::exp(ls.v)}; }

double h(double s, double a) noexcept { return (1.0 - s) * (s + a); }

double h(double s, const Params& p) noexcept { return h(s, p.a()); }

double log_h_of_log(double v, double a) noexcept {
    const double one_minus_s = -std::expm1(v);
    if (!(one_minus_s > 0.0)) return -std::numeric_limits<double>::infinity();
    return std::log(one_minus_s) + std::log(std::exp(v) + a);
}

Rates vector_field(const State& st, const Params& p) noexcept {
    return {p.m() * (st.s - p.lambda()) * st.x, (h(st.s, p) - st.x) * st.s};
}

LogRates log_vector_field(const LogState& ls, const Params& p) noexcept {
    const double s = std::exp(ls.v);
    // 1 - s through expm1 keeps s close to 1 resolvable as v -> 0-.
    const double hs = -std::expm1(ls.v) * (s + p.a());
    return {p.m() * (s - p.lambda()), hs - std::exp(ls.u)};
}

double phase_slope(const State& st, const Params& p) {
    if (st.s == p.lambda()) throw std::domain_error("phase_slope: undefined on s = lambda");
    return (h(st.s, p) - st.x) * st.s / (p.m() * st.x * (st.s - p.lambda()));
}

Region classify_region(const State& st, const Params& p) noexcept {
    const double hs = h(st.s, p);
    const bool on_h = st.x == hs;
    const bool on_lambda = st.s == p.lambda();
    if (on_h && on_lambda) return Region::Equilibrium;
    if (on_h) return Region::OnIsoclineH;
    if (on_lambda) return Region::OnIsoclineLambda;
    if (st.x > hs) return st.s > p.lambda() ? Region::R1 : Region::R2;
    return st.s < p.lambda() ? Region::R3 : Region::R4;
}

State equilibrium(const Params& p) noexcept {
    return {(1.0 - p.lambda()) * (p.lambda() + p.a()), p.lambda()};
}

Params nondimensionalize(const RMParams& rm) {
    for (double v : {rm.r, rm.K, rm.q, rm.H, rm.p, rm.d}) {
        if (!positive_finite(v))
            throw std::invalid_argument("nondimensionalize: all rates must be positive");
    }
    if (rm.p <= rm.d) throw std::invalid_argument("nondimensionalize: requires p > d");
    const double a = rm.H / rm.K;
    const double m = (rm.p - rm.d) / rm.r;
    const double lambda = rm.d * rm.H / ((rm.p - rm.d) * rm.K);
    return Params(a, lambda, m);
}

}  // namespace cyclebound
