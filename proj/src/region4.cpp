#include "cyclebound/region4.hpp"

#include <cmath>
#include <stdexcept>

#include "cyclebound/error.hpp"

namespace cyclebound {

namespace {

constexpr double kBranchM = 0.3;
constexpr double kS0Upper = 0.8;

// Ladder constants of the published majorant (eta_hat), per case and branch:
// (p0 + p1 m) e^{q1 m + q0}.
struct EtaHatBranch {
    double p0, p1, q1, q0;
};

constexpr EtaHatBranch kEtaHat[2][2] = {
    {{0.324, 0.404, 1.099, -2.631}, {0.190, 0.681, -2.048, -1.789}},
    {{0.350, 0.563, 1.113, -2.295}, {0.201, 0.832, -2.048, -1.652}},
};

int case_index(Region4Case c) { return c == Region4Case::A ? 0 : 1; }

}  // namespace

Region4Config Region4Config::for_case(Region4Case c) {
    if (c == Region4Case::A) return {0.75, 0.7, 2.0 / 5.0, 1.0 / 20, Region4Case::A};
    return {2.0 / 3.0, 0.7, 0.5, 1.0 / 10, Region4Case::B};
}

double ln_eta_factor(const Params& p, const Region4Config& cfg) {
    const double a = p.a(), l = p.lambda(), sg = cfg.s_gamma;
    const double ln_base = l / sg + std::log(sg + a) - std::log(1.0 - sg) - std::log(a + l);
    return p.m() / cfg.k * ln_base;
}

double ln_eta(const Params& p, const Region4Config& cfg, double ln_x3) {
    return ln_eta_factor(p, cfg) + ln_x3;
}

double eta(const Params& p, const Region4Config& cfg, double x3) {
    return std::exp(ln_eta_factor(p, cfg)) * x3;
}

double x1_tilde(const Params& p, const Region4Config& cfg) {
    const double l = p.lambda(), m = p.m();
    auto slope = [l](double z) { return z - l * (1.0 - std::log(l) + std::log(z)); };
    if (m < kBranchM) {
        const double z = 0.5 * (1.0 - cfg.a_max);
        return 0.25 + m * slope(z);
    }
    return h(kS0Upper, p) + m * slope(kS0Upper);
}

double ln_eta_bar(const Params& p, const Region4Config& cfg, ZIndex zi) {
    const double xt = x1_tilde(p, cfg);
    const double hl = p.h_lambda();
    if (!(xt > hl)) throw std::invalid_argument("eta_bar: requires x1_tilde > h(lambda)");
    const double y = xt / hl;
    return ln_eta_factor(p, cfg) + std::log(z(zi, y)) + std::log(xt) - y;
}

double eta_bar(const Params& p, const Region4Config& cfg, ZIndex zi) {
    return std::exp(ln_eta_bar(p, cfg, zi));
}

double eta_hat(double m, Region4Case c) {
    if (!(m >= 0.0)) throw std::invalid_argument("eta_hat: requires m >= 0");
    const EtaHatBranch& b = kEtaHat[case_index(c)][m <= kBranchM ? 0 : 1];
    return (b.p0 + b.p1 * m) * std::exp(b.q1 * m + b.q0);
}

double ln_x3_upper_closed_form(const Params& p, Region4Case c) {
    const double hl = p.h_lambda();
    const bool low = p.m() <= kBranchM;
    if (c == Region4Case::A)
        return low ? std::log(0.324) - 0.25 / hl : std::log(0.383) - 0.343 / hl;
    return low ? std::log(0.350) - 0.25 / hl : std::log(0.428) - 0.383 / hl;
}

double ln_barrier_B(double s, const Params& p) {
    const double a = p.a(), l = p.lambda();
    if (!(s >= l && s < 1.0)) throw std::invalid_argument("barrier_B: requires lambda <= s < 1");
    const double k2 = l / a;
    const double k3 = (1.0 - l) / (1.0 + a);
    return k2 * (std::log(s + a) - std::log(s)) + k2 * (std::log(l) - std::log(l + a)) +
           k3 * (std::log1p(-l) + std::log(s + a) - std::log1p(-s)) - k3 * std::log(l + a);
}

double barrier_B(double s, const Params& p) { return std::exp(ln_barrier_B(s, p)); }

double G_star(double s, const Params& p, double k) {
    const double m = p.m();
    if (!(m > 0.0)) throw std::invalid_argument("G_star: requires m > 0");
    const double r = k / m;
    return 2.0 * r * s * s + (p.a() * r - r + 1.0) * s - p.lambda();
}

double step2_smax_lower(double x_gamma, double s_gamma, double M, double m) {
    if (!(s_gamma > 0.0 && s_gamma < 1.0)) throw std::invalid_argument("step2_smax_lower: requires 0 < s_gamma < 1");
    if (!(M > 0.0 && M <= s_gamma)) throw std::invalid_argument("step2_smax_lower: requires 0 < M <= s_gamma");
    if (!(m > 0.0)) throw std::invalid_argument("step2_smax_lower: requires m > 0");
    if (!(x_gamma > 0.0)) throw std::invalid_argument("step2_smax_lower: requires x_gamma > 0");
    if (!(x_gamma < M * (1.0 - s_gamma)))
        throw std::invalid_argument("step2_smax_lower: requires x_gamma < M (1 - s_gamma)");
    const double neg_d = 1.0 - s_gamma - x_gamma / (m + M);
    const double ln_one_minus =
        (m * std::log(neg_d) + M * std::log(x_gamma) + m * std::log(m + M) - M * std::log(M) - m * std::log(m)) /
        (M + m);
    return -std::expm1(ln_one_minus);
}

AlphaFactors alpha_factors(double m, const Region4Config& cfg) {
    if (!(m > 0.0)) throw std::invalid_argument("alpha_factors: requires m > 0");
    AlphaFactors f{};
    f.M = cfg.s_gamma;
    f.x_gamma = eta_hat(m, cfg.which);
    f.delta = 1.0 - cfg.s_gamma - f.x_gamma / (m + f.M);
    if (!(f.delta > 0.0)) throw std::invalid_argument("alpha_factors: delta <= 0");
    const double w = m / (m + f.M);
    f.alpha1 = std::exp(w * std::log(f.delta));
    f.alpha2 = std::exp((1.0 - w) * std::log(f.x_gamma / f.M));
    f.alpha3 = std::exp(w * std::log((m + f.M) / m));
    f.alpha = f.alpha1 * f.alpha2 * f.alpha3;
    return f;
}

ToppenCoefficients toppen_coefficients(Region4Case c) {
    const EtaHatBranch& b = kEtaHat[case_index(c)][1];
    const double fold = std::exp(b.q0);
    return {b.p1 * fold, b.p0 * fold, -b.q1};
}

double alpha2_slope_indicator(double m, Region4Case c) {
    const auto [ab, bb, cb] = toppen_coefficients(c);
    const double M = Region4Config::for_case(c).s_gamma;
    const double lin = ab * m + bb;
    return (m + M) * (ab - bb * cb - ab * cb * m) / lin + cb * m - std::log(lin) + std::log(M);
}

double find_m1(Region4Case c) {
    double lo = kBranchM, hi = 100.0;
    const double f_lo = alpha2_slope_indicator(lo, c);
    const double f_hi = alpha2_slope_indicator(hi, c);
    if (!(f_lo > 0.0 && f_hi < 0.0)) throw NoRootError("find_m1: no sign change on (0.3, 100)");
    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = alpha2_slope_indicator(mid, c);
        if (f_mid > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace cyclebound
