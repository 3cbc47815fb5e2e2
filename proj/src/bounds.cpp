#include "cyclebound/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cyclebound/lvroot.hpp"

namespace cyclebound {

double x1_upper(const Params& p) { return x1_upper(p.a(), p.lambda(), p.m()); }

double x1_upper(double a, double l, double m) {
    return (1.0 + m + a - m * l) * (1.0 + 2.0 * m + a - 2.0 * m * l) / (2.0 * (m + 1.0) + a - m * l);
}

double x1_upper_refined(const Params& p) {
    const double a = p.a(), l = p.lambda(), m = p.m();
    const double L = 1.0 - l;
    return (1.0 + a + 2.0 * m * L) * (1.0 + a + m * L) * L / (1.0 + a + (1.0 + 2.0 * m + m * l) * L);
}

double x1_upper_linear(const Params& p) { return 1.0 + p.a() + p.m() * (1.0 - p.lambda()); }

double x1_lower(const Params& p, double s0) {
    const double a = p.a(), l = p.lambda(), m = p.m();
    const double z_lo = 0.5 * (1.0 - a);
    if (!(s0 > z_lo && s0 <= 1.0))
        throw std::invalid_argument("x1_lower: requires (1 - a)/2 < s0 <= 1");

    const double log_l = std::log(l);
    auto objective = [&](double z) { return h(z, a) + m * (z - l * (1.0 - log_l + std::log(z))); };

    // The objective is smooth on the interval; its maximum is at an endpoint
    // or at a root of -2 z^2 + (1 - a + m) z - m lambda = 0.
    double best = std::max(objective(z_lo), objective(s0));
    const double b = 1.0 - a + m;
    const double disc = b * b - 8.0 * m * l;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double big = (b + sq) / 4.0;
        // Product of the roots is m lambda / 2.
        const double small = big > 0.0 ? m * l / (2.0 * big) : 0.0;
        for (double z : {big, small})
            if (z > z_lo && z < s0) best = std::max(best, objective(z));
    }
    return best;
}

TStarBounds tstar_bounds(double u, double lambda_star, const Params& p) {
    const double a = p.a(), m = p.m();
    if (!(lambda_star > 0.0 && lambda_star <= p.lambda()))
        throw std::invalid_argument("tstar_bounds: requires 0 < lambda_star <= lambda");
    if (!(m > 0.0)) throw std::invalid_argument("tstar_bounds: requires m > 0");
    const double h_star = h(lambda_star, a);
    if (!(u > h_star) || !std::isfinite(u))
        throw std::invalid_argument("tstar_bounds: requires u > h(lambda_star)");

    const double ln_ls = std::log(lambda_star);
    const double ln_ua = std::log(u / a);
    const double ml = m * lambda_star;

    TStarBounds out{};
    out.ln_s_u.lo = ln_ls - (u - a - a * ln_ua) / ml - 1.0;
    out.ln_s_u.hi = ln_ls - (u - a - h_star * ln_ua) / ml;

    const double z1 = z(ZIndex::Z1, u / a);
    const double z2 = z(ZIndex::Z2, u / h_star);
    out.ln_v.lo = std::log(z1 * u) - u / a;
    out.ln_v.hi = std::log(z2 * u) - u / h_star;
    return out;
}

Interval statement2_bounds(const Params& p, double s0) {
    const double hi_x = x1_upper(p);
    const double lo_x = x1_lower(p, s0);
    return {tstar_bounds(hi_x, p.lambda(), p).ln_s_u.lo, tstar_bounds(lo_x, p.lambda(), p).ln_s_u.hi};
}

Interval statement3_bounds(const Params& p, double s0) {
    const double hi_x = x1_upper(p);
    const double lo_x = x1_lower(p, s0);
    return {tstar_bounds(hi_x, p.lambda(), p).ln_v.lo, tstar_bounds(lo_x, p.lambda(), p).ln_v.hi};
}

BoundSet theorem_a(const Params& p, const TheoremOptions& opts) {
    if (!p.cycle_regime()) throw std::invalid_argument("theorem_a: no limit cycle for 2 lambda + a >= 1");
    if (!(p.m() > 0.0)) throw std::invalid_argument("theorem_a: requires m > 0");
    if (!p.star_star() && !opts.force)
        throw std::invalid_argument(
            "theorem_a: parameters outside a, lambda <= 1/20 or a <= 1/10, lambda <= 1/100 "
            "(set force to evaluate anyway)");

    const Interval s_min = statement2_bounds(p, opts.s0);
    const Interval x_min = statement3_bounds(p, opts.s0);

    BoundSet b;
    b.x_max_lo = x1_lower(p, opts.s0);
    b.x_max_hi = x1_upper(p);
    b.ln_x_min_lo = x_min.lo;
    b.ln_x_min_hi = x_min.hi;
    b.ln_s_min_lo = s_min.lo;
    b.ln_s_min_hi = s_min.hi;
    b.s0 = opts.s0;
    // The lower predator bound grows with s0 and stays valid for any anchor
    // the cycle passes above, i.e. any s0 <= 0.8.
    b.proven = p.star_star() && opts.s0 <= 0.8;
    return b;
}

CanardEstimates canard(const Params& p) {
    const double a = p.a(), l = p.lambda(), m = p.m();
    CanardEstimates c{};
    c.x_max_c = (1.0 + a) * (1.0 + a) / 4.0;
    c.x_min_c = c.x_max_c * std::exp(-c.x_max_c / a);
    // Landing point of the jump: the right root of h(s) = x_min.
    const double half = 0.5 * (1.0 - a);
    c.s_max_c = half + std::sqrt(half * half + a - c.x_min_c);
    const double v = a * std::log(c.x_max_c) - c.x_max_c;
    const double num = v - a * (std::log(a) - 1.0);
    c.ln_s_min_c = m > 0.0 ? num / (m * l) : -std::numeric_limits<double>::infinity();
    return c;
}

}  // namespace cyclebound
