#include "cyclebound/lvroot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cyclebound/error.hpp"

namespace cyclebound {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kC1 = (kE - 2.0) / (kE - 1.0);
constexpr double kC2 = 1.0 / kE;

constexpr double d_coeff(double c) { return kE - 1.0 - c * kE; }

// t - ln(1 + t), summed as a series near t = 0 where the difference cancels.
double excess_of(double t) {
    if (std::abs(t) < 0.01) {
        double term = t * t;
        double sum = 0.0;
        for (int k = 2; k < 16; ++k) {
            sum += (k % 2 == 0 ? 1.0 : -1.0) * term / k;
            term *= t;
        }
        return sum;
    }
    return t - std::log1p(t);
}

// e^w - 1 - w, with the same treatment.
double expm1_minus_id(double w) {
    if (std::abs(w) < 0.01) {
        double term = w * w / 2.0;
        double sum = 0.0;
        for (int k = 3; k < 18; ++k) {
            sum += term;
            term *= w / k;
        }
        return sum;
    }
    return std::expm1(w) - w;
}

// Smaller root of c z^2 Y - (1 - d Y) z + 1 = 0, written without the
// cancellation of the textbook form so that Y -> 0 gives exactly 1.
double z_quadratic(double c, double Y) {
    const double b = 1.0 - d_coeff(c) * Y;
    const double disc = std::max(0.0, b * b - 4.0 * c * Y);
    return 2.0 / (b + std::sqrt(disc));
}

}  // namespace

double z(ZIndex i, double y) {
    if (!(y >= 1.0)) throw std::invalid_argument("z: requires y >= 1");
    const double Y = std::exp(std::log(y) - y);
    switch (i) {
        case ZIndex::Z0: return 1.0 / (1.0 - (kE - 1.0) * Y);
        case ZIndex::Z1: return z_quadratic(kC1, Y);
        case ZIndex::Z2: return z_quadratic(kC2, Y);
    }
    throw std::invalid_argument("z: unknown index");
}

double detail::solve_log_excess(double excess) {
    if (!(excess >= 0.0) || !std::isfinite(excess))
        throw NoRootError("lv root: no small root (excess must be finite and >= 0)");
    if (excess == 0.0) return 0.0;

    // f(w) = expm1(w) - w - excess is convex and decreasing on w < 0 with
    // f(-excess - 1) > 0 >= f(0).
    auto f = [excess](double w) { return expm1_minus_id(w) - excess; };
    double lo = -excess - 1.0;
    double hi = 0.0;

    // Starting guess from the two asymptotic regimes.
    double w = excess < 1.0 ? -std::sqrt(2.0 * excess) : -excess - 1.0 + std::exp(-excess - 1.0);
    if (!(w > lo && w < hi)) w = 0.5 * (lo + hi);

    for (int it = 0; it < 200; ++it) {
        const double fw = f(w);
        if (fw == 0.0) return w;
        if (fw > 0.0)
            lo = w;
        else
            hi = w;
        const double df = std::expm1(w);
        double next = df != 0.0 ? w - fw / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - w);
        w = next;
        if (step <= 1e-16 * std::max(1.0, std::abs(w)) || hi - lo <= 1e-16 * std::max(1.0, std::abs(lo)))
            return w;
    }
    return w;
}

double lv_small_root_log(double A, double C) {
    if (!(A > 0.0) || !std::isfinite(A)) throw std::invalid_argument("lv_small_root: A must be positive");
    if (!std::isfinite(C)) throw NoRootError("lv_small_root: C must be finite");
    const double lnA = std::log(A);
    double excess = C / A + lnA - 1.0;
    if (excess < 0.0) {
        // The minimum value A - A ln A itself is only known to round-off.
        const double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                             (std::abs(C / A) + std::abs(lnA) + 1.0);
        if (excess < -slack) throw NoRootError("lv_small_root: C below the minimum A - A ln A");
        excess = 0.0;
    }
    return lnA + detail::solve_log_excess(excess);
}

double lv_small_root(double A, double C) { return std::exp(lv_small_root_log(A, C)); }

double lv_conjugate_log(double A, double u) {
    if (!(A > 0.0) || !std::isfinite(A)) throw std::invalid_argument("lv_conjugate_log: A must be positive");
    if (!(u >= A) || !std::isfinite(u)) throw std::invalid_argument("lv_conjugate_log: requires u >= A");
    const double excess = excess_of(u / A - 1.0);
    return std::log(A) + detail::solve_log_excess(std::max(0.0, excess));
}

double z_exact(double y) {
    if (!(y >= 1.0)) throw std::invalid_argument("z_exact: requires y >= 1");
    if (y < 2.0) {
        const double w = lv_conjugate_log(1.0, y);
        return std::exp(w + y - std::log(y));
    }
    // ln z = z Y: Newton on the concave w - Y e^w from w = 0 increases
    // monotonically to the root, keeping full relative precision in z - 1.
    const double Y = std::exp(std::log(y) - y);
    double w = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double ew = Y * std::exp(w);
        const double next = w - (w - ew) / (1.0 - ew);
        if (!(next > w)) break;
        w = next;
    }
    return std::exp(w);
}

}  // namespace cyclebound
