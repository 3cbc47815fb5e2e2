#pragma once

// Closed-form bounds on the extremes of the limit cycle.
//
// Minimum values are kept as logarithms throughout: for small a and lambda
// the predator minimum sits near exp(-x_max / a), far below the smallest
// double.

#include "cyclebound/model.hpp"

namespace cyclebound {

struct Interval {
    double lo;
    double hi;

    bool contains(double v) const noexcept { return lo < v && v < hi; }
    bool nonempty() const noexcept { return lo < hi; }
};

struct BoundSet {
    double x_max_lo;  // lower bound on the predator maximum
    double x_max_hi;
    double ln_x_min_lo;
    double ln_x_min_hi;
    double ln_s_min_lo;
    double ln_s_min_hi;
    double s_max_lo = 0.8;
    double s_max_hi = 1.0;
    double s0 = 0.8;  // anchor used in the lower predator bound
    // False when the parameters lie outside the proven range and the
    // bounds were produced on request anyway.
    bool proven = true;
};

struct CanardEstimates {
    double x_max_c;
    double x_min_c;
    double s_max_c;
    double ln_s_min_c;
};

// Where a trajectory started at (u, lambda_star) on s = lambda_star meets
// the prey isocline (ln s_u) and then s = lambda_star again (ln v).
struct TStarBounds {
    Interval ln_s_u;
    Interval ln_v;
};

// Upper bound for the predator on the first crossing of s = lambda, from the
// barrier through the escaping eigenvector of the saddle (0, 1).
double x1_upper(const Params& p);
// Same formula on raw values; a = lambda = 0 gives m + 1/2.
double x1_upper(double a, double lambda, double m);

// The same barrier evaluated at v = 1 - lambda instead of v = 1.
double x1_upper_refined(const Params& p);

// 1 + a + m (1 - lambda); dominates x1_upper.
double x1_upper_linear(const Params& p);

// max over z in [(1 - a)/2, s0] of h(z) + m (z - lambda (1 - ln lambda + ln z)).
// Requires (1 - a)/2 < s0 <= 1.
double x1_lower(const Params& p, double s0);

// Throws std::invalid_argument unless 0 < lambda_star <= lambda,
// u > h(lambda_star) and m > 0.
TStarBounds tstar_bounds(double u, double lambda_star, const Params& p);

// Bounds on ln s at the first prey-isocline crossing after the predator
// maximum, from tstar_bounds at u = x1_upper (lower) and u = x1_lower (upper).
Interval statement2_bounds(const Params& p, double s0 = 0.8);

// Bounds on ln x at the second crossing of s = lambda.
Interval statement3_bounds(const Params& p, double s0 = 0.8);

struct TheoremOptions {
    double s0 = 0.8;
    // Evaluate outside the proven parameter range; the result then carries
    // proven = false.
    bool force = false;
};

// Assembles all four two-sided bounds. Throws std::invalid_argument when the
// parameters are outside the proven range and force is not set, when there
// is no cycle (2 lambda + a >= 1) or when m == 0.
BoundSet theorem_a(const Params& p, const TheoremOptions& opts = {});

// Slow-predator (m -> 0) approximations of the cycle extremes.
CanardEstimates canard(const Params& p);

}  // namespace cyclebound
