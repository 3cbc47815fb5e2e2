#pragma once

// Estimates for the passage through Region 4 (x < h(s), s > lambda): from the
// second crossing of s = lambda up to the prey-isocline crossing near s = 1.
//
// Two parameter boxes are supported:
//   case A: a, lambda <= 1/20
//   case B: a <= 1/10, lambda <= 1/100

#include "cyclebound/lvroot.hpp"
#include "cyclebound/model.hpp"

namespace cyclebound {

enum class Region4Case { A, B };

struct Region4Config {
    double k;        // barrier fraction, x < (1 - k) h(s)
    double s_gamma;  // prey level where the estimate hands off
    double kappa;    // split used in the monotonicity argument
    double a_max;    // largest a of the box
    Region4Case which;

    static Region4Config for_case(Region4Case c);
};

struct AlphaFactors {
    double alpha1;
    double alpha2;
    double alpha3;
    double alpha;  // upper bound on 1 - s_max
    double delta;
    double M;
    double x_gamma;
};

// (e^{lambda/s_gamma} (s_gamma + a) / (1 - s_gamma) / (a + lambda))^{m/k}; the
// growth factor of the predator between s = lambda and s = s_gamma.
double ln_eta_factor(const Params& p, const Region4Config& cfg);

double ln_eta(const Params& p, const Region4Config& cfg, double ln_x3);
double eta(const Params& p, const Region4Config& cfg, double x3);

// Piecewise-linear-in-m lower estimate of x1_lower, branching at m = 0.3.
double x1_tilde(const Params& p, const Region4Config& cfg);

// Upper estimate of eta obtained by inserting the x_min bound built on
// x1_tilde. `zi` selects the z approximant (Z2 by default, Z0 allowed).
// Throws std::invalid_argument when x1_tilde <= h(lambda).
double ln_eta_bar(const Params& p, const Region4Config& cfg, ZIndex zi = ZIndex::Z2);
double eta_bar(const Params& p, const Region4Config& cfg, ZIndex zi = ZIndex::Z2);

// Parameter-free majorant of eta_bar over the case box. The branch at
// m = 0.3 is discontinuous as published.
double eta_hat(double m, Region4Case c);

// Closed-form majorants of the Statement-3 x_min upper bound over the case box
// (natural log).
double ln_x3_upper_closed_form(const Params& p, Region4Case c);

// F(s)/F(lambda) for the Region-4 comparison equation; x < x3 B^{m/k}.
// Requires lambda < s < 1 (s == lambda gives 1).
double ln_barrier_B(double s, const Params& p);
double barrier_B(double s, const Params& p);

// 2 (k/m) s^2 + (a k/m - k/m + 1) s - lambda. Throws std::invalid_argument
// for m == 0.
double G_star(double s, const Params& p, double k);

// Lower bound on the prey at the prey-isocline crossing for a trajectory
// started at (x_gamma, s_gamma), from the comparison linear system. Requires
// 0 < M <= s_gamma < 1, 0 < x_gamma < M (1 - s_gamma), m > 0.
double step2_smax_lower(double x_gamma, double s_gamma, double M, double m);

// Factorisation of 1 - step2_smax_lower with x_gamma = eta_hat(m) and
// M = s_gamma. Throws std::invalid_argument when delta <= 0.
AlphaFactors alpha_factors(double m, const Region4Config& cfg);

// x_gamma = (a_bar m + b_bar) e^{-c_bar m} on the m > 0.3 branch of eta_hat.
struct ToppenCoefficients {
    double a_bar;
    double b_bar;
    double c_bar;
};

ToppenCoefficients toppen_coefficients(Region4Case c);

// (m + M)^2 / M times d(ln alpha2)/dm; strictly decreasing in m.
double alpha2_slope_indicator(double m, Region4Case c);

// Root of alpha2_slope_indicator on m > 0.3, where alpha2 peaks.
double find_m1(Region4Case c);

}  // namespace cyclebound
