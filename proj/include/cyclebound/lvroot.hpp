#pragma once

// Small roots of Lotka-Volterra first integrals, x - A ln x = C, and the
// closed-form two-sided approximants z_0, z_1, z_2 of
//
//     x = z(y) * y e^{-y}   solving   x - ln x = y - ln y,  0 < x < 1 < y.

namespace cyclebound {

enum class ZIndex { Z0, Z1, Z2 };

// Closed-form approximant z_i(y). Valid for y >= 1; z_i(1) is the common
// endpoint of the family and z_i(y) -> 1 as y -> inf. Throws
// std::invalid_argument for y < 1 or NaN.
double z(ZIndex i, double y);

// Root x in (0, A] of x - A ln x = C. Throws NoRootError when
// C < A - A ln A (beyond round-off).
double lv_small_root(double A, double C);

// ln of lv_small_root(A, C). Stays finite where the root itself underflows.
double lv_small_root_log(double A, double C);

// ln of the small root paired with u >= A, i.e. with C = u - A ln u. Avoids
// the cancellation in forming C when u is close to A.
double lv_conjugate_log(double A, double u);

// Exact z(y) = x / (y e^{-y}) for the small root x of x - ln x = y - ln y.
double z_exact(double y);

namespace detail {

// w <= 0 solving expm1(w) - w = excess, excess >= 0. The small root of
// xi - ln xi = 1 + excess is xi = e^w.
double solve_log_excess(double excess);

}  // namespace detail

}  // namespace cyclebound
