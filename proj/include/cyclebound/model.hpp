#pragma once

// Nondimensional Rosenzweig-MacArthur system
//
//     ds/dtau = (h(s) - x) s,   dx/dtau = m (s - lambda) x,
//     h(s)    = (1 - s)(s + a),
//
// together with its image under (u, v) = (ln x, ln s).

#include <string_view>

namespace cyclebound {

class Params {
public:
    // Requires a, lambda, m > 0.
    Params(double a, double lambda, double m);

    // Same as the constructor but admits m == 0, the slow-predator limit that
    // only the closed-form bounds understand. Simulations reject it.
    static Params limit(double a, double lambda, double m);

    double a() const noexcept { return a_; }
    double lambda() const noexcept { return lambda_; }
    double m() const noexcept { return m_; }

    bool limit_mode() const noexcept { return limit_mode_; }

    // h(lambda), the prey-isocline height on the predator isocline.
    double h_lambda() const noexcept { return h_lambda_; }
    // 1 - 2 lambda - a; the cycle exists iff this is positive.
    double hopf_margin() const noexcept { return hopf_margin_; }
    bool cycle_regime() const noexcept { return hopf_margin_ > 0.0; }

    // (a <= 1/20 and lambda <= 1/20) or (a <= 1/10 and lambda <= 1/100).
    bool star_star() const noexcept { return star_star_; }

    Params with_m(double m) const;

private:
    Params(double a, double lambda, double m, bool limit_mode);

    double a_;
    double lambda_;
    double m_;
    bool limit_mode_;
    double h_lambda_;
    double hopf_margin_;
    bool star_star_;
};

// Dimensional rates of the original model. q only rescales the predator and
// drops out of the nondimensional system.
struct RMParams {
    double r;
    double K;
    double q;
    double H;
    double p;
    double d;
};

struct State {
    double x;  // predator
    double s;  // prey
};

struct LogState {
    double u;  // ln x
    double v;  // ln s
};

struct Rates {
    double dx;
    double ds;
};

struct LogRates {
    double du;
    double dv;
};

enum class Region {
    R1,
    R2,
    R3,
    R4,
    OnIsoclineH,
    OnIsoclineLambda,
    Equilibrium,
};

std::string_view to_string(Region r);

LogState to_log(const State& st);
State from_log(const LogState& ls);

double h(double s, double a) noexcept;
double h(double s, const Params& p) noexcept;

// ln h(e^v) for v < 0, evaluated without forming 1 - e^v. Returns -inf when
// e^v >= 1.
double log_h_of_log(double v, double a) noexcept;

Rates vector_field(const State& st, const Params& p) noexcept;
LogRates log_vector_field(const LogState& ls, const Params& p) noexcept;

// ds/dx along trajectories. Throws std::domain_error on s == lambda.
double phase_slope(const State& st, const Params& p);

Region classify_region(const State& st, const Params& p) noexcept;

State equilibrium(const Params& p) noexcept;

// a = H/K, m = (p - d)/r, lambda = d H / ((p - d) K). Throws
// std::invalid_argument for non-positive rates or p <= d.
Params nondimensionalize(const RMParams& rm);

}  // namespace cyclebound
