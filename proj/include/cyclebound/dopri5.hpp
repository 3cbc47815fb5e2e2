#pragma once

// Dormand-Prince 5(4) with the fourth-order continuous extension and the
// Hairer-Wanner PI step-size controller.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace cyclebound {

template <std::size_t N>
using Vec = std::array<double, N>;

namespace dp5 {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;

inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

}  // namespace dp5

// Interpolant over one accepted step [t0, t0 + h].
template <std::size_t N>
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<Vec<N>, 5> r{};

    Vec<N> at_theta(double theta) const {
        const double th1 = 1.0 - theta;
        Vec<N> y;
        for (std::size_t i = 0; i < N; ++i)
            y[i] = r[0][i] + theta * (r[1][i] + th1 * (r[2][i] + theta * (r[3][i] + th1 * r[4][i])));
        return y;
    }

    Vec<N> at(double t) const { return at_theta((t - t0) / h); }
};

struct StepControl {
    double rtol = 1e-10;
    double atol = 1e-12;
    double safety = 0.9;
    double fac_min = 0.2;   // smallest allowed h_new / h
    double fac_max = 10.0;  // largest allowed h_new / h
    double beta = 0.04;
    double h_max = std::numeric_limits<double>::infinity();
};

// One-step driver. `F` maps Vec<N> -> Vec<N> (autonomous systems only).
template <std::size_t N, class F>
class Dopri5 {
public:
    Dopri5(F f, const StepControl& ctl) : f_(std::move(f)), ctl_(ctl) { atol_.fill(ctl.atol); }

    // Per-component absolute tolerances, overriding ctl.atol.
    void set_atol(const Vec<N>& atol) { atol_ = atol; }

    struct Attempt {
        bool accepted;
        double h_next;
    };

    // Initial step size heuristic (Hairer, Norsett & Wanner, II.4).
    double initial_step(const Vec<N>& y0) const {
        const Vec<N> f0 = f_(y0);
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = atol_[i] + ctl_.rtol * std::abs(y0[i]);
            d0 += sq(y0[i] / sc);
            d1 += sq(f0[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, ctl_.h_max);
        Vec<N> y1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + h0 * f0[i];
        const Vec<N> f1 = f_(y1);
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = atol_[i] + ctl_.rtol * std::abs(y0[i]);
            d2 += sq((f1[i] - f0[i]) / sc);
        }
        d2 = std::sqrt(d2 / N) / h0;
        const double dm = std::max(d1, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5.0);
        return std::min({100.0 * h0, h1, ctl_.h_max});
    }

    // Tries a step of size h from (t, y). On acceptance y, t and the FSAL
    // derivative advance and `dense` describes the step.
    Attempt try_step(double& t, Vec<N>& y, double h, DenseStep<N>& dense) {
        using namespace dp5;
        if (!have_k1_) {
            k1_ = f_(y);
            have_k1_ = true;
        }
        Vec<N> yt, k2, k3, k4, k5, k6, k7, y_new;
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1_[i];
        k2 = f_(yt);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1_[i] + a32 * k2[i]);
        k3 = f_(yt);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f_(yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f_(yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = f_(yt);
        for (std::size_t i = 0; i < N; ++i)
            y_new[i] = y[i] + h * (a71 * k1_[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        k7 = f_(y_new);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = atol_[i] + ctl_.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += sq(e / sc);
            finite = finite && std::isfinite(y_new[i]) && std::isfinite(k7[i]);
        }
        err = std::sqrt(err / N);
        ++n_eval_;

        if (!finite || !std::isfinite(err)) {
            ++n_rejected_;
            ++n_nonfinite_;
            return {false, h * ctl_.fac_min};
        }

        const double fac11 = std::pow(err, 0.2 - ctl_.beta * 0.75);
        if (err <= 1.0) {
            double fac = fac11 / std::pow(facold_, ctl_.beta);
            fac = std::clamp(fac / ctl_.safety, 1.0 / ctl_.fac_max, 1.0 / ctl_.fac_min);
            facold_ = std::max(err, 1e-4);

            dense.t0 = t;
            dense.h = h;
            for (std::size_t i = 0; i < N; ++i) {
                const double ydiff = y_new[i] - y[i];
                const double bspl = h * k1_[i] - ydiff;
                dense.r[0][i] = y[i];
                dense.r[1][i] = ydiff;
                dense.r[2][i] = bspl;
                dense.r[3][i] = ydiff - h * k7[i] - bspl;
                dense.r[4][i] = h * (d1 * k1_[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            t += h;
            y = y_new;
            k1_ = k7;
            ++n_accepted_;
            return {true, std::min(h / fac, ctl_.h_max)};
        }
        ++n_rejected_;
        return {false, h / std::min(1.0 / ctl_.fac_min, fac11 / ctl_.safety)};
    }

    // Forget the cached derivative, e.g. after the caller changes y.
    void reset() { have_k1_ = false; }

    std::size_t accepted() const { return n_accepted_; }
    std::size_t rejected() const { return n_rejected_; }
    std::size_t nonfinite() const { return n_nonfinite_; }

private:
    static double sq(double v) { return v * v; }

    F f_;
    StepControl ctl_;
    Vec<N> atol_{};
    Vec<N> k1_{};
    bool have_k1_ = false;
    double facold_ = 1e-4;
    std::size_t n_accepted_ = 0;
    std::size_t n_rejected_ = 0;
    std::size_t n_eval_ = 0;
    std::size_t n_nonfinite_ = 0;
};

}  // namespace cyclebound
