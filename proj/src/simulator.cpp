#include "cyclebound/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cyclebound/dopri5.hpp"
#include "cyclebound/error.hpp"

namespace cyclebound {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Event functions in log variables. Their signs are the signs of s - lambda
// and of ds/dtau respectively.
double g_lambda(const Vec<2>& y, double ln_lambda) { return y[1] - ln_lambda; }
double g_isocline(const Vec<2>& y, double a) { return log_h_of_log(y[1], a) - y[0]; }

int sign(double v) { return (v > 0.0) - (v < 0.0); }

struct Crossing {
    double theta;
    EventKind kind;
    int fn;  // 0: s = lambda, 1: x = h(s)
};

}  // namespace

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::S_eq_lambda_down: return "S_eq_lambda_down";
        case EventKind::X_eq_h_min: return "X_eq_h_min";
        case EventKind::S_eq_lambda_up: return "S_eq_lambda_up";
        case EventKind::X_eq_h_max: return "X_eq_h_max";
    }
    return "?";
}

EventKind next_kind(EventKind k) {
    switch (k) {
        case EventKind::S_eq_lambda_down: return EventKind::X_eq_h_min;
        case EventKind::X_eq_h_min: return EventKind::S_eq_lambda_up;
        case EventKind::S_eq_lambda_up: return EventKind::X_eq_h_max;
        case EventKind::X_eq_h_max: return EventKind::S_eq_lambda_down;
    }
    return EventKind::S_eq_lambda_down;
}

Trajectory integrate(const LogState& start, const Params& p, const SimConfig& cfg, const StopPredicate& stop,
                     double tau_max) {
    if (p.limit_mode()) throw std::invalid_argument("integrate: limit-mode parameters cannot be simulated");
    if (!(cfg.rtol > 0.0 && cfg.atol_log > 0.0 && cfg.atol_ln_s > 0.0)) throw std::invalid_argument("integrate: tolerances must be positive");
    if (!std::isfinite(start.u) || !std::isfinite(start.v))
        throw std::invalid_argument("integrate: start must be a positive state");

    const double ln_lambda = std::log(p.lambda());
    const double a = p.a();
    auto rhs = [&p](const Vec<2>& y) -> Vec<2> {
        const LogRates r = log_vector_field({y[0], y[1]}, p);
        return {r.du, r.dv};
    };

    StepControl ctl;
    ctl.rtol = cfg.rtol;
    ctl.atol = cfg.atol_log;
    Dopri5<2, decltype(rhs)> solver(rhs, ctl);
    solver.set_atol({cfg.atol_log, cfg.atol_ln_s});

    Trajectory traj;
    double t = 0.0;
    Vec<2> y{start.u, start.v};
    if (cfg.record_samples) traj.samples.push_back({t, start});

    // A start on an isocline is not a crossing.
    auto snap = [](double g, double scale) { return std::abs(g) <= 64.0 * kEps * (1.0 + std::abs(scale)) ? 0.0 : g; };
    std::array<double, 2> g_prev{snap(g_lambda(y, ln_lambda), ln_lambda), snap(g_isocline(y, a), y[0])};

    double h = solver.initial_step(y);
    DenseStep<2> dense;

    auto finish = [&](double tau, const Vec<2>& yy) {
        if (cfg.record_samples && (traj.samples.empty() || traj.samples.back().tau < tau))
            traj.samples.push_back({tau, {yy[0], yy[1]}});
        traj.rejected = solver.rejected();
        traj.nonfinite = solver.nonfinite();
        return std::move(traj);
    };

    while (t < tau_max) {
        if (traj.steps >= cfg.max_steps)
            throw SimulationError("integrate: step budget of " + std::to_string(cfg.max_steps) + " exhausted at tau=" +
                                  std::to_string(t));
        h = std::min(h, tau_max - t);
        const auto attempt = solver.try_step(t, y, h, dense);
        if (!attempt.accepted) {
            h = attempt.h_next;
            if (!(h > 64.0 * kEps * std::max(1.0, std::abs(t))))
                throw SimulationError("integrate: step size underflow at tau=" + std::to_string(t));
            continue;
        }
        ++traj.steps;

        const std::array<double, 2> g_new{g_lambda(y, ln_lambda), g_isocline(y, a)};
        std::array<Crossing, 2> found{};
        int n_found = 0;
        for (int j = 0; j < 2; ++j) {
            const int sp = sign(g_prev[j]);
            const int sn = sign(g_new[j]);
            if (sp == 0 || sp == sn) continue;
            auto g_at = [&](double theta) {
                const Vec<2> yy = dense.at_theta(theta);
                return j == 0 ? g_lambda(yy, ln_lambda) : g_isocline(yy, a);
            };
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 200 && (hi - lo) * dense.h > cfg.event_tol; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (sign(g_at(mid)) == sp)
                    lo = mid;
                else
                    hi = mid;
            }
            EventKind kind;
            if (j == 0)
                kind = sp > 0 ? EventKind::S_eq_lambda_down : EventKind::S_eq_lambda_up;
            else
                kind = sp < 0 ? EventKind::X_eq_h_min : EventKind::X_eq_h_max;
            found[n_found++] = {0.5 * (lo + hi), kind, j};
        }
        if (n_found == 2 && found[1].theta < found[0].theta) std::swap(found[0], found[1]);

        for (int i = 0; i < n_found; ++i) {
            const Vec<2> ye = dense.at_theta(found[i].theta);
            const Event ev{dense.t0 + found[i].theta * dense.h, {ye[0], ye[1]}, found[i].kind};
            traj.events.push_back(ev);
            if (stop && stop(ev)) return finish(ev.tau, ye);
        }

        if (cfg.record_samples) traj.samples.push_back({t, {y[0], y[1]}});
        g_prev = g_new;
        h = attempt.h_next;
    }
    return finish(t, y);
}

Trajectory integrate(const State& start, const Params& p, const SimConfig& cfg, const StopPredicate& stop,
                     double tau_max) {
    if (!(start.x > 0.0 && start.s > 0.0)) throw std::invalid_argument("integrate: start must be a positive state");
    return integrate(to_log(start), p, cfg, stop, tau_max);
}

namespace {

void check_order(const std::vector<Event>& events, EventKind first) {
    EventKind want = first;
    for (const Event& e : events) {
        if (e.kind != want)
            throw SimulationError(std::string("region order violated: expected ") + std::string(to_string(want)) +
                                  ", got " + std::string(to_string(e.kind)));
        want = next_kind(want);
    }
}

}  // namespace

TransitPoints transit_points(const Params& p, double s0, const SimConfig& cfg) {
    if (!p.cycle_regime()) throw std::invalid_argument("transit_points: requires 2 lambda + a < 1");
    if (!(s0 > p.lambda() && s0 < 1.0)) throw std::invalid_argument("transit_points: requires lambda < s0 < 1");

    const LogState start{std::log(h(s0, p)), std::log(s0)};
    std::size_t seen = 0;
    Trajectory traj = integrate(start, p, cfg, [&seen](const Event&) { return ++seen == 4; });
    if (traj.events.size() < 4) throw SimulationError("transit_points: trajectory did not complete a region tour");
    check_order(traj.events, EventKind::S_eq_lambda_down);

    TransitPoints tp{};
    tp.x1 = std::exp(traj.events[0].y.u);
    tp.ln_s2 = traj.events[1].y.v;
    tp.ln_x3 = traj.events[2].y.u;
    tp.ln_s4 = traj.events[3].y.v;
    tp.s4 = std::exp(tp.ln_s4);
    tp.trajectory = std::move(traj);
    return tp;
}

CycleExtremes limit_cycle(const Params& p, const SimConfig& cfg, std::optional<double> x_start) {
    if (!p.cycle_regime()) throw std::invalid_argument("limit_cycle: requires 2 lambda + a < 1");
    const double ln_lambda = std::log(p.lambda());
    const double x0 = x_start.value_or(x1_upper(p));
    if (!(x0 > p.h_lambda())) throw std::invalid_argument("limit_cycle: start must satisfy x > h(lambda)");

    SimConfig loop_cfg = cfg;
    loop_cfg.record_samples = false;

    CycleExtremes out;
    LogState section{std::log(x0), ln_lambda};
    for (int iter = 1; iter <= cfg.max_return_iters; ++iter) {
        const Trajectory loop = integrate(section, p, loop_cfg,
                                          [](const Event& e) { return e.kind == EventKind::S_eq_lambda_down; });
        if (loop.events.size() != 4) throw SimulationError("limit_cycle: return to the section not reached");
        check_order(loop.events, EventKind::X_eq_h_min);

        const Event& p2 = loop.events[0];
        const Event& p3 = loop.events[1];
        const Event& p4 = loop.events[2];
        const Event& back = loop.events[3];

        out.residual = std::abs(back.y.u - section.u);
        out.iterations = iter;
        out.steps += loop.steps;
        out.nonfinite += loop.nonfinite;
        out.x_max = std::exp(back.y.u);
        out.p1_x = out.x_max;
        out.ln_s_min = p2.y.v;
        out.ln_p2_s = p2.y.v;
        out.ln_x_min = p3.y.u;
        out.ln_p3_x = p3.y.u;
        out.ln_s_max = p4.y.v;
        out.s_max = std::exp(p4.y.v);
        out.p4_s = out.s_max;
        out.period = back.tau;

        section = {back.y.u, ln_lambda};
        if (out.residual <= cfg.cycle_tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

double Margins::min() const {
    return std::min({x_max_lo, x_max_hi, ln_x_min_lo, ln_x_min_hi, ln_s_min_lo, ln_s_min_hi, s_max_lo, s_max_hi});
}

Margins margins(const CycleExtremes& ext, const BoundSet& b) {
    const double ln_x_max = std::log(ext.x_max);
    return {ln_x_max - std::log(b.x_max_lo),
            std::log(b.x_max_hi) - ln_x_max,
            ext.ln_x_min - b.ln_x_min_lo,
            b.ln_x_min_hi - ext.ln_x_min,
            ext.ln_s_min - b.ln_s_min_lo,
            b.ln_s_min_hi - ext.ln_s_min,
            ext.ln_s_max - std::log(b.s_max_lo),
            std::log(b.s_max_hi) - ext.ln_s_max};
}

CycleReport cycle_extreme_report(const Params& p, const SimConfig& cfg, const TheoremOptions& opts) {
    BoundSet b = theorem_a(p, opts);
    CycleExtremes ext = limit_cycle(p, cfg);
    return {p, ext, b, margins(ext, b)};
}

}  // namespace cyclebound
