// Acceptance suite. Prints one PASS/FAIL line per criterion; with
// `--criterion N` only that one runs. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cyclebound/bounds.hpp"
#include "cyclebound/harness.hpp"
#include "cyclebound/lvroot.hpp"
#include "cyclebound/proofcheck.hpp"
#include "cyclebound/region4.hpp"
#include "cyclebound/simulator.hpp"

using namespace cyclebound;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::vector<Params> criterion1_points() {
    std::vector<Params> pts;
    for (double a : {0.01, 0.02, 0.05})
        for (double l : {0.01, 0.02, 0.05})
            for (double m : {0.01, 0.1, 0.3, 1.0, 2.0, 5.0}) pts.emplace_back(a, l, m);
    for (double m : {0.3, 1.0, 3.0}) pts.emplace_back(0.1, 0.01, m);
    return pts;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

Outcome bounds_sandwich() {
    const auto t0 = std::chrono::steady_clock::now();
    SweepSpec spec;
    spec.points = criterion1_points();
    const SweepReport rep = run_sweep(spec);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    int inside = 0;
    double worst = INFINITY;
    std::string where;
    for (const SweepRow& r : rep.rows) {
        const bool ok = r.error.empty() && r.bounds && r.flags[FlagConverged] && r.flags[FlagXMax] &&
                        r.flags[FlagLnXMin] && r.flags[FlagLnSMin] && r.flags[FlagSMax] && r.min_margin > 0.0;
        inside += ok;
        if (!(r.min_margin >= worst)) {
            worst = r.min_margin;
            where = fmt::format("a={} lambda={} m={}", r.params.a(), r.params.lambda(), r.params.m());
        }
    }
    const bool pass = inside == static_cast<int>(rep.rows.size()) && rep.rows.size() == 57 && secs < 300.0;
    return {pass, fmt::format("{}/{} points inside, min log margin {:.3g} at {}, {:.2f} s", inside, rep.rows.size(),
                              worst, where, secs)};
}

Outcome z_sandwich() {
    const auto ys = logspace(1.001, 100.0, 200);
    double slack = INFINITY, resid = 0.0;
    bool order = true, decreasing = true;
    double prev[4] = {INFINITY, INFINITY, INFINITY, INFINITY};
    for (double y : ys) {
        const double z0 = z(ZIndex::Z0, y), z1 = z(ZIndex::Z1, y), z2 = z(ZIndex::Z2, y), zx = z_exact(y);
        const double ln_x = std::log(zx) + std::log(y) - y;
        const double C = y - std::log(y);
        resid = std::max(resid, std::abs(std::exp(ln_x) - ln_x - C) / std::max(1.0, C));
        slack = std::min({slack, z1 - 1.0, zx - z1, z2 - zx, z0 - z2, std::numbers::e - z0});
        // Differences below two ulps of 1 are not resolvable in double: the
        // gaps shrink like Y^2 and z - 1 itself rounds away beyond y ~ 37.
        const double tol = 2.0 * std::numeric_limits<double>::epsilon();
        order = order && 1.0 <= z1 && z1 <= zx * (1.0 + tol) && zx <= z2 * (1.0 + tol) &&
                z2 <= z0 * (1.0 + tol) && z0 < std::numbers::e;
        if (zx - 1.0 > 1e-12) order = order && 1.0 < z1;
        const double cur[4] = {z0, z1, z2, zx};
        for (int k = 0; k < 4; ++k) {
            decreasing = decreasing && (cur[k] - 1.0 > 1e-12 ? cur[k] < prev[k] : cur[k] <= prev[k]);
            prev[k] = cur[k];
        }
    }
    const bool pass = order && decreasing && slack >= -2.0 * std::numeric_limits<double>::epsilon() && resid <= 1e-13;
    return {pass, fmt::format("min slack {:.3g}, oracle residual {:.2g}, decreasing {}", slack, resid, decreasing)};
}

Outcome x1_limit() {
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double m = 0.5 * i;
        worst = std::max(worst, std::abs(x1_upper(0.0, 0.0, m) - (m + 0.5)));
    }
    return {worst <= 1e-12, fmt::format("max |x1_upper - (m + 0.5)| = {:.3g} over m = 0.5..50", worst)};
}

Outcome region4_constants() {
    std::string detail;
    bool pass = true;
    for (auto c : {Region4Case::A, Region4Case::B}) {
        const char* name = c == Region4Case::A ? "A" : "B";
        double eh = 0.0;
        for (int i = 0; i <= 20000; ++i) eh = std::max(eh, eta_hat(20.0 * i / 20000, c));
        eh = std::max({eh, eta_hat(0.3, c), eta_hat(std::nextafter(0.3, 1.0), c)});
        const double eh_lim = eta_hat_limit(c);
        double al = 0.0;
        const Region4Config cfg = Region4Config::for_case(c);
        for (double m : logspace(1e-3, 50.0, 500)) al = std::max(al, alpha_factors(m, cfg).alpha);
        const double m1 = find_m1(c);
        const double ref = m1_reference(c);
        const bool ok_eh = eh <= eh_lim, ok_al = al < 0.2, ok_m1 = std::abs(m1 - ref) <= kM1Tolerance;
        pass = pass && ok_eh && ok_al && ok_m1;
        detail += fmt::format("{}case {}: max eta_hat {:.4f} (<= {}){}, max alpha {:.4f}{}, m1 {:.4f} (want {} +- {}){}",
                              detail.empty() ? "" : "; ", name, eh, eh_lim, ok_eh ? "" : " FAIL", al,
                              ok_al ? "" : " FAIL", m1, ref, kM1Tolerance, ok_m1 ? "" : " FAIL");
    }
    return {pass, detail};
}

Outcome prey_recovery() {
    double min_s4 = INFINITY;
    std::string where;
    SimConfig cfg;
    for (const Params& p : criterion1_points()) {
        double s4 = NAN;
        try {
            s4 = transit_points(p, 0.8, cfg).s4;
        } catch (const std::exception&) {
        }
        if (!(s4 >= min_s4)) {
            min_s4 = s4;
            where = fmt::format("a={} lambda={} m={}", p.a(), p.lambda(), p.m());
        }
    }
    double min_step2 = INFINITY;
    std::vector<double> ms = logspace(1e-3, 50.0, 500);
    for (double m : {0.01, 0.1, 0.3, 1.0, 2.0, 3.0, 5.0}) ms.push_back(m);
    for (auto c : {Region4Case::A, Region4Case::B})
        for (double m : ms) min_step2 = std::min(min_step2, step2_smax_lower(eta_hat(m, c), 0.7, 0.7, m));
    const bool pass = min_s4 > 0.8 && min_step2 > 0.8;
    return {pass, fmt::format("min simulated s4 {:.6f} at {}; min step-2 bound {:.6f}", min_s4, where, min_step2)};
}

Outcome canard_regime() {
    const Params p(0.1, 0.1, 0.01);
    const CycleReport r = cycle_extreme_report(p, SimConfig{}, {0.8, true});
    const CanardEstimates c = canard(p);
    const double ex = r.extremes.x_max / 0.3025 - 1.0;
    const double es = r.extremes.s_max / c.s_max_c - 1.0;
    const double fx = r.extremes.ln_x_min - std::log(c.x_min_c);
    const bool pass = r.extremes.converged && !r.bounds.proven && std::abs(ex) <= 0.05 && std::abs(es) <= 0.02 &&
                      std::abs(fx) <= 1.0;
    return {pass, fmt::format("x_max {:.5f} ({:+.2f}% vs 0.3025), s_max {:.5f} ({:+.2f}% vs {:.5f}), "
                              "ln(x_min/x_min_c) {:+.3f}",
                              r.extremes.x_max, 100 * ex, r.extremes.s_max, 100 * es, c.s_max_c, fx)};
}

Outcome proof_checks() {
    const ProofCheckReport a = proof_spotchecks(Region4Case::A);
    const ProofCheckReport b = proof_spotchecks(Region4Case::B);
    const CheckResult& c0 = a.at("lemma1_C0");
    const CheckResult& c01 = a.at("lemma1_C0plusC1");
    const CheckResult& gA = a.at("gstar_endpoints");
    const CheckResult& gB = b.at("gstar_endpoints");
    const CheckResult& l19 = a.at("lemma19_min_derivative");
    const bool pass = c0.passed && c01.passed && gA.passed && gB.passed && l19.passed;
    return {pass, fmt::format("max C0 {:.4g}, max C0+C1 {:.3g}, G* margin A {:.3g} / B {:.3g}, "
                              "min d(ln eta_bar) {:.4g}",
                              c0.value, c01.value, gA.margin, gB.margin, l19.value)};
}

Outcome robustness() {
    const Params p(0.05, 0.05, 5.0);
    SimConfig c1, c2;
    c2.rtol = 0.5 * c1.rtol;
    try {
        const CycleReport r1 = cycle_extreme_report(p, c1);
        const CycleReport r2 = cycle_extreme_report(p, c2);
        const TransitPoints tp = transit_points(p, 0.8, c1);
        const CycleExtremes& e1 = r1.extremes;
        const CycleExtremes& e2 = r2.extremes;
        const double d = std::max({std::abs(std::log(e1.x_max) - std::log(e2.x_max)), std::abs(e1.ln_x_min - e2.ln_x_min),
                                   std::abs(e1.ln_s_min - e2.ln_s_min), std::abs(e1.ln_s_max - e2.ln_s_max)});
        const std::size_t nonfinite = e1.nonfinite + e2.nonfinite + tp.trajectory.nonfinite;
        bool finite = true;
        for (double v : {e1.x_max, e1.ln_x_min, e1.ln_s_min, e1.ln_s_max, e2.x_max, e2.ln_x_min, e2.ln_s_min,
                         e2.ln_s_max, r1.margins.min()})
            finite = finite && std::isfinite(v);
        for (const Sample& s : tp.trajectory.samples) finite = finite && std::isfinite(s.y.u) && std::isfinite(s.y.v);
        const bool pass = e1.converged && e2.converged && e1.ln_x_min < -90.0 && nonfinite == 0 && finite && d < 1e-6;
        return {pass, fmt::format("ln x_min {:.4f}, non-finite {}, rtol-halving max change {:.3g}", e1.ln_x_min,
                                  nonfinite, d)};
    } catch (const std::exception& e) {
        return {false, std::string("pipeline failed: ") + e.what()};
    }
}

Outcome figures() {
    const FigurePanel panel{0.05, 0.05};
    SimConfig cfg;
    const FigureTable f2 = figure_table("fig2", panel, cfg);
    const FigureTable f3 = figure_table("fig3", panel, cfg);
    const FigureTable f4 = figure_table("fig4", panel, cfg);
    const FigureTable f5 = figure_table("fig5", panel, cfg);
    int bad = 0;
    for (const auto& r : f2.rows)
        bad += !(r[1] < r[5] && r[5] < r[2] && r[5] < r[3] && r[5] < r[4]);
    for (const auto* t : {&f3, &f4})
        for (const auto& r : t->rows) bad += !(r[1] < r[3] && r[3] < r[2]);
    for (const auto& r : f5.rows) bad += !(r[3] > 0.8 && r[4] < 0.0);
    const std::size_t n = f2.rows.size();
    return {bad == 0 && n == 50, fmt::format("{} m-points, {} pointwise violations over fig2-fig5", n, bad)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"Cycle bounds sandwich", bounds_sandwich},
        {"z-function sandwich", z_sandwich},
        {"x1 upper bound limit", x1_limit},
        {"Region-4 constants", region4_constants},
        {"Prey recovery end-to-end", prey_recovery},
        {"Canard regime", canard_regime},
        {"Proof spot-checks", proof_checks},
        {"Numerical robustness", robustness},
        {"Figure-data reproduction", figures},
    };
    int only = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && only != static_cast<int>(i + 1)) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        fmt::print("{} {}. {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
        std::fflush(stdout);
    }
    return failures;
}
