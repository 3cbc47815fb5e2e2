#include "cyclebound/proofcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cyclebound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

// Tracks the largest sampled value of an expression that must stay below a
// limit.
struct Worst {
    double value = -kInf;
    std::vector<std::pair<std::string, double>> at;

    void offer(double v, std::vector<std::pair<std::string, double>> where) {
        if (v > value || std::isnan(v)) {
            value = std::isnan(v) ? kInf : v;
            at = std::move(where);
        }
    }
};

CheckResult make(std::string name, double margin, bool strict, double value,
                 std::vector<std::pair<std::string, double>> at) {
    const bool ok = std::isfinite(margin) && (strict ? margin > 0.0 : margin >= 0.0);
    return {std::move(name), margin, ok, std::move(at), value};
}

}  // namespace

Lemma1Coefficients lemma1_coefficients(double a, double lambda, double m) {
    const double l = lambda;
    const double c = -m * l * (3.0 + 5.0 * a + a * a) - 1.0 - m - a;
    const double C0 = -m * m * m * l * (l * l - 5.0 * l + 4.0) + m * m * l * ((2.0 * a + 6.0) * l - 8.0 - 4.0 * a) + c;
    const double sq = a + 2.0 + 2.0 * m - m * l;
    return {C0, -m * l * sq * sq};
}

double m1_reference(Region4Case c) { return c == Region4Case::A ? 4.11 : 3.06; }

double eta_hat_limit(Region4Case c) { return c == Region4Case::A ? 0.05 : 0.08; }

bool ProofCheckReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.passed; });
}

const CheckResult& ProofCheckReport::at(const std::string& name) const {
    for (const auto& r : checks)
        if (r.name == name) return r;
    throw std::out_of_range("no check named " + name);
}

ProofCheckReport proof_spotchecks(Region4Case c, const ProofCheckGrid& grid) {
    if (grid.n < 2) throw std::invalid_argument("proof_spotchecks: need at least 2 points per axis");
    const Region4Config cfg = Region4Config::for_case(c);
    const double lambda_max = c == Region4Case::A ? 0.05 : 0.01;
    const int n = grid.n;
    ProofCheckReport rep{c, {}};

    {
        Worst c0, c01;
        for (int i = 1; i <= n; ++i) {
            const double a = 0.5 * i / n;
            for (int j = 0; j < n; ++j) {
                const double l = static_cast<double>(j) / n;
                for (int k = 1; k <= n; ++k) {
                    const double m = 10.0 * k / n;
                    const auto r = lemma1_coefficients(a, l, m);
                    c0.offer(r.C0, {{"a", a}, {"lambda", l}, {"m", m}});
                    c01.offer(r.C0_plus_C1, {{"a", a}, {"lambda", l}, {"m", m}});
                }
            }
        }
        rep.checks.push_back(make("lemma1_C0", -c0.value, true, c0.value, c0.at));
        rep.checks.push_back(make("lemma1_C0plusC1", -c01.value, false, c01.value, c01.at));
    }

    const std::vector<double> box_m = log_grid(1e-2, 20.0, n);
    {
        Worst g;
        for (int i = 1; i <= n; ++i) {
            const double a = cfg.a_max * i / n;
            for (int j = 1; j <= n; ++j) {
                const double l = lambda_max * j / n;
                for (double m : box_m) {
                    const Params p(a, l, m);
                    const double lo = G_star(l, p, cfg.k);
                    const double hi = -G_star(1.0, p, cfg.k);
                    g.offer(std::max(lo, hi), {{"a", a}, {"lambda", l}, {"m", m}});
                }
            }
        }
        rep.checks.push_back(make("gstar_endpoints", -g.value, true, g.value, g.at));
    }

    {
        Worst al;
        for (double m : log_grid(1e-3, 50.0, grid.alpha_points)) al.offer(alpha_factors(m, cfg).alpha, {{"m", m}});
        rep.checks.push_back(make("alpha_max", 0.2 - al.value, true, al.value, al.at));
    }

    {
        Worst eh;
        const int np = grid.eta_hat_points;
        for (int i = 0; i < np; ++i) {
            const double m = 20.0 * i / (np - 1);
            eh.offer(eta_hat(m, c), {{"m", m}});
        }
        for (double m : {0.3, std::nextafter(0.3, 1.0)}) eh.offer(eta_hat(m, c), {{"m", m}});
        const double lim = eta_hat_limit(c);
        rep.checks.push_back(make("eta_hat_max", lim - eh.value, false, eh.value, eh.at));
    }

    {
        // Smallest centered difference of ln eta_bar in a and in lambda; eta_bar
        // itself underflows for small a + lambda.
        const double hstep = grid.fd_step;
        Worst neg;
        for (int i = 1; i <= n; ++i) {
            const double a = cfg.a_max * i / n;
            for (int j = 1; j <= n; ++j) {
                const double l = lambda_max * j / n;
                for (double m : box_m) {
                    const double da =
                        (ln_eta_bar(Params(a + hstep, l, m), cfg) - ln_eta_bar(Params(a - hstep, l, m), cfg)) / (2 * hstep);
                    const double dl =
                        (ln_eta_bar(Params(a, l + hstep, m), cfg) - ln_eta_bar(Params(a, l - hstep, m), cfg)) / (2 * hstep);
                    neg.offer(-std::min(da, dl), {{"a", a}, {"lambda", l}, {"m", m}});
                }
            }
        }
        rep.checks.push_back(make("lemma19_min_derivative", 1e-9 - neg.value, false, -neg.value, neg.at));
    }

    {
        double m1 = std::numeric_limits<double>::quiet_NaN();
        try {
            m1 = find_m1(c);
        } catch (const std::exception&) {
        }
        const double ref = m1_reference(c);
        const double dev = std::abs(m1 - ref);
        rep.checks.push_back(make("m1_roots", std::isnan(m1) ? -ref : kM1Tolerance - dev, false, m1, {{"m", m1}}));
    }
    return rep;
}

}  // namespace cyclebound
