#include "cyclebound/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cyclebound/error.hpp"
#include "cyclebound/params_json.hpp"

namespace cyclebound {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

auto key(const Params& p) { return std::make_tuple(p.a(), p.lambda(), p.m()); }

std::string num(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

SimConfig apply_env(SimConfig cfg) {
    const char* env = std::getenv("CYCLEBOUND_RTOL");
    if (env == nullptr || *env == '\0') return cfg;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string("CYCLEBOUND_RTOL: not a positive number: ") + env);
    cfg.rtol = v;
    return cfg;
}

std::vector<Params> SweepSpec::expand() const {
    std::vector<Params> out;
    for (double a : a_values)
        for (double l : lambda_values)
            for (double m : m_values) out.emplace_back(a, l, m);
    out.insert(out.end(), points.begin(), points.end());
    std::sort(out.begin(), out.end(), [](const Params& x, const Params& y) { return key(x) < key(y); });
    out.erase(std::unique(out.begin(), out.end(), [](const Params& x, const Params& y) { return key(x) == key(y); }),
              out.end());
    return out;
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("sweep spec must be a JSON object");
    SweepSpec s;
    auto list = [&j](const char* k) {
        return j.contains(k) ? j.at(k).get<std::vector<double>>() : std::vector<double>{};
    };
    s.a_values = list("a_values");
    s.lambda_values = list("lambda_values");
    s.m_values = list("m_values");
    if (j.contains("points"))
        for (const auto& rec : j.at("points")) s.points.push_back(params_from_json(rec));
    const bool grid = !s.a_values.empty() || !s.lambda_values.empty() || !s.m_values.empty();
    if (grid && (s.a_values.empty() || s.lambda_values.empty() || s.m_values.empty()))
        throw std::invalid_argument("sweep spec: a_values, lambda_values and m_values must all be non-empty");
    if (!grid && s.points.empty()) throw std::invalid_argument("sweep spec: no parameter points");
    s.s0 = j.value("s0", s.s0);
    s.sim.rtol = j.value("rtol", s.sim.rtol);
    s.jobs = j.value("jobs", s.jobs);
    s.force = j.value("force", s.force);
    if (s.jobs < 1) throw std::invalid_argument("sweep spec: jobs must be >= 1");
    return s;
}

SweepRow evaluate_point(const Params& p, double s0, const SimConfig& sim, bool force) {
    SweepRow row;
    row.params = p;
    row.margins = {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    row.min_margin = kNaN;
    row.s4 = kNaN;
    try {
        if (force || p.star_star()) row.bounds = theorem_a(p, {s0, force});
        row.extremes = limit_cycle(p, sim);
        row.s4 = transit_points(p, s0, sim).s4;
    } catch (const std::exception& e) {
        row.error = e.what();
        row.extremes.converged = false;
        return row;
    }
    row.flags[FlagConverged] = row.extremes.converged;
    if (!row.bounds) return row;

    const Margins& m = row.margins = margins(row.extremes, *row.bounds);
    row.flags[FlagXMax] = m.x_max_lo > 0.0 && m.x_max_hi > 0.0;
    row.flags[FlagLnXMin] = m.ln_x_min_lo > 0.0 && m.ln_x_min_hi > 0.0;
    row.flags[FlagLnSMin] = m.ln_s_min_lo > 0.0 && m.ln_s_min_hi > 0.0;
    row.flags[FlagSMax] = m.s_max_lo > 0.0 && m.s_max_hi > 0.0;
    row.flags[FlagS4] = row.s4 > row.bounds->s_max_lo;
    row.min_margin = m.min();
    row.pass = std::all_of(row.flags.begin(), row.flags.end(), [](bool f) { return f; });
    return row;
}

SweepReport run_sweep(const SweepSpec& spec) {
    if (spec.jobs < 1) throw std::invalid_argument("run_sweep: jobs must be >= 1");
    const std::vector<Params> pts = spec.expand();
    SweepReport rep;
    rep.rows.resize(pts.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < pts.size(); i = next++)
            rep.rows[i] = evaluate_point(pts[i], spec.s0, spec.sim, spec.force);
    };
    const auto n = static_cast<std::size_t>(spec.jobs);
    if (n == 1 || pts.size() <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(n, pts.size()); ++t) pool.emplace_back(worker);
    }
    return rep;
}

std::size_t SweepReport::counted(bool include_unproven) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [&](const SweepRow& r) { return include_unproven || r.proven(); }));
}

std::size_t SweepReport::passed(bool include_unproven) const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const SweepRow& r) {
        return (include_unproven || r.proven()) && r.pass;
    }));
}

bool SweepReport::any_nonconverged() const {
    return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.extremes.converged; });
}

bool SweepReport::any_violation(bool include_unproven) const {
    return counted(include_unproven) != passed(include_unproven);
}

int SweepReport::exit_code(bool include_unproven) const {
    if (any_nonconverged()) return 3;
    if (any_violation(include_unproven)) return 2;
    return 0;
}

const char* const kSweepCsvHeader =
    "a,lambda,m,proven,x_max_lo,x_max,x_max_hi,ln_x_min_lo,ln_x_min,ln_x_min_hi,ln_s_min_lo,ln_s_min,ln_s_min_hi,s_"
    "max,converged,min_margin,pass";

void write_sweep_csv(std::ostream& os, const SweepReport& report) {
    os << kSweepCsvHeader << '\n';
    for (const SweepRow& r : report.rows) {
        const BoundSet b = r.bounds.value_or(BoundSet{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN});
        const bool sim_ok = r.error.empty();
        const CycleExtremes& e = r.extremes;
        fmt::print(os, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(r.params.a()),
                   num(r.params.lambda()), num(r.params.m()), r.proven() ? 1 : 0, num(b.x_max_lo),
                   num(sim_ok ? e.x_max : kNaN), num(b.x_max_hi), num(b.ln_x_min_lo), num(sim_ok ? e.ln_x_min : kNaN),
                   num(b.ln_x_min_hi), num(b.ln_s_min_lo), num(sim_ok ? e.ln_s_min : kNaN), num(b.ln_s_min_hi),
                   num(sim_ok ? e.s_max : kNaN), e.converged ? 1 : 0, num(r.min_margin), r.pass ? 1 : 0);
    }
}

std::string sweep_csv(const SweepReport& report) {
    std::ostringstream os;
    write_sweep_csv(os, report);
    return os.str();
}

Region classify_region_log(const LogState& y, const Params& p) {
    const double ln_l = std::log(p.lambda());
    const double ln_h = log_h_of_log(y.v, p.a());
    const bool on_h = y.u == ln_h;
    const bool on_l = y.v == ln_l;
    if (on_h && on_l) return Region::Equilibrium;
    if (on_h) return Region::OnIsoclineH;
    if (on_l) return Region::OnIsoclineLambda;
    if (y.u > ln_h) return y.v > ln_l ? Region::R1 : Region::R2;
    return y.v < ln_l ? Region::R3 : Region::R4;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const Params& p) {
    os << "tau,ln_x,ln_s,region\n";
    for (const Sample& s : traj.samples)
        fmt::print(os, "{},{},{},{}\n", num(s.tau), num(s.y.u), num(s.y.v), to_string(classify_region_log(s.y, p)));
}

LyapunovMargins lyapunov_checks(const Params& p, int n_samples, const SimConfig& cfg, double s0) {
    if (n_samples < 2) throw std::invalid_argument("lyapunov_checks: need at least 2 samples");
    SimConfig c = cfg;
    c.record_samples = false;
    const LogState start{std::log(h(s0, p)), std::log(s0)};
    const Trajectory first =
        integrate(start, p, c, [](const Event& e) { return e.kind == EventKind::S_eq_lambda_down; });
    if (first.events.empty() || first.events.back().kind != EventKind::S_eq_lambda_down)
        throw SimulationError("lyapunov_checks: predator isocline not reached");
    const double tau1 = first.events.back().tau;

    const double m = p.m(), l = p.lambda(), a = p.a();
    const double A = 1.0 + m + a - m * l;
    const double B = (1.0 + m * l) / (1.0 + a + 2.0 * m * (1.0 - l));
    auto V2 = [&](const LogState& y) { return m * (std::exp(y.v) - l * y.v) + std::exp(y.u); };
    auto excess = [&](const LogState& y) {
        const double v = -std::expm1(y.v);
        return std::exp(y.u) - A * v / (1.0 + B * v);
    };

    LyapunovMargins out{std::numeric_limits<double>::infinity(), excess(start), 1};
    LogState y = start;
    double prev = V2(y);
    const double dt = tau1 / (n_samples - 1);
    SimConfig cfg_seg = c;
    cfg_seg.record_samples = true;
    for (int i = 1; i < n_samples; ++i) {
        const Trajectory seg = integrate(y, p, cfg_seg, nullptr, i == n_samples - 1 ? tau1 - dt * (i - 1) : dt);
        if (seg.samples.empty()) throw SimulationError("lyapunov_checks: empty segment");
        y = seg.samples.back().y;
        const double cur = V2(y);
        out.min_dV2 = std::min(out.min_dV2, cur - prev);
        out.max_barrier_excess = std::max(out.max_barrier_excess, excess(y));
        prev = cur;
        ++out.samples;
    }
    return out;
}

const std::vector<FigurePanel>& figure_panels() {
    static const std::vector<FigurePanel> panels{{0.05, 0.05}, {0.1, 0.01}, {0.1, 0.1}, {0.02, 0.02}};
    return panels;
}

std::vector<double> figure_m_grid() {
    constexpr int n = 50;
    const double lo = std::log(0.01), hi = std::log(5.0);
    std::vector<double> ms(n);
    for (int i = 0; i < n; ++i) ms[i] = std::exp(lo + (hi - lo) * i / (n - 1));
    ms.front() = 0.01;
    ms.back() = 5.0;
    return ms;
}

namespace {

struct PanelPoint {
    double m;
    BoundSet bounds;
    double x_refined;
    double x_linear;
    CycleExtremes ext;
};

std::vector<PanelPoint> simulate_panel(const FigurePanel& panel, const SimConfig& cfg) {
    std::vector<PanelPoint> pts;
    SimConfig c = cfg;
    c.record_samples = false;
    for (double m : figure_m_grid()) {
        const Params p(panel.a, panel.lambda, m);
        PanelPoint pp{m, theorem_a(p, {0.8, true}), x1_upper_refined(p), x1_upper_linear(p), {}};
        try {
            pp.ext = limit_cycle(p, c);
        } catch (const SimulationError&) {
            pp.ext.x_max = pp.ext.ln_x_min = pp.ext.ln_s_min = pp.ext.s_max = pp.ext.ln_s_max = kNaN;
        }
        pts.push_back(pp);
    }
    return pts;
}

FigureTable build_table(const std::string& which, const std::vector<PanelPoint>& pts) {
    FigureTable t;
    if (which == "fig2")
        t.columns = {"m", "x_max_lower", "x_max_upper", "x_max_upper_refined", "x_max_upper_linear", "x_max"};
    else if (which == "fig3")
        t.columns = {"m", "ln_s_min_lower", "ln_s_min_upper", "ln_s_min"};
    else if (which == "fig4")
        t.columns = {"m", "ln_x_min_lower", "ln_x_min_upper", "ln_x_min"};
    else if (which == "fig5")
        t.columns = {"m", "s_max_lower", "s_max_upper", "s_max", "ln_s_max"};
    else
        throw std::invalid_argument("figures: unknown figure '" + which + "'");
    t.columns.push_back("converged");
    t.columns.push_back("proven");

    for (const PanelPoint& p : pts) {
        const BoundSet& b = p.bounds;
        const CycleExtremes& e = p.ext;
        std::vector<double> row;
        if (which == "fig2")
            row = {p.m, b.x_max_lo, b.x_max_hi, p.x_refined, p.x_linear, e.x_max};
        else if (which == "fig3")
            row = {p.m, b.ln_s_min_lo, b.ln_s_min_hi, e.ln_s_min};
        else if (which == "fig4")
            row = {p.m, b.ln_x_min_lo, b.ln_x_min_hi, e.ln_x_min};
        else
            row = {p.m, b.s_max_lo, b.s_max_hi, e.s_max, e.ln_s_max};
        row.push_back(e.converged ? 1.0 : 0.0);
        row.push_back(b.proven ? 1.0 : 0.0);
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_table(const std::filesystem::path& path, const FigureTable& t) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("figures: cannot open " + path.string());
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << num(row[i]);
        os << '\n';
    }
    if (!os) throw std::runtime_error("figures: write failed for " + path.string());
}

}  // namespace

FigureTable figure_table(const std::string& which, const FigurePanel& panel, const SimConfig& cfg) {
    build_table(which, {});  // validates `which` before the simulations
    return build_table(which, simulate_panel(panel, cfg));
}

std::vector<std::filesystem::path> emit_figures(const std::string& which, const std::filesystem::path& out_dir,
                                                const SimConfig& cfg) {
    std::vector<std::string> figs;
    if (which == "all")
        figs = {"fig2", "fig3", "fig4", "fig5"};
    else
        figs = {which};
    for (const auto& f : figs) build_table(f, {});

    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const FigurePanel& panel : figure_panels()) {
        const auto pts = simulate_panel(panel, cfg);
        for (const auto& f : figs) {
            const auto path = out_dir / fmt::format("{}_a{:g}_lambda{:g}.csv", f, panel.a, panel.lambda);
            write_table(path, build_table(f, pts));
            written.push_back(path);
        }
    }
    return written;
}

}  // namespace cyclebound
