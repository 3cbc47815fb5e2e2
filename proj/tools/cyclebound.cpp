#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "cyclebound/bounds.hpp"
#include "cyclebound/error.hpp"
#include "cyclebound/harness.hpp"
#include "cyclebound/params_json.hpp"
#include "cyclebound/proofcheck.hpp"
#include "cyclebound/region4.hpp"
#include "cyclebound/simulator.hpp"

using nlohmann::json;
using namespace cyclebound;

namespace {

struct ParamArgs {
    double a = NAN, lambda = NAN, m = NAN;
    std::string file;

    void add(CLI::App* app) {
        app->add_option("--a", a, "prey half-saturation (nondimensional)");
        app->add_option("--lambda", lambda, "predator isocline level");
        app->add_option("--m", m, "predator time-scale ratio");
        app->add_option("--params", file, "JSON record {a, lambda, m} or {r, K, q, H, p, d}")->check(CLI::ExistingFile);
    }

    Params get(bool allow_limit = false) const {
        if (!file.empty()) {
            std::ifstream is(file);
            return params_from_json(json::parse(is));
        }
        if (std::isnan(a) || std::isnan(lambda) || std::isnan(m))
            throw CLI::ValidationError("parameters", "give --a, --lambda and --m, or --params");
        if (allow_limit && m == 0.0) return Params::limit(a, lambda, m);
        return Params(a, lambda, m);
    }
};

json bounds_json(const BoundSet& b) {
    return {{"x_max_lo", b.x_max_lo},       {"x_max_hi", b.x_max_hi},       {"ln_x_min_lo", b.ln_x_min_lo},
            {"ln_x_min_hi", b.ln_x_min_hi}, {"ln_s_min_lo", b.ln_s_min_lo}, {"ln_s_min_hi", b.ln_s_min_hi},
            {"s_max_lo", b.s_max_lo},       {"s_max_hi", b.s_max_hi},       {"s0", b.s0},
            {"proven", b.proven}};
}

json extremes_json(const CycleExtremes& e) {
    return {{"x_max", e.x_max},       {"s_max", e.s_max},         {"ln_s_max", e.ln_s_max},
            {"ln_x_min", e.ln_x_min}, {"ln_s_min", e.ln_s_min},   {"period", e.period},
            {"converged", e.converged}, {"residual", e.residual}, {"iterations", e.iterations},
            {"steps", e.steps},       {"nonfinite", e.nonfinite}};
}

json margins_json(const Margins& m) {
    return {{"x_max_lo", m.x_max_lo},       {"x_max_hi", m.x_max_hi},       {"ln_x_min_lo", m.ln_x_min_lo},
            {"ln_x_min_hi", m.ln_x_min_hi}, {"ln_s_min_lo", m.ln_s_min_lo}, {"ln_s_min_hi", m.ln_s_min_hi},
            {"s_max_lo", m.s_max_lo},       {"s_max_hi", m.s_max_hi},       {"min", m.min()}};
}

void print_flat(const json& j, const std::string& prefix = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it->is_object())
            print_flat(*it, prefix + it.key() + ".");
        else if (it->is_number_float())
            fmt::print("{}{} {:.17g}\n", prefix, it.key(), it->get<double>());
        else
            fmt::print("{}{} {}\n", prefix, it.key(), it->dump());
    }
}

void emit(const json& j, bool as_json) {
    if (as_json)
        std::cout << j.dump(2) << '\n';
    else
        print_flat(j);
}

Region4Case parse_case(const std::string& s) { return s == "A" ? Region4Case::A : Region4Case::B; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Limit-cycle bounds for the Rosenzweig-MacArthur predator-prey system"};
    app.require_subcommand(1);

    ParamArgs pa;
    double s0 = 0.8;
    bool force = false, as_json = false;

    auto* bounds = app.add_subcommand("bounds", "closed-form bounds on the cycle extremes");
    pa.add(bounds);
    bounds->add_option("--s0", s0, "anchor prey level of the lower predator bound");
    bounds->add_flag("--force", force, "evaluate outside the proven parameter range");
    bounds->add_flag("--json", as_json);

    std::optional<double> rtol;
    std::string out;
    int loops = 3;
    auto* simulate = app.add_subcommand("simulate", "integrate from (h(s0), s0) and dump the trajectory");
    pa.add(simulate);
    simulate->add_option("--s0", s0);
    simulate->add_option("--rtol", rtol)->check(CLI::PositiveNumber);
    simulate->add_option("--loops", loops, "number of tours through the four regions")->check(CLI::PositiveNumber);
    simulate->add_option("--out", out, "CSV file (stdout if omitted)");

    auto* cycle = app.add_subcommand("cycle", "locate the limit cycle and compare with the bounds");
    pa.add(cycle);
    cycle->add_option("--rtol", rtol)->check(CLI::PositiveNumber);
    cycle->add_flag("--force", force);
    cycle->add_flag("--json", as_json);

    std::string case_name = "A";
    double m_val = 1.0;
    auto* region4 = app.add_subcommand("region4", "Region-4 constants as JSON");
    region4->add_option("--case", case_name)->check(CLI::IsMember({"A", "B"}))->required();
    region4->add_option("--m", m_val)->check(CLI::PositiveNumber)->required();

    std::string spec_file;
    std::optional<int> jobs;
    auto* sweep = app.add_subcommand("sweep", "parameter sweep, CSV report");
    sweep->add_option("--spec", spec_file)->check(CLI::ExistingFile)->required();
    sweep->add_option("--out", out)->required();
    sweep->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    auto* proof = app.add_subcommand("proofcheck", "grid spot-checks of proof inequalities");
    proof->add_option("--case", case_name)->check(CLI::IsMember({"A", "B"}))->required();
    proof->add_flag("--json", as_json);

    std::string which = "fig2";
    auto* figures = app.add_subcommand("figures", "figure data as CSV");
    figures->add_option("--which", which)->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "all"}));
    figures->add_option("--out", out)->required();

    auto* canard_cmd = app.add_subcommand("canard", "small-m approximations of the extremes");
    pa.add(canard_cmd);
    canard_cmd->add_flag("--json", as_json);

    CLI11_PARSE(app, argc, argv);

    try {
        SimConfig cfg = apply_env(SimConfig{});
        if (rtol) cfg.rtol = *rtol;

        if (*bounds) {
            const BoundSet b = theorem_a(pa.get(), {s0, force});
            emit(bounds_json(b), as_json);
            return 0;
        }
        if (*simulate) {
            const Params p = pa.get();
            if (!(s0 > p.lambda() && s0 < 1.0)) throw std::invalid_argument("--s0 must lie in (lambda, 1)");
            const LogState start{std::log(h(s0, p)), std::log(s0)};
            std::size_t seen = 0;
            const std::size_t want = 4 * static_cast<std::size_t>(loops);
            const Trajectory t = integrate(start, p, cfg, [&](const Event&) { return ++seen == want; });
            if (out.empty()) {
                write_trajectory_csv(std::cout, t, p);
            } else {
                std::ofstream os(out);
                if (!os) throw std::runtime_error("cannot open " + out);
                write_trajectory_csv(os, t, p);
                fmt::print(stderr, "{} samples, {} events written to {}\n", t.samples.size(), t.events.size(), out);
            }
            return 0;
        }
        if (*cycle) {
            const Params p = pa.get();
            json j{{"params", to_json(p)}};
            int code = 0;
            if (p.star_star() || force) {
                const CycleReport r = cycle_extreme_report(p, cfg, {0.8, force});
                j["extremes"] = extremes_json(r.extremes);
                j["bounds"] = bounds_json(r.bounds);
                j["margins"] = margins_json(r.margins);
                if (!r.extremes.converged)
                    code = 3;
                else if (!(r.margins.min() > 0.0))
                    code = 2;
            } else {
                const CycleExtremes e = limit_cycle(p, cfg);
                j["extremes"] = extremes_json(e);
                if (!e.converged) code = 3;
            }
            emit(j, as_json);
            return code;
        }
        if (*region4) {
            const Region4Case c = parse_case(case_name);
            const Region4Config rc = Region4Config::for_case(c);
            const AlphaFactors f = alpha_factors(m_val, rc);
            json j{{"case", case_name},
                   {"m", m_val},
                   {"k", rc.k},
                   {"s_gamma", rc.s_gamma},
                   {"eta_hat", f.x_gamma},
                   {"alpha1", f.alpha1},
                   {"alpha2", f.alpha2},
                   {"alpha3", f.alpha3},
                   {"alpha", f.alpha},
                   {"delta", f.delta},
                   {"step2_smax_lower", step2_smax_lower(f.x_gamma, rc.s_gamma, f.M, m_val)},
                   {"m1", find_m1(c)}};
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        if (*sweep) {
            std::ifstream is(spec_file);
            SweepSpec spec = sweep_spec_from_json(json::parse(is));
            spec.sim.rtol = apply_env(spec.sim).rtol;
            if (rtol) spec.sim.rtol = *rtol;
            if (jobs) spec.jobs = *jobs;
            const SweepReport rep = run_sweep(spec);
            std::ofstream os(out);
            if (!os) throw std::runtime_error("cannot open " + out);
            write_sweep_csv(os, rep);
            for (const SweepRow& r : rep.rows)
                if (!r.error.empty())
                    fmt::print(stderr, "a={} lambda={} m={}: {}\n", r.params.a(), r.params.lambda(), r.params.m(),
                               r.error);
            fmt::print("{} rows, {}/{} proven rows pass\n", rep.rows.size(), rep.passed(), rep.counted());
            return rep.exit_code();
        }
        if (*proof) {
            const ProofCheckReport rep = proof_spotchecks(parse_case(case_name));
            if (as_json) {
                json j{{"case", case_name}, {"all_passed", rep.all_passed()}, {"checks", json::array()}};
                for (const auto& c : rep.checks) {
                    json at = json::object();
                    for (const auto& [k, v] : c.argmin) at[k] = v;
                    j["checks"].push_back(
                        {{"name", c.name}, {"margin", c.margin}, {"value", c.value}, {"passed", c.passed}, {"at", at}});
                }
                std::cout << j.dump(2) << '\n';
            } else {
                for (const auto& c : rep.checks) {
                    std::string at;
                    for (const auto& [k, v] : c.argmin) at += fmt::format(" {}={:.6g}", k, v);
                    fmt::print("{:<24} {} margin={:.6g} value={:.6g} at{}\n", c.name, c.passed ? "PASS" : "FAIL",
                               c.margin, c.value, at);
                }
            }
            return rep.all_passed() ? 0 : 2;
        }
        if (*figures) {
            for (const auto& path : emit_figures(which, out, cfg)) fmt::print("{}\n", path.string());
            return 0;
        }
        if (*canard_cmd) {
            const CanardEstimates c = canard(pa.get(true));
            emit({{"x_max_c", c.x_max_c}, {"x_min_c", c.x_min_c}, {"s_max_c", c.s_max_c}, {"ln_s_min_c", c.ln_s_min_c}},
                 as_json);
            return 0;
        }
    } catch (const SimulationError& e) {
        fmt::print(stderr, "simulation error: {}\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
