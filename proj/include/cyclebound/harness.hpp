#pragma once

// Parameter sweeps comparing simulated cycles with the closed-form bounds,
// CSV output for sweeps, trajectories and figure data.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclebound/bounds.hpp"
#include "cyclebound/model.hpp"
#include "cyclebound/simulator.hpp"

namespace cyclebound {

// Applies CYCLEBOUND_RTOL, if set, to cfg.rtol. Throws std::invalid_argument
// for a malformed or non-positive value.
SimConfig apply_env(SimConfig cfg);

struct SweepSpec {
    std::vector<double> a_values;
    std::vector<double> lambda_values;
    std::vector<double> m_values;
    // Extra points outside the grid.
    std::vector<Params> points;
    double s0 = 0.8;
    SimConfig sim;
    int jobs = 1;
    bool force = false;

    // Grid points (cartesian product) followed by the extra points, sorted by
    // (a, lambda, m) with duplicates removed.
    std::vector<Params> expand() const;
};

// {"a_values": [...], "lambda_values": [...], "m_values": [...],
//  "points": [{a, lambda, m} | {r, K, q, H, p, d}, ...],
//  "s0": 0.8, "rtol": 1e-10, "jobs": 1, "force": false}
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

enum SweepFlag : std::size_t {
    FlagXMax,
    FlagLnXMin,
    FlagLnSMin,
    FlagSMax,
    FlagS4,  // the tour from (h(s0), s0) reaches s4 > 0.8
    FlagConverged,
    kSweepFlagCount,
};

struct SweepRow {
    Params params{1.0, 1.0, 1.0};
    std::optional<BoundSet> bounds;
    CycleExtremes extremes;
    Margins margins{};
    double s4 = 0.0;
    std::array<bool, kSweepFlagCount> flags{};
    double min_margin = 0.0;
    bool pass = false;
    std::string error;  // empty unless the row could not be computed

    bool proven() const { return bounds && bounds->proven; }
};

struct SweepReport {
    std::vector<SweepRow> rows;

    // Rows counted by the PASS statistic: proven ones unless include_unproven.
    std::size_t counted(bool include_unproven = false) const;
    std::size_t passed(bool include_unproven = false) const;
    bool any_nonconverged() const;
    bool any_violation(bool include_unproven = false) const;
    // 0 all pass, 2 some bound violated, 3 some simulation did not converge.
    int exit_code(bool include_unproven = false) const;
};

SweepRow evaluate_point(const Params& p, double s0, const SimConfig& sim, bool force);

SweepReport run_sweep(const SweepSpec& spec);

extern const char* const kSweepCsvHeader;

void write_sweep_csv(std::ostream& os, const SweepReport& report);
std::string sweep_csv(const SweepReport& report);

// tau, ln_x, ln_s, region
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const Params& p);

Region classify_region_log(const LogState& y, const Params& p);

// Worst defects along the first Region-1 arc from (h(s0), s0).
struct LyapunovMargins {
    // Smallest increment of m (s - lambda ln s) + x between samples; the
    // function is nondecreasing there.
    double min_dV2;
    // Largest x - A v / (1 + B v), v = 1 - s, over the arc; negative means
    // the trajectory stays below the barrier.
    double max_barrier_excess;
    int samples;
};

LyapunovMargins lyapunov_checks(const Params& p, int n_samples, const SimConfig& cfg = {}, double s0 = 0.8);

struct FigurePanel {
    double a;
    double lambda;
};

const std::vector<FigurePanel>& figure_panels();

// 50 points, log-spaced in [0.01, 5].
std::vector<double> figure_m_grid();

// `which` is one of fig2..fig5 or "all". Writes one CSV per panel into
// out_dir and returns the paths written.
std::vector<std::filesystem::path> emit_figures(const std::string& which, const std::filesystem::path& out_dir,
                                                const SimConfig& cfg = {});

// Rows of one figure for one panel, as written by emit_figures.
struct FigureTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

FigureTable figure_table(const std::string& which, const FigurePanel& panel, const SimConfig& cfg = {});

}  // namespace cyclebound
