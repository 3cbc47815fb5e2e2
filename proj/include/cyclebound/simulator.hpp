#pragma once

// Forward integration of the predator-prey system in (ln x, ln s), with
// location of the isocline crossings that separate Regions 1-4, and
// extraction of the limit cycle by iterating its return map.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "cyclebound/bounds.hpp"
#include "cyclebound/model.hpp"

namespace cyclebound {

// Isocline crossings in the order a trajectory meets them:
// Region 1 -> 2 -> 3 -> 4 -> 1.
enum class EventKind {
    S_eq_lambda_down,  // 1 -> 2, predator maximum
    X_eq_h_min,        // 2 -> 3, prey minimum
    S_eq_lambda_up,    // 3 -> 4, predator minimum
    X_eq_h_max,        // 4 -> 1, prey maximum
};

std::string_view to_string(EventKind k);
EventKind next_kind(EventKind k);

struct Sample {
    double tau;
    LogState y;
};

struct Event {
    double tau;
    LogState y;
    EventKind kind;
};

struct Trajectory {
    std::vector<Sample> samples;
    std::vector<Event> events;
    std::size_t steps = 0;
    std::size_t rejected = 0;
    std::size_t nonfinite = 0;  // rejected trial steps that produced inf/NaN
};

struct SimConfig {
    double rtol = 1e-10;
    double atol_log = 1e-12;
    // ln s sits within ~1e-40 of 0 near the prey maximum, so its error
    // control is effectively relative.
    double atol_ln_s = 1e-200;
    std::size_t max_steps = 20'000'000;
    double cycle_tol = 1e-9;
    int max_return_iters = 10000;
    double event_tol = 1e-12;  // tau resolution of located crossings
    bool record_samples = true;
};

// Return true to end the integration at this event.
using StopPredicate = std::function<bool(const Event&)>;

// Integrates from `start` until `stop` accepts an event or tau reaches
// tau_max. The trajectory ends with a sample at the final time. Throws
// SimulationError on step budget exhaustion or step-size collapse and
// std::invalid_argument for limit-mode parameters.
Trajectory integrate(const LogState& start, const Params& p, const SimConfig& cfg, const StopPredicate& stop,
                     double tau_max = std::numeric_limits<double>::infinity());
Trajectory integrate(const State& start, const Params& p, const SimConfig& cfg, const StopPredicate& stop,
                     double tau_max = std::numeric_limits<double>::infinity());

// The four crossings P1..P4 of a trajectory started at P0 = (h(s0), s0).
struct TransitPoints {
    double x1;     // at s = lambda, s decreasing
    double ln_s2;  // at x = h(s), minimal s
    double ln_x3;  // at s = lambda, s increasing
    double s4;     // at x = h(s), maximal s
    double ln_s4;
    Trajectory trajectory;
};

// Requires the cycle regime and lambda < s0 < 1.
TransitPoints transit_points(const Params& p, double s0, const SimConfig& cfg);

struct CycleExtremes {
    double x_max = 0.0;
    double s_max = 0.0;
    double ln_s_max = 0.0;  // exact where s_max rounds to 1
    double ln_x_min = 0.0;
    double ln_s_min = 0.0;
    double period = 0.0;
    double p1_x = 0.0;
    double ln_p3_x = 0.0;
    double ln_p2_s = 0.0;
    double p4_s = 0.0;
    bool converged = false;
    double residual = 0.0;  // last |delta ln x| on the section
    int iterations = 0;
    std::size_t steps = 0;
    std::size_t nonfinite = 0;
};

// Iterates the return map on {s = lambda, x > h(lambda), s decreasing}
// starting from x_start (default x1_upper) until successive section values
// agree to cycle_tol in ln x, then measures one full loop. On budget
// exhaustion the last loop is reported with converged = false.
CycleExtremes limit_cycle(const Params& p, const SimConfig& cfg, std::optional<double> x_start = std::nullopt);

// Signed distances bound - value (positive means strictly inside), in log
// space.
struct Margins {
    double x_max_lo;
    double x_max_hi;
    double ln_x_min_lo;
    double ln_x_min_hi;
    double ln_s_min_lo;
    double ln_s_min_hi;
    double s_max_lo;
    double s_max_hi;

    double min() const;
};

Margins margins(const CycleExtremes& ext, const BoundSet& b);

struct CycleReport {
    Params params;
    CycleExtremes extremes;
    BoundSet bounds;
    Margins margins;
};

CycleReport cycle_extreme_report(const Params& p, const SimConfig& cfg, const TheoremOptions& opts = {});

}  // namespace cyclebound
