#pragma once

// Grid spot-checks of inequalities used inside the proofs. These sample,
// they do not certify.

#include <string>
#include <vector>

#include "cyclebound/region4.hpp"

namespace cyclebound {

struct Lemma1Coefficients {
    double C0;
    double C0_plus_C1;
};

// Coefficients of the polynomial whose sign gives V' < 0 along the upper
// barrier. Takes raw values so that lambda = 0 is allowed.
Lemma1Coefficients lemma1_coefficients(double a, double lambda, double m);

struct CheckResult {
    std::string name;
    // Signed distance to failure at the worst sampled point; >= 0 passes
    // (strict checks require > 0).
    double margin;
    bool passed;
    // Coordinates of the worst point, e.g. {{"a", 0.1}, {"m", 3}}.
    std::vector<std::pair<std::string, double>> argmin;
    double value;  // the worst sampled value itself
};

struct ProofCheckReport {
    Region4Case which;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    const CheckResult& at(const std::string& name) const;
};

struct ProofCheckGrid {
    int n = 200;           // points per axis
    int alpha_points = 500;
    int eta_hat_points = 20001;
    double fd_step = 1e-6;
};

// lemma1_C0, lemma1_C0plusC1, gstar_endpoints, alpha_max, eta_hat_max,
// lemma19_min_derivative, m1_roots.
ProofCheckReport proof_spotchecks(Region4Case c, const ProofCheckGrid& grid = {});

// Expected m1 for each case and its tolerance.
double m1_reference(Region4Case c);
inline constexpr double kM1Tolerance = 0.02;

// Upper limit on eta_hat over m in [0, 20].
double eta_hat_limit(Region4Case c);

}  // namespace cyclebound
