#pragma once

#include <stdexcept>
#include <string>

namespace cyclebound {

// Raised when an integration cannot make progress (step budget, step-size
// floor, event localization).
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by root solvers when the defining equation has no admissible root.
class NoRootError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace cyclebound
