#pragma once

#include "memsim/trace.hpp"

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace memsim {

// =============================================================================
// Fixed-step RK4 transient integrator
// =============================================================================

/// User-assembled ODE system. The derivative function must be deterministic
/// and side-effect-free; output taps turn (t, state) into recorded channels.
struct StateSystem {
    std::size_t dimension = 0;
    std::function<void(double t, std::span<const double> state, std::span<double> dstate)> derivative;
    std::vector<std::pair<std::string, std::function<double(double, std::span<const double>)>>> taps;
};

struct SolveConfig {
    double t0 = 0.0;
    double t1 = 0.0;
    double dt = 0.0;
    std::size_t record_stride = 1;
    double state_bound = 1e6; // divergence guard, SI units
};

/// Classic RK4. Records taps every `record_stride` steps starting at t0; the
/// final recorded time is within dt of t1. Throws SolverDiverged when any
/// |state| exceeds the guard, before a non-finite value can be recorded.
Trace integrate(const StateSystem& sys, std::span<const double> init, const SolveConfig& cfg);

/// Identical method at dt/32 on the same record grid; test oracle only.
Trace reference_integrate(const StateSystem& sys, std::span<const double> init,
                          const SolveConfig& cfg);

} // namespace memsim
