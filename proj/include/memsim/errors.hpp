#pragma once

#include <stdexcept>
#include <string>

namespace memsim {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The transient integrator left the configured state bound (wrong
/// parameters or too large a step).
class SolverDiverged : public Error {
public:
    SolverDiverged(double t, double value)
        : Error("solver diverged at t=" + std::to_string(t) +
                " (|state|=" + std::to_string(value) + ")"),
          time(t) {}
    double time;
};

/// The memcapacitance denominator crossed the singular-guard threshold.
class DenominatorNearZero : public Error {
public:
    explicit DenominatorNearZero(double den)
        : Error("memcapacitance denominator near zero (" + std::to_string(den) + " S)") {}
};

/// The memory state drove OTA2 out of its valid transconductance region.
class Gm2Collapse : public Error {
public:
    explicit Gm2Collapse(double gm2)
        : Error("Gm2 collapsed (" + std::to_string(gm2) + " S)") {}
};

/// An analysis kernel was handed fewer samples than it can work with.
class TooFewSamples : public Error {
public:
    using Error::Error;
};

/// Traces passed to a combining operation do not share a time grid.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// A circuit parsed fine but uses wiring the executor does not cover.
class UnsupportedCircuit : public Error {
public:
    using Error::Error;
};

} // namespace memsim
