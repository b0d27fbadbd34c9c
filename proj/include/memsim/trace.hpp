#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace memsim {

// =============================================================================
// Trace: uniformly sampled, named time-series channels
// =============================================================================
// All channels share one time grid; the equal-length invariant is enforced on
// construction and by every mutator. Conventional channel names:
//   v_in [V], i_in [A], q [C], phi_in [Wb], sigma [C*s], c_m [F]

class Trace {
public:
    Trace() = default;
    Trace(double t0, double dt, std::size_t length);

    double t0() const { return t0_; }
    double dt() const { return dt_; }
    std::size_t size() const { return length_; }
    double time(std::size_t i) const { return t0_ + dt_ * static_cast<double>(i); }

    /// Adds a channel; throws GridMismatch when the length disagrees or the
    /// name already exists.
    void add_channel(std::string name, std::vector<double> samples);

    bool has_channel(std::string_view name) const;
    const std::vector<double>& channel(std::string_view name) const;
    std::vector<double>& channel_mut(std::string_view name);
    const std::vector<std::string>& channel_names() const { return names_; }

    /// Sub-trace of the last n samples (same channels).
    Trace tail(std::size_t n) const;

    /// CSV: header `t,<channel>,...`, one row per sample, shortest
    /// round-trip number formatting.
    void write_csv(std::ostream& os) const;

private:
    double t0_ = 0.0;
    double dt_ = 0.0;
    std::size_t length_ = 0;
    std::vector<std::string> names_;
    std::vector<std::vector<double>> data_;
};

/// Trapezoidal cumulative integral; first element 0. Rejects non-finite
/// samples and non-positive dt.
std::vector<double> running_integral(std::span<const double> samples, double dt);

} // namespace memsim
