#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace memsim {

// =============================================================================
// Waveform sources
// =============================================================================
// Evaluation is a pure function of time: same t always yields the same value.

enum class WaveformKind { Sine, Pulse, SumOfSines, Constant };

struct SineComponent {
    double amplitude = 0.0; // V
    double omega = 0.0;     // rad/s
    double phase = 0.0;     // rad
};

/// Finite rise/fall pulse train. Edges are linear ramps. The default 15 ns
/// edges apply when a scenario does not say otherwise.
struct PulseParams {
    double high = 0.0;      // V
    double period = 0.0;    // s
    double width = 0.0;     // s, measured rise-start to fall-end
    double rise = 15e-9;    // s
    double fall = 15e-9;    // s
    double delay = 0.0;     // s
};

class WaveformSource {
public:
    static WaveformSource sine(double amplitude, double omega, double phase = 0.0);
    static WaveformSource sine_hz(double amplitude, double freq_hz, double phase = 0.0);
    /// Throws std::invalid_argument unless t_w <= t_p, t_r,t_f >= 0, t_r+t_f <= t_w.
    static WaveformSource pulse(const PulseParams& p);
    static WaveformSource sum_of_sines(std::vector<SineComponent> components);
    static WaveformSource constant(double value);

    double eval(double t) const;

    /// dV/dt at t; piecewise-constant slopes inside pulse edges.
    double derivative(double t) const;

    WaveformKind kind() const { return kind_; }
    const PulseParams& pulse_params() const { return pulse_; }
    const std::vector<SineComponent>& components() const { return components_; }

    /// Period of the fastest component, or 0 for constant sources. Used to
    /// derive default solver steps.
    double fastest_period() const;

    /// True when the source contains ramped pulse edges (constrains dt).
    double min_edge_time() const;

private:
    WaveformKind kind_ = WaveformKind::Constant;
    std::vector<SineComponent> components_; // sine / sum-of-sines
    PulseParams pulse_;
    double constant_ = 0.0;
};

/// Instantaneous source voltage at time t (total function for t >= 0).
inline double eval_waveform(const WaveformSource& src, double t) { return src.eval(t); }

} // namespace memsim
