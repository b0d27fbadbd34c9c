#pragma once

#include <span>
#include <vector>

namespace memsim {

// Behavioral second-order filters used by the application scenarios. They
// stand in for the published component-level filter whose R/C values do not
// match its stated corner; the corner and Q parameterize them directly.

enum class FilterKind { Lowpass2, Bandpass2 };

struct BehavioralFilter {
    FilterKind kind = FilterKind::Lowpass2;
    double freq_hz = 0.0; // cutoff (lowpass) or center (bandpass)
    double q = 0.70710678118654752; // 1/sqrt(2)
};

/// Discrete biquad (RBJ cookbook, bilinear transform) realizing a
/// BehavioralFilter at a fixed sample rate.
class BiquadFilter {
public:
    BiquadFilter(const BehavioralFilter& spec, double sample_rate_hz);

    double step(double x);
    std::vector<double> process(std::span<const double> x);
    void reset();

private:
    double b0_, b1_, b2_, a1_, a2_;
    double x1_ = 0.0, x2_ = 0.0, y1_ = 0.0, y2_ = 0.0;
};

} // namespace memsim
