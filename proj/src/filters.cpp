#include "memsim/filters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace memsim {

BiquadFilter::BiquadFilter(const BehavioralFilter& spec, double sample_rate_hz) {
    if (!(spec.freq_hz > 0.0) || !(spec.q > 0.0)) {
        throw std::invalid_argument("BiquadFilter: frequency and Q must be positive");
    }
    if (!(spec.freq_hz < 0.5 * sample_rate_hz)) {
        throw std::invalid_argument("BiquadFilter: corner above Nyquist");
    }
    const double w0 = 2.0 * std::numbers::pi * spec.freq_hz / sample_rate_hz;
    const double alpha = std::sin(w0) / (2.0 * spec.q);
    const double cw = std::cos(w0);
    double b0, b1, b2;
    if (spec.kind == FilterKind::Bandpass2) {
        b0 = alpha;
        b1 = 0.0;
        b2 = -alpha;
    } else {
        b0 = (1.0 - cw) / 2.0;
        b1 = 1.0 - cw;
        b2 = (1.0 - cw) / 2.0;
    }
    const double a0 = 1.0 + alpha;
    b0_ = b0 / a0;
    b1_ = b1 / a0;
    b2_ = b2 / a0;
    a1_ = -2.0 * cw / a0;
    a2_ = (1.0 - alpha) / a0;
}

double BiquadFilter::step(double x) {
    const double y = b0_ * x + b1_ * x1_ + b2_ * x2_ - a1_ * y1_ - a2_ * y2_;
    x2_ = x1_;
    x1_ = x;
    y2_ = y1_;
    y1_ = y;
    return y;
}

std::vector<double> BiquadFilter::process(std::span<const double> x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = step(x[i]);
    return out;
}

void BiquadFilter::reset() { x1_ = x2_ = y1_ = y2_ = 0.0; }

} // namespace memsim
