#include "memsim/waveform.hpp"

#include <limits>
#include <stdexcept>

namespace memsim {

WaveformSource WaveformSource::sine(double amplitude, double omega, double phase) {
    WaveformSource s;
    s.kind_ = WaveformKind::Sine;
    s.components_ = {{amplitude, omega, phase}};
    return s;
}

WaveformSource WaveformSource::sine_hz(double amplitude, double freq_hz, double phase) {
    return sine(amplitude, 2.0 * std::numbers::pi * freq_hz, phase);
}

WaveformSource WaveformSource::pulse(const PulseParams& p) {
    if (p.period <= 0.0 || p.width <= 0.0) {
        throw std::invalid_argument("pulse: period and width must be positive");
    }
    if (p.width > p.period) {
        throw std::invalid_argument("pulse: width exceeds period");
    }
    if (p.rise < 0.0 || p.fall < 0.0 || p.rise + p.fall > p.width) {
        throw std::invalid_argument("pulse: bad rise/fall times");
    }
    WaveformSource s;
    s.kind_ = WaveformKind::Pulse;
    s.pulse_ = p;
    return s;
}

WaveformSource WaveformSource::sum_of_sines(std::vector<SineComponent> components) {
    WaveformSource s;
    s.kind_ = WaveformKind::SumOfSines;
    s.components_ = std::move(components);
    return s;
}

WaveformSource WaveformSource::constant(double value) {
    WaveformSource s;
    s.kind_ = WaveformKind::Constant;
    s.constant_ = value;
    return s;
}

namespace {

double pulse_value(const PulseParams& p, double t) {
    if (t < p.delay) return 0.0;
    const double u = std::fmod(t - p.delay, p.period);
    if (u < p.rise) {
        return p.rise > 0.0 ? p.high * u / p.rise : p.high;
    }
    if (u < p.width - p.fall) return p.high;
    if (u < p.width) {
        return p.fall > 0.0 ? p.high * (p.width - u) / p.fall : 0.0;
    }
    return 0.0;
}

double pulse_slope(const PulseParams& p, double t) {
    if (t < p.delay) return 0.0;
    const double u = std::fmod(t - p.delay, p.period);
    if (u < p.rise) return p.rise > 0.0 ? p.high / p.rise : 0.0;
    if (u < p.width - p.fall) return 0.0;
    if (u < p.width) return p.fall > 0.0 ? -p.high / p.fall : 0.0;
    return 0.0;
}

} // namespace

double WaveformSource::eval(double t) const {
    switch (kind_) {
    case WaveformKind::Constant:
        return constant_;
    case WaveformKind::Pulse:
        return pulse_value(pulse_, t);
    case WaveformKind::Sine:
    case WaveformKind::SumOfSines: {
        double v = 0.0;
        for (const auto& c : components_) {
            v += c.amplitude * std::sin(c.omega * t + c.phase);
        }
        return v;
    }
    }
    return 0.0;
}

double WaveformSource::derivative(double t) const {
    switch (kind_) {
    case WaveformKind::Constant:
        return 0.0;
    case WaveformKind::Pulse:
        return pulse_slope(pulse_, t);
    case WaveformKind::Sine:
    case WaveformKind::SumOfSines: {
        double v = 0.0;
        for (const auto& c : components_) {
            v += c.amplitude * c.omega * std::cos(c.omega * t + c.phase);
        }
        return v;
    }
    }
    return 0.0;
}

double WaveformSource::fastest_period() const {
    switch (kind_) {
    case WaveformKind::Constant:
        return 0.0;
    case WaveformKind::Pulse:
        return pulse_.period;
    case WaveformKind::Sine:
    case WaveformKind::SumOfSines: {
        double omega_max = 0.0;
        for (const auto& c : components_) omega_max = std::max(omega_max, c.omega);
        return omega_max > 0.0 ? 2.0 * std::numbers::pi / omega_max : 0.0;
    }
    }
    return 0.0;
}

double WaveformSource::min_edge_time() const {
    if (kind_ != WaveformKind::Pulse) return std::numeric_limits<double>::infinity();
    double e = std::numeric_limits<double>::infinity();
    if (pulse_.rise > 0.0) e = std::min(e, pulse_.rise);
    if (pulse_.fall > 0.0) e = std::min(e, pulse_.fall);
    return e;
}

} // namespace memsim
