#include "memsim/ota.hpp"

#include <cmath>
#include <stdexcept>

namespace memsim {

OtaParasitics OtaParasitics::typical_cmos() {
    OtaParasitics p;
    p.r_in = std::numeric_limits<double>::infinity();
    p.c_in = 50e-15;
    p.r_out = 1e6;
    p.c_out = 100e-15;
    return p;
}

void OtaParams::validate() const {
    if (!(v_dd > v_ss)) throw std::invalid_argument("OtaParams: V_dd must exceed V_ss");
    if (!(v_th > 0.0)) throw std::invalid_argument("OtaParams: V_th must be positive");
    if (!(k > 0.0)) throw std::invalid_argument("OtaParams: k must be positive");
    if (!(omega_a > 0.0)) throw std::invalid_argument("OtaParams: omega_a must be positive");
    if (tau < 0.0) throw std::invalid_argument("OtaParams: tau must be non-negative");
    if (parasitics.r_in < 0.0 || parasitics.r_out < 0.0 || parasitics.c_in < 0.0 ||
        parasitics.c_out < 0.0) {
        throw std::invalid_argument("OtaParams: negative parasitic");
    }
}

double OtaParams::gm0() const { return transconductance(*this, v_bias); }

double transconductance(const OtaParams& p, double v_bias) {
    if (!std::isfinite(v_bias)) {
        throw std::invalid_argument("transconductance: non-finite bias");
    }
    return p.k / std::numbers::sqrt2 * (v_bias - p.v_ss - 2.0 * p.v_th);
}

double output_current(double gm, double v_plus, double v_minus, int polarity) {
    return static_cast<double>(polarity) * gm * (v_plus - v_minus);
}

std::complex<double> gain_coefficient(const OtaParams& p, double omega, GainRegime regime) {
    const std::complex<double> s(0.0, omega);
    std::complex<double> gamma = p.omega_a / (s + p.omega_a);
    if (regime == GainRegime::High) {
        gamma *= std::exp(std::complex<double>(0.0, -omega * p.tau));
    }
    return gamma;
}

GmFilter::GmFilter(double gm0, double omega_a, double tau, double dt)
    : gm0_(gm0), omega_a_(omega_a), dt_(dt) {
    if (dt <= 0.0) throw std::invalid_argument("GmFilter: dt must be positive");
    if (tau < 0.0) throw std::invalid_argument("GmFilter: tau must be non-negative");
    bypass_ = !std::isfinite(omega_a_);
    if (!bypass_) {
        if (omega_a_ <= 0.0) throw std::invalid_argument("GmFilter: omega_a must be positive");
        if (dt > 0.1 / omega_a_) {
            throw std::invalid_argument("GmFilter: dt too coarse for omega_a (need dt <= 0.1/omega_a)");
        }
        alpha_ = std::exp(-omega_a_ * dt);
    } else {
        alpha_ = 0.0;
    }
    const auto n_delay = static_cast<std::size_t>(std::llround(tau / dt));
    delay_.assign(n_delay, 0.0);
}

double GmFilter::step(double v_diff) {
    const double u = gm0_ * v_diff;
    double y;
    if (bypass_) {
        y = u;
    } else {
        // exact ZOH update of dy/dt = omega_a*(u - y)
        state_ = u + (state_ - u) * alpha_;
        y = state_;
    }
    if (delay_.empty()) return y;
    const double out = delay_[head_];
    delay_[head_] = y;
    head_ = (head_ + 1) % delay_.size();
    return out;
}

void GmFilter::reset() {
    state_ = 0.0;
    head_ = 0;
    std::fill(delay_.begin(), delay_.end(), 0.0);
}

} // namespace memsim
