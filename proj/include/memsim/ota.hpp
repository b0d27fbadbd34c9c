#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

namespace memsim {

// =============================================================================
// Behavioral OTA model
// =============================================================================
// Ideal transfer: I_o = +/- Gm * (V+ - V-), with Gm electronically tuned by
// the bias voltage: Gm = (k/sqrt(2)) * (V_B - V_ss - 2*V_th).
// Non-ideal additions: single-pole gain roll-off with corner omega_a, excess
// phase as a pure delay tau, and terminal parasitics.

/// Terminal parasitics; infinity() marks an absent (infinite) resistance.
struct OtaParasitics {
    double r_in = std::numeric_limits<double>::infinity();  // Ohm, per port
    double c_in = 0.0;                                      // F, per port
    double r_out = std::numeric_limits<double>::infinity(); // Ohm
    double c_out = 0.0;                                     // F

    static OtaParasitics ideal() { return {}; }
    /// R_o = 1 MOhm, C_i = 50 fF, C_o = 100 fF: typical CMOS values used in
    /// the non-ideal sensitivity checks.
    static OtaParasitics typical_cmos();
};

struct OtaParams {
    double k = 1e-3;    // A/V^2, device constant (mu_n*Cox*W/L); configured, not fab data
    double v_ss = -1.2; // V
    double v_dd = 1.2;  // V
    double v_th = 0.45; // V
    double v_bias = 0.6; // V
    double omega_a = 2.0 * std::numbers::pi * 1e8; // rad/s, first corner
    double tau = 0.0;   // s, excess-phase delay (1.25 ns typical when enabled)
    OtaParasitics parasitics;

    /// Throws std::invalid_argument on a broken invariant (V_dd <= V_ss,
    /// non-positive k/V_th/omega_a, negative tau).
    void validate() const;

    /// Gm at the configured bias.
    double gm0() const;
};

enum class GainRegime { LowMid, High };

/// Eq.-2 transconductance; signed, the caller decides validity.
double transconductance(const OtaParams& p, double v_bias);

/// polarity * gm * (v_plus - v_minus).
double output_current(double gm, double v_plus, double v_minus, int polarity);

/// Dimensionless gain coefficient gamma(omega): omega_a/(j*omega + omega_a),
/// times e^{-j*omega*tau} in the high regime. |gamma(0)| = 1.
std::complex<double> gain_coefficient(const OtaParams& p, double omega, GainRegime regime);

// =============================================================================
// Time-domain realization of Gm(s) = Gm0 * omega_a / (s + omega_a) * e^{-s*tau}
// =============================================================================
// Exact-exponential one-pole update plus an integer-sample delay line
// (tau rounded to the nearest multiple of dt, error <= dt/2). An infinite
// omega_a bypasses the filter and reproduces the ideal output sample for
// sample.

class GmFilter {
public:
    /// dt must be positive and, for accuracy, dt <= 0.1/omega_a.
    GmFilter(double gm0, double omega_a, double tau, double dt);

    /// One input sample in, one (filtered, delayed) output current out.
    double step(double v_diff);

    void reset();
    double dt() const { return dt_; }

private:
    double gm0_;
    double omega_a_;
    double dt_;
    double alpha_; // exp(-omega_a*dt)
    bool bypass_;
    double state_ = 0.0;
    std::vector<double> delay_;
    std::size_t head_ = 0;
};

} // namespace memsim
