#pragma once

#include "memsim/ota.hpp"
#include "memsim/trace.hpp"

#include <complex>
#include <span>
#include <vector>

namespace memsim {

// =============================================================================
// OTA-based memcapacitor emulator
// =============================================================================
// Three OTAs and two capacitors. OTA3 senses the input voltage, OTA2 closes
// the loop at the internal node (V_a = -(Gm3/Gm2) * V_in), OTA1 charges the
// integrator capacitor C_int whose voltage V_B2 biases OTA2. The series
// capacitor C_out carries the input charge:
//
//   q = C_out * (V_in - V_a) = C_out * (1 + Gm3/Gm2(v_b2)) * V_in
//
// Accumulated input flux moves v_b2 and with it the instantaneous
// memcapacitance. The switch topology selects the drift direction.

/// Table-1 switch wiring. Incremental grows the memcapacitance with
/// accumulated positive flux (w-x, y-z); decremental shrinks it (w-z, y-x).
enum class Topology { Incremental, Decremental };

/// Closed-form flavor. `Rederived` (default) keeps every Gm on its Eq.-2
/// sign and is consistent with the structural model; `AsWritten` evaluates
/// the literal published denominator (V_ss + 2*V_th -/+ flux term) for paper
/// comparison.
enum class SignConvention { Rederived, AsWritten };

struct MemcapParams {
    OtaParams ota1; // bias V_B1
    OtaParams ota2; // bias field holds V_B2(t=0)
    OtaParams ota3; // bias V_B3
    double c_int = 240e-9;  // F, integrator capacitor (paper's C_1)
    double c_out = 500e-12; // F, series input capacitor (paper's C_3)
    double c_aux = 500e-9;  // F, carried as data; unused by the device equations
    Topology topology = Topology::Decremental;
    SignConvention convention = SignConvention::Rederived;
    double eps_den = 1e-9; // S, singular-guard on closed-form denominators
    double eps_gm = 1e-9;  // S, collapse guard on the dynamic Gm2

    double gm1() const { return ota1.gm0(); }
    double gm2_initial() const { return ota2.gm0(); }
    double gm3() const { return ota3.gm0(); }

    /// Flux coefficient Gm1*Gm3 / (Gm2(0) * C_int)  [V/Wb].
    double flux_coefficient() const;

    /// Throws std::invalid_argument when capacitances are non-positive or
    /// any OTA sits at a non-positive operating-point Gm.
    void validate() const;
};

/// Convenience builder: shared process corner (k, rails, V_th), one bias per
/// OTA. ota2's bias is the initial integrator voltage V_B2(0).
MemcapParams make_memcap_params(double v_b1, double v_b2_init, double v_b3,
                                double c_int, double c_out, Topology topology,
                                double k = 1e-3);

struct MemcapState {
    double v_b2 = 0.5; // V, voltage on C_int (the memory)
    double phi_in = 0.0; // Wb, running input flux
    double q = 0.0;      // C, instantaneous series-capacitor charge
};

// -----------------------------------------------------------------------------
// Closed-form model
// -----------------------------------------------------------------------------

/// Memcapacitance as a function of accumulated flux. Throws
/// DenominatorNearZero when the Gm-denominator magnitude drops below eps_den.
double memcapacitance_ideal(const MemcapParams& p, double phi_in);

/// Flux of a sinusoidal drive per the published convention:
/// (A_m/omega) * cos(omega*t - pi/2).
double sinusoid_flux(double amplitude, double omega, double t);

// -----------------------------------------------------------------------------
// Structural model (node equations, dynamic Gm2)
// -----------------------------------------------------------------------------

/// dv_b2/dt for the current memory voltage and drive. Throws Gm2Collapse when
/// Gm2 leaves its valid region.
double memory_rate(const MemcapParams& p, double v_b2, double v_in);

/// Instantaneous capacitance C_out * (1 + Gm3/Gm2(v_b2)).
double instantaneous_capacitance(const MemcapParams& p, double v_b2);

struct StepResult {
    MemcapState state;
    double i_in = 0.0; // A
};

/// Advance one step of length dt toward drive value v_in (sampled at the end
/// of the step; the drive is reconstructed linearly across the step). RK4 on
/// v_b2, charge from the node equations, i_in = dq/dt, trapezoidal flux.
StepResult step_structural(const MemcapParams& p, const MemcapState& s, double v_in, double dt);

// -----------------------------------------------------------------------------
// Non-ideal model (gain roll-off + device parasitics)
// -----------------------------------------------------------------------------

/// One node's R || C equivalent; r may be infinite.
struct RcPair {
    double r = std::numeric_limits<double>::infinity(); // Ohm
    double c = 0.0;                                     // F
    std::complex<double> admittance(double omega) const;
};

struct NonIdealNetwork {
    RcPair z01; // integrator node: OTA1 output resistance || (C_int + C_o)
    RcPair z02; // internal node: input/output parasitics of the loop OTAs
    RcPair z03; // emulator input node
    double r_s = 10.0; // Ohm, source resistance
    double c_equ = 0.0; // F, C_int plus OTA1 output parasitic

    /// Assemble node impedances from one parasitic set applied to all OTAs.
    static NonIdealNetwork build(const MemcapParams& p, const OtaParasitics& par, double r_s);

    /// Loading factor; exactly 1 when r_s = 0 and -> 1 for vanishing
    /// parasitics.
    std::complex<double> beta1(const MemcapParams& p, double omega) const;
};

/// Input admittance I_in/V_in [S] of the non-ideal emulator at frequency
/// omega with accumulated flux phi_in and OTA gain coefficient gamma.
/// Reduces exactly to j*omega*memcapacitance_ideal in the ideal limit.
std::complex<double> memcapacitance_nonideal(const MemcapParams& p, const NonIdealNetwork& net,
                                             std::complex<double> gamma, double phi_in,
                                             double omega);

// -----------------------------------------------------------------------------
// Composition and extraction
// -----------------------------------------------------------------------------

/// Parallel combination: charge channels add, the common voltage is
/// unchanged. Traces must share grid and v_in samples exactly; throws
/// GridMismatch otherwise. The result carries v_in, q and sigma.
Trace parallel_compose(std::span<const Trace> traces);

/// Memcapacitance-vs-time reconstruction from a pulse-driven trace:
/// q/amplitude inside fully-on intervals, last value held elsewhere (the
/// straight-line join between pulses).
std::vector<double> extract_memcapacitance_from_pulse(const Trace& trace, double pulse_amplitude);

} // namespace memsim
