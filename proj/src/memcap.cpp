#include "memsim/memcap.hpp"

#include "memsim/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace memsim {

double MemcapParams::flux_coefficient() const {
    return gm1() * gm3() / (gm2_initial() * c_int);
}

void MemcapParams::validate() const {
    ota1.validate();
    ota2.validate();
    ota3.validate();
    if (!(c_int > 0.0)) throw std::invalid_argument("MemcapParams: c_int must be positive");
    if (!(c_out > 0.0)) throw std::invalid_argument("MemcapParams: c_out must be positive");
    if (!(gm1() > 0.0) || !(gm3() > 0.0)) {
        throw std::invalid_argument("MemcapParams: Gm1/Gm3 must be positive at bias");
    }
    if (!(gm2_initial() > eps_gm)) {
        throw std::invalid_argument("MemcapParams: Gm2 at initial bias must be positive");
    }
}

MemcapParams make_memcap_params(double v_b1, double v_b2_init, double v_b3, double c_int,
                                double c_out, Topology topology, double k) {
    MemcapParams p;
    p.ota1.k = p.ota2.k = p.ota3.k = k;
    p.ota1.v_bias = v_b1;
    p.ota2.v_bias = v_b2_init;
    p.ota3.v_bias = v_b3;
    p.c_int = c_int;
    p.c_out = c_out;
    p.topology = topology;
    return p;
}

namespace {

// Incremental wiring makes positive flux lower v_b2 (Gm2 falls, C_m grows);
// decremental is the mirror image.
double topology_flux_sign(Topology t) {
    return t == Topology::Incremental ? +1.0 : -1.0;
}

} // namespace

double memcapacitance_ideal(const MemcapParams& p, double phi_in) {
    const double x = p.flux_coefficient();
    double den;
    if (p.convention == SignConvention::Rederived) {
        const double v_b2 = p.ota2.v_bias - topology_flux_sign(p.topology) * x * phi_in;
        den = transconductance(p.ota2, v_b2);
    } else {
        // literal published form; "+" is the incremental operator
        den = p.ota2.k / std::numbers::sqrt2 *
              (p.ota2.v_ss + 2.0 * p.ota2.v_th + topology_flux_sign(p.topology) * x * phi_in);
    }
    if (std::abs(den) < p.eps_den) throw DenominatorNearZero(den);
    return p.c_out * (1.0 + p.gm3() / den);
}

double sinusoid_flux(double amplitude, double omega, double t) {
    if (!(omega > 0.0)) throw std::invalid_argument("sinusoid_flux: omega must be positive");
    return amplitude / omega * std::cos(omega * t - std::numbers::pi / 2.0);
}

double memory_rate(const MemcapParams& p, double v_b2, double v_in) {
    const double gm2 = transconductance(p.ota2, v_b2);
    if (std::abs(gm2) < p.eps_gm || gm2 * p.gm2_initial() < 0.0) {
        throw Gm2Collapse(gm2);
    }
    const double v_a = -(p.gm3() / gm2) * v_in;
    // incremental: dv_b2/dt = +(Gm1/C_int)*V_a, decremental flips OTA1's input
    const double wiring = p.topology == Topology::Incremental ? +1.0 : -1.0;
    return wiring * (p.gm1() / p.c_int) * v_a;
}

double instantaneous_capacitance(const MemcapParams& p, double v_b2) {
    const double gm2 = transconductance(p.ota2, v_b2);
    if (std::abs(gm2) < p.eps_den) throw DenominatorNearZero(gm2);
    return p.c_out * (1.0 + p.gm3() / gm2);
}

StepResult step_structural(const MemcapParams& p, const MemcapState& s, double v_in, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_structural: dt must be positive");

    // previous drive value recovered from the stored charge
    const double c_prev = instantaneous_capacitance(p, s.v_b2);
    const double v_prev = s.q / c_prev;

    auto drive = [&](double frac) { return v_prev + (v_in - v_prev) * frac; };

    const double y = s.v_b2;
    const double k1 = memory_rate(p, y, drive(0.0));
    const double k2 = memory_rate(p, y + 0.5 * dt * k1, drive(0.5));
    const double k3 = memory_rate(p, y + 0.5 * dt * k2, drive(0.5));
    const double k4 = memory_rate(p, y + dt * k3, drive(1.0));

    StepResult r;
    r.state.v_b2 = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    r.state.phi_in = s.phi_in + 0.5 * (v_prev + v_in) * dt;
    r.state.q = instantaneous_capacitance(p, r.state.v_b2) * v_in;
    r.i_in = (r.state.q - s.q) / dt;
    return r;
}

std::complex<double> RcPair::admittance(double omega) const {
    std::complex<double> y(0.0, omega * c);
    if (std::isfinite(r)) y += 1.0 / r;
    return y;
}

NonIdealNetwork NonIdealNetwork::build(const MemcapParams& p, const OtaParasitics& par,
                                       double r_s) {
    NonIdealNetwork n;
    n.r_s = r_s;
    n.c_equ = p.c_int + par.c_out;
    n.z01 = {par.r_out, n.c_equ};
    // internal node: two OTA inputs plus one OTA output in parallel
    double r02 = par.r_out;
    if (std::isfinite(par.r_in)) {
        const double r_ii = par.r_in / 2.0;
        r02 = std::isfinite(par.r_out) ? r_ii * par.r_out / (r_ii + par.r_out) : r_ii;
    }
    n.z02 = {r02, 2.0 * par.c_in + par.c_out};
    n.z03 = {par.r_in, par.c_in};
    return n;
}

std::complex<double> NonIdealNetwork::beta1(const MemcapParams& p, double omega) const {
    if (r_s == 0.0) return {1.0, 0.0};
    const std::complex<double> s(0.0, omega);
    const std::complex<double> y02 = z02.admittance(omega);
    const std::complex<double> y03 = z03.admittance(omega);
    return r_s * (s * p.c_out * (1.0 - p.gm3() / (p.gm2_initial() + y02)) + y03 + 1.0 / r_s);
}

std::complex<double> memcapacitance_nonideal(const MemcapParams& p, const NonIdealNetwork& net,
                                             std::complex<double> gamma, double phi_in,
                                             double omega) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("memcapacitance_nonideal: omega must be positive");
    }
    const std::complex<double> s(0.0, omega);
    const std::complex<double> b1 = net.beta1(p, omega);

    // integrator transfer correction: ideal 1/(s*C_int) becomes Z01
    const std::complex<double> y01 = net.z01.admittance(omega);
    const std::complex<double> rho = s * p.c_int / y01;

    const std::complex<double> flux_term =
        p.flux_coefficient() * phi_in * gamma * rho / b1;

    const double k_term = p.ota2.k / std::numbers::sqrt2;
    std::complex<double> den;
    if (p.convention == SignConvention::Rederived) {
        const std::complex<double> v_b2 =
            p.ota2.v_bias - topology_flux_sign(p.topology) * flux_term;
        den = k_term * (v_b2 - p.ota2.v_ss - 2.0 * p.ota2.v_th);
    } else {
        den = k_term * (p.ota2.v_ss + 2.0 * p.ota2.v_th +
                        topology_flux_sign(p.topology) * flux_term);
    }
    if (std::abs(den) < p.eps_den) throw DenominatorNearZero(std::abs(den));

    const std::complex<double> leakage = net.z03.admittance(omega) / b1;
    return leakage + s * p.c_out / b1 * (1.0 + p.gm3() / den);
}

Trace parallel_compose(std::span<const Trace> traces) {
    if (traces.empty()) throw GridMismatch("parallel_compose: no traces");
    const Trace& first = traces.front();
    const auto& v0 = first.channel("v_in");
    for (const Trace& t : traces) {
        if (t.size() != first.size() || t.dt() != first.dt() || t.t0() != first.t0()) {
            throw GridMismatch("parallel_compose: time grids differ");
        }
        const auto& v = t.channel("v_in");
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] != v0[i]) {
                throw GridMismatch("parallel_compose: v_in channels differ at sample " +
                                   std::to_string(i));
            }
        }
    }

    std::vector<double> q_sum(first.size(), 0.0);
    for (const Trace& t : traces) {
        const auto& q = t.channel("q");
        for (std::size_t i = 0; i < q.size(); ++i) q_sum[i] += q[i];
    }

    Trace out(first.t0(), first.dt(), first.size());
    out.add_channel("v_in", v0);
    out.add_channel("q", q_sum);
    out.add_channel("sigma", running_integral(out.channel("q"), first.dt()));
    return out;
}

std::vector<double> extract_memcapacitance_from_pulse(const Trace& trace,
                                                      double pulse_amplitude) {
    if (pulse_amplitude == 0.0) {
        throw std::invalid_argument("extract_memcapacitance_from_pulse: zero amplitude");
    }
    const auto& v = trace.channel("v_in");
    const auto& q = trace.channel("q");

    const double tol = 0.01 * std::abs(pulse_amplitude);
    std::vector<double> c_m(v.size(), 0.0);
    double held = 0.0;
    bool seeded = false;
    std::size_t first_on = v.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i] - pulse_amplitude) <= tol) {
            held = q[i] / pulse_amplitude;
            if (!seeded) {
                seeded = true;
                first_on = i;
            }
        }
        c_m[i] = held;
    }
    // before the first ON interval, hold its opening value backwards
    if (seeded) {
        for (std::size_t i = 0; i < first_on; ++i) c_m[i] = q[first_on] / pulse_amplitude;
    }
    return c_m;
}

} // namespace memsim
