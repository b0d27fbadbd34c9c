#pragma once

#include "memsim/trace.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace memsim {

// =============================================================================
// Post-processing kernels: hysteresis metrics, spectra, responses
// =============================================================================

struct LoopMetrics {
    /// Largest |q| where the trajectory crosses v = 0 (linear interpolation),
    /// normalized by peak |q|. Near zero for a properly pinched loop, near 1
    /// for an unpinched one. Falls back to the |v| < 1% band when the curve
    /// never crosses v = 0.
    double pinch_metric = 0.0;
    /// Shoelace area of each lobe, split at v-zero crossings. [C*V]
    std::vector<double> lobe_areas;
    /// 1 - R^2 of the least-squares line through the (v, q) points.
    double linearity_residual = 0.0;
    /// Transversal self-intersections of the closed trajectory.
    std::size_t crossing_count = 0;

    double total_lobe_area() const;
};

/// Metrics over the trailing `period` seconds of the trace (channels
/// v_channel/q_channel). Throws TooFewSamples below 64 samples per period.
LoopMetrics loop_metrics(const Trace& trace, double period,
                         const std::string& v_channel = "v_in",
                         const std::string& q_channel = "q");

struct Spectrum {
    std::vector<double> freqs_hz;   // bin k at k/(N*dt)
    std::vector<double> magnitudes; // |X_k|, all N bins
    double bin_width_hz = 0.0;
};

/// DFT magnitudes with the rectangular window. Radix-2 FFT for power-of-two
/// N, direct evaluation otherwise.
Spectrum spectrum(std::span<const double> samples, double dt);

struct SpectrumPeak {
    double freq_hz;
    double magnitude;
};

/// Local maxima of the one-sided spectrum, strongest first.
std::vector<SpectrumPeak> dominant_peaks(const Spectrum& s, std::size_t max_peaks,
                                         double min_relative = 0.0);

/// Runs a system at one frequency for a number of periods and returns a trace
/// with "in" and "out" channels.
using SystemRunner = std::function<Trace(double freq_hz, int periods)>;

/// Steady-state gain in dB at each frequency: drive, settle, then measure the
/// out/in amplitude ratio by synchronous projection over whole periods.
std::vector<double> frequency_response(const SystemRunner& runner, std::span<const double> freqs_hz,
                                       int settle_periods);

struct SigmaPhiLocus {
    bool single_valued = false;
    double max_fold_gap = 0.0; // largest sigma spread found at nearly equal phi
};

/// Single-valuedness of the (phi_in, sigma) locus: sort by phi and look for
/// samples closer than 1e-3 * range(phi) whose sigma differs by more than
/// 2% of range(sigma).
SigmaPhiLocus sigma_phi_locus(const Trace& trace);

struct AttractorSummary {
    std::pair<double, double> terminal_point{0.0, 0.0};
    bool converged = false;
    std::vector<double> dominant_periods; // s
};

/// Convergence of a phase-portrait pair: the trailing-window bounding box
/// must shrink below 1% of the leading-window box. Dominant periods come from
/// the spectrum peaks of the first channel.
AttractorSummary attractor_summary(const Trace& trace, const std::string& channel_a,
                                   const std::string& channel_b);

/// Plain Pearson correlation coefficient.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

/// Pearson correlation maximized over a forward lag of `a` up to max_lag
/// samples; compensates filter group delay when scoring a demodulated signal.
double best_lag_correlation(std::span<const double> a, std::span<const double> b,
                            std::size_t max_lag);

} // namespace memsim
