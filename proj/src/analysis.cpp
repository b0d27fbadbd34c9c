#include "memsim/analysis.hpp"

#include "memsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

namespace memsim {

double LoopMetrics::total_lobe_area() const {
    return std::accumulate(lobe_areas.begin(), lobe_areas.end(), 0.0);
}

namespace {

struct Crossing {
    std::size_t index; // crossing lies between samples index and index+1 (mod n)
    double q_at_zero;
};

// v-zero crossings of the closed curve, with linear interpolation
std::vector<Crossing> find_crossings(std::span<const double> v, std::span<const double> q) {
    const std::size_t n = v.size();
    std::vector<Crossing> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        if ((v[i] > 0.0) != (v[j] > 0.0) && v[i] != v[j]) {
            const double a = v[i] / (v[i] - v[j]);
            out.push_back({i, q[i] + a * (q[j] - q[i])});
        }
    }
    return out;
}

double shoelace_lobe(std::span<const double> v, std::span<const double> q, std::size_t i0,
                     double q0, std::size_t i1, double q1) {
    const std::size_t n = v.size();
    // polygon: (0, q0), samples strictly between the crossings, (0, q1)
    std::vector<double> xs{0.0};
    std::vector<double> ys{q0};
    std::size_t i = (i0 + 1) % n;
    while (true) {
        xs.push_back(v[i]);
        ys.push_back(q[i]);
        if (i == i1) break;
        i = (i + 1) % n;
    }
    xs.push_back(0.0);
    ys.push_back(q1);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        acc += xs[k] * ys[k + 1] - xs[k + 1] * ys[k];
    }
    // closing edge back to the first vertex
    acc += xs.back() * ys.front() - xs.front() * ys.back();
    return 0.5 * std::abs(acc);
}

int orientation(double ax, double ay, double bx, double by, double cx, double cy) {
    const double d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    if (d > 0.0) return 1;
    if (d < 0.0) return -1;
    return 0;
}

bool proper_intersection(double p1x, double p1y, double p2x, double p2y, double p3x, double p3y,
                         double p4x, double p4y) {
    const int o1 = orientation(p1x, p1y, p2x, p2y, p3x, p3y);
    const int o2 = orientation(p1x, p1y, p2x, p2y, p4x, p4y);
    const int o3 = orientation(p3x, p3y, p4x, p4y, p1x, p1y);
    const int o4 = orientation(p3x, p3y, p4x, p4y, p2x, p2y);
    return o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 && o1 != o2 && o3 != o4;
}

std::size_t count_self_crossings(std::span<const double> v, std::span<const double> q) {
    const std::size_t n = v.size();
    if (n < 4) return 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t i2 = (i + 1) % n;
        for (std::size_t j = i + 2; j < n; ++j) {
            const std::size_t j2 = (j + 1) % n;
            if (j2 == i) continue; // wrap adjacency
            if (proper_intersection(v[i], q[i], v[i2], q[i2], v[j], q[j], v[j2], q[j2])) {
                ++count;
            }
        }
    }
    return count;
}

} // namespace

LoopMetrics loop_metrics(const Trace& trace, double period, const std::string& v_channel,
                         const std::string& q_channel) {
    const auto m = static_cast<std::size_t>(std::llround(period / trace.dt()));
    if (m < 64) throw TooFewSamples("loop_metrics: fewer than 64 samples per period");
    if (m > trace.size()) throw TooFewSamples("loop_metrics: trace shorter than one period");

    const Trace tail = trace.tail(m);
    const auto& v = tail.channel(v_channel);
    const auto& q = tail.channel(q_channel);

    LoopMetrics out;
    double v_max = 0.0, q_max = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        v_max = std::max(v_max, std::abs(v[i]));
        q_max = std::max(q_max, std::abs(q[i]));
    }

    const auto crossings = find_crossings(v, q);
    if (q_max > 0.0) {
        if (!crossings.empty()) {
            double worst = 0.0;
            for (const auto& c : crossings) worst = std::max(worst, std::abs(c.q_at_zero));
            out.pinch_metric = worst / q_max;
        } else if (v_max > 0.0) {
            double worst = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (std::abs(v[i]) < 0.01 * v_max) worst = std::max(worst, std::abs(q[i]));
            }
            out.pinch_metric = worst / q_max;
        }
    }

    if (crossings.size() >= 2) {
        for (std::size_t c = 0; c < crossings.size(); ++c) {
            const auto& c0 = crossings[c];
            const auto& c1 = crossings[(c + 1) % crossings.size()];
            out.lobe_areas.push_back(shoelace_lobe(v, q, c0.index, c0.q_at_zero, c1.index,
                                                   c1.q_at_zero));
        }
    }

    // least-squares line q = a*v + b
    double sv = 0.0, sq = 0.0, svv = 0.0, svq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sv += v[i];
        sq += q[i];
        svv += v[i] * v[i];
        svq += v[i] * q[i];
    }
    const double nm = static_cast<double>(m);
    const double det = nm * svv - sv * sv;
    double ss_res = 0.0, ss_tot = 0.0;
    const double q_mean = sq / nm;
    if (det != 0.0) {
        const double a = (nm * svq - sv * sq) / det;
        const double b = (sq - a * sv) / nm;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = q[i] - (a * v[i] + b);
            ss_res += r * r;
            const double d = q[i] - q_mean;
            ss_tot += d * d;
        }
    }
    out.linearity_residual = ss_tot > 0.0 ? std::clamp(ss_res / ss_tot, 0.0, 1.0) : 0.0;

    out.crossing_count = count_self_crossings(v, q);
    return out;
}

// -----------------------------------------------------------------------------
// Spectrum
// -----------------------------------------------------------------------------

namespace {

void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> t = a[i + k + len / 2] * w;
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
                w *= wl;
            }
        }
    }
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace

Spectrum spectrum(std::span<const double> samples, double dt) {
    const std::size_t n = samples.size();
    if (n < 2) throw TooFewSamples("spectrum: need at least 2 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("spectrum: dt must be positive");

    Spectrum s;
    s.bin_width_hz = 1.0 / (static_cast<double>(n) * dt);
    s.freqs_hz.resize(n);
    s.magnitudes.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        s.freqs_hz[k] = static_cast<double>(k) * s.bin_width_hz;
    }

    if (is_pow2(n)) {
        std::vector<std::complex<double>> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = samples[i];
        fft_radix2(a);
        for (std::size_t k = 0; k < n; ++k) s.magnitudes[k] = std::abs(a[k]);
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            double re = 0.0, im = 0.0;
            const double w = -2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double ang = w * static_cast<double>(i);
                re += samples[i] * std::cos(ang);
                im += samples[i] * std::sin(ang);
            }
            s.magnitudes[k] = std::hypot(re, im);
        }
    }
    return s;
}

std::vector<SpectrumPeak> dominant_peaks(const Spectrum& s, std::size_t max_peaks,
                                         double min_relative) {
    const std::size_t half = s.magnitudes.size() / 2;
    double peak_mag = 0.0;
    for (std::size_t k = 1; k < half; ++k) peak_mag = std::max(peak_mag, s.magnitudes[k]);

    std::vector<SpectrumPeak> peaks;
    for (std::size_t k = 1; k + 1 < half + 1 && k < s.magnitudes.size() - 1; ++k) {
        const double m = s.magnitudes[k];
        if (m >= s.magnitudes[k - 1] && m > s.magnitudes[k + 1] && m >= min_relative * peak_mag &&
            m > 0.0) {
            peaks.push_back({s.freqs_hz[k], m});
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const SpectrumPeak& a, const SpectrumPeak& b) { return a.magnitude > b.magnitude; });
    if (peaks.size() > max_peaks) peaks.resize(max_peaks);
    return peaks;
}

// -----------------------------------------------------------------------------
// Frequency response
// -----------------------------------------------------------------------------

namespace {

double synchronous_amplitude(const Trace& trace, const std::string& name, double freq_hz,
                             std::size_t samples) {
    const auto& y = trace.channel(name);
    const std::size_t start = y.size() - samples;
    double mean = 0.0;
    for (std::size_t i = start; i < y.size(); ++i) mean += y[i];
    mean /= static_cast<double>(samples);

    const double omega = 2.0 * std::numbers::pi * freq_hz;
    double cs = 0.0, sn = 0.0;
    for (std::size_t i = start; i < y.size(); ++i) {
        const double t = trace.time(i);
        const double d = y[i] - mean;
        cs += d * std::cos(omega * t);
        sn += d * std::sin(omega * t);
    }
    const double scale = 2.0 / static_cast<double>(samples);
    return std::hypot(scale * cs, scale * sn);
}

} // namespace

std::vector<double> frequency_response(const SystemRunner& runner,
                                       std::span<const double> freqs_hz, int settle_periods) {
    constexpr int kMeasurePeriods = 4;
    std::vector<double> out;
    out.reserve(freqs_hz.size());
    for (double f : freqs_hz) {
        if (!(f > 0.0)) throw std::invalid_argument("frequency_response: frequency must be positive");
        const Trace trace = runner(f, settle_periods + kMeasurePeriods);
        const auto per_period = static_cast<std::size_t>(std::llround(1.0 / (f * trace.dt())));
        const std::size_t samples = std::min(trace.size(), per_period * kMeasurePeriods);
        const double a_in = synchronous_amplitude(trace, "in", f, samples);
        const double a_out = synchronous_amplitude(trace, "out", f, samples);
        out.push_back(20.0 * std::log10(a_out / a_in));
    }
    return out;
}

// -----------------------------------------------------------------------------
// Sigma-Phi locus
// -----------------------------------------------------------------------------

SigmaPhiLocus sigma_phi_locus(const Trace& trace) {
    const auto& phi = trace.channel("phi_in");
    const auto& sigma = trace.channel("sigma");
    const std::size_t n = phi.size();
    if (n < 64) throw TooFewSamples("sigma_phi_locus: need at least 64 samples");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return phi[a] < phi[b]; });

    const double phi_range = phi[order.back()] - phi[order.front()];
    auto [sig_min_it, sig_max_it] = std::minmax_element(sigma.begin(), sigma.end());
    const double sig_range = *sig_max_it - *sig_min_it;

    const double phi_eps = 1e-3 * phi_range;
    const double sig_eps = 0.02 * sig_range;

    SigmaPhiLocus out;
    std::size_t lo = 0;
    for (std::size_t hi = 1; hi < n; ++hi) {
        while (phi[order[hi]] - phi[order[lo]] > phi_eps) ++lo;
        for (std::size_t j = lo; j < hi; ++j) {
            const double gap = std::abs(sigma[order[hi]] - sigma[order[j]]);
            out.max_fold_gap = std::max(out.max_fold_gap, gap);
        }
    }
    out.single_valued = sig_range == 0.0 || out.max_fold_gap <= sig_eps;
    return out;
}

// -----------------------------------------------------------------------------
// Attractor summary
// -----------------------------------------------------------------------------

namespace {

double window_diagonal(std::span<const double> a, std::span<const double> b) {
    const auto [a_min, a_max] = std::minmax_element(a.begin(), a.end());
    const auto [b_min, b_max] = std::minmax_element(b.begin(), b.end());
    return std::hypot(*a_max - *a_min, *b_max - *b_min);
}

} // namespace

AttractorSummary attractor_summary(const Trace& trace, const std::string& channel_a,
                                   const std::string& channel_b) {
    const auto& a = trace.channel(channel_a);
    const auto& b = trace.channel(channel_b);
    const std::size_t n = a.size();
    if (n < 128) throw TooFewSamples("attractor_summary: need at least 128 samples");

    AttractorSummary out;
    out.terminal_point = {a.back(), b.back()};

    const std::size_t w = std::max<std::size_t>(n / 10, 16);
    const double head = window_diagonal(std::span(a).first(w), std::span(b).first(w));
    const double tail = window_diagonal(std::span(a).last(w), std::span(b).last(w));
    out.converged = head > 0.0 && tail < 0.01 * head;

    std::vector<double> centered(a.begin(), a.end());
    const double mean = std::accumulate(centered.begin(), centered.end(), 0.0) /
                        static_cast<double>(n);
    for (double& v : centered) v -= mean;
    const Spectrum s = spectrum(centered, trace.dt());
    for (const auto& p : dominant_peaks(s, 4, 0.2)) {
        out.dominant_periods.push_back(1.0 / p.freq_hz);
    }
    return out;
}

// -----------------------------------------------------------------------------
// Correlation
// -----------------------------------------------------------------------------

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = std::min(a.size(), b.size());
    if (n < 2) throw TooFewSamples("pearson_correlation: need at least 2 samples");
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

double best_lag_correlation(std::span<const double> a, std::span<const double> b,
                            std::size_t max_lag) {
    double best = -1.0;
    for (std::size_t lag = 0; lag <= max_lag && lag + 2 < a.size(); ++lag) {
        const auto shifted = a.subspan(lag);
        const double c = pearson_correlation(shifted, b.first(std::min(shifted.size(), b.size())));
        best = std::max(best, c);
    }
    return best;
}

} // namespace memsim
