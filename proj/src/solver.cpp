#include "memsim/solver.hpp"

#include "memsim/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace memsim {

namespace {

void check_state(std::span<const double> y, double bound, double t) {
    for (double v : y) {
        if (!std::isfinite(v) || std::abs(v) > bound) {
            throw SolverDiverged(t, v);
        }
    }
}

} // namespace

Trace integrate(const StateSystem& sys, std::span<const double> init, const SolveConfig& cfg) {
    if (init.size() != sys.dimension) {
        throw std::invalid_argument("integrate: init dimension mismatch");
    }
    if (cfg.dt <= 0.0 || cfg.t1 <= cfg.t0 || cfg.record_stride == 0) {
        throw std::invalid_argument("integrate: bad solve config");
    }

    const long long n_steps = std::llround((cfg.t1 - cfg.t0) / cfg.dt);
    if (n_steps <= 0) throw std::invalid_argument("integrate: empty time span");
    const std::size_t n_records =
        static_cast<std::size_t>(n_steps) / cfg.record_stride + 1;

    Trace trace(cfg.t0, cfg.dt * static_cast<double>(cfg.record_stride), n_records);
    std::vector<std::vector<double>> channels(sys.taps.size(),
                                              std::vector<double>(n_records));

    const std::size_t dim = sys.dimension;
    std::vector<double> y(init.begin(), init.end());
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    auto record = [&](std::size_t slot, double t) {
        for (std::size_t c = 0; c < sys.taps.size(); ++c) {
            const double v = sys.taps[c].second(t, y);
            if (!std::isfinite(v)) throw SolverDiverged(t, v);
            channels[c][slot] = v;
        }
    };

    check_state(y, cfg.state_bound, cfg.t0);
    record(0, cfg.t0);

    const double dt = cfg.dt;
    std::size_t slot = 1;
    for (long long i = 0; i < n_steps; ++i) {
        const double t = cfg.t0 + dt * static_cast<double>(i);

        sys.derivative(t, y, k1);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * dt * k1[j];
        sys.derivative(t + 0.5 * dt, tmp, k2);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * dt * k2[j];
        sys.derivative(t + 0.5 * dt, tmp, k3);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + dt * k3[j];
        sys.derivative(t + dt, tmp, k4);
        for (std::size_t j = 0; j < dim; ++j) {
            y[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }

        const double t_next = cfg.t0 + dt * static_cast<double>(i + 1);
        check_state(y, cfg.state_bound, t_next);
        if ((i + 1) % static_cast<long long>(cfg.record_stride) == 0 && slot < n_records) {
            record(slot, t_next);
            ++slot;
        }
    }

    for (std::size_t c = 0; c < sys.taps.size(); ++c) {
        trace.add_channel(sys.taps[c].first, std::move(channels[c]));
    }
    return trace;
}

Trace reference_integrate(const StateSystem& sys, std::span<const double> init,
                          const SolveConfig& cfg) {
    SolveConfig fine = cfg;
    fine.dt = cfg.dt / 32.0;
    fine.record_stride = cfg.record_stride * 32;
    return integrate(sys, init, fine);
}

} // namespace memsim
