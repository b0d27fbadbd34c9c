#include "memsim/trace.hpp"

#include "memsim/errors.hpp"
#include "memsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memsim {

Trace::Trace(double t0, double dt, std::size_t length)
    : t0_(t0), dt_(dt), length_(length) {
    if (dt <= 0.0) throw std::invalid_argument("Trace: dt must be positive");
    if (length == 0) throw std::invalid_argument("Trace: empty grid");
}

void Trace::add_channel(std::string name, std::vector<double> samples) {
    if (samples.size() != length_) {
        throw GridMismatch("channel '" + name + "' has length " +
                           std::to_string(samples.size()) + ", grid has " +
                           std::to_string(length_));
    }
    if (has_channel(name)) {
        throw GridMismatch("duplicate channel '" + name + "'");
    }
    names_.push_back(std::move(name));
    data_.push_back(std::move(samples));
}

bool Trace::has_channel(std::string_view name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const std::vector<double>& Trace::channel(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw std::out_of_range("no channel '" + std::string(name) + "'");
    }
    return data_[static_cast<std::size_t>(it - names_.begin())];
}

std::vector<double>& Trace::channel_mut(std::string_view name) {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw std::out_of_range("no channel '" + std::string(name) + "'");
    }
    return data_[static_cast<std::size_t>(it - names_.begin())];
}

Trace Trace::tail(std::size_t n) const {
    if (n > length_) n = length_;
    const std::size_t start = length_ - n;
    Trace out(time(start), dt_, n);
    for (std::size_t c = 0; c < names_.size(); ++c) {
        out.add_channel(names_[c],
                        std::vector<double>(data_[c].begin() + static_cast<std::ptrdiff_t>(start),
                                            data_[c].end()));
    }
    return out;
}

void Trace::write_csv(std::ostream& os) const {
    os << 't';
    for (const auto& n : names_) os << ',' << n;
    os << '\n';
    for (std::size_t i = 0; i < length_; ++i) {
        os << format_quantity(time(i));
        for (const auto& col : data_) os << ',' << format_quantity(col[i]);
        os << '\n';
    }
}

std::vector<double> running_integral(std::span<const double> samples, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("running_integral: dt must be positive");
    if (samples.empty()) throw std::invalid_argument("running_integral: empty input");
    std::vector<double> out(samples.size());
    out[0] = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i - 1]) || !std::isfinite(samples[i])) {
            throw std::invalid_argument("running_integral: non-finite sample at index " +
                                        std::to_string(i));
        }
        out[i] = out[i - 1] + 0.5 * (samples[i - 1] + samples[i]) * dt;
    }
    return out;
}

} // namespace memsim
