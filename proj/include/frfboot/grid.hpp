#pragma once

#include "frfboot/errors.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace frfboot {

/// Analysis frequencies of an FRF, each an integer multiple of a common
/// base frequency. The base is the exact rational gcd of the frequencies,
/// computed on integers after scaling by `resolution` (1000 by default, i.e.
/// frequencies given to three decimals).
class FrequencyGrid {
public:
    static constexpr std::int64_t default_resolution = 1000;

    const std::vector<double>& freqs() const noexcept { return freqs_; }
    /// freqs()[k] == harmonics()[k] * base_freq()
    const std::vector<std::int64_t>& harmonics() const noexcept { return harmonics_; }
    double base_freq() const noexcept { return base_freq_; }
    double period() const noexcept { return period_; }
    std::int64_t resolution() const noexcept { return resolution_; }
    std::size_t size() const noexcept { return freqs_.size(); }
    double max_freq() const noexcept { return freqs_.back(); }

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

private:
    friend FrequencyGrid make_frequency_grid(std::span<const double>, std::int64_t);

    std::vector<double> freqs_;
    std::vector<std::int64_t> harmonics_;
    std::int64_t base_units_ = 0;  // base_freq * resolution
    std::int64_t resolution_ = default_resolution;
    double base_freq_ = 0.0;
    double period_ = 0.0;
};

inline FrequencyGrid make_frequency_grid(std::span<const double> freqs,
                                         std::int64_t resolution = FrequencyGrid::default_resolution) {
    if (freqs.empty())
        throw ValidationError("frequency grid is empty");
    if (resolution <= 0)
        throw ValidationError("frequency resolution must be positive");

    std::vector<std::int64_t> units;
    units.reserve(freqs.size());
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        const double f = freqs[k];
        if (!std::isfinite(f) || f <= 0.0)
            throw ValidationError("frequency " + std::to_string(k) + " is not a positive finite value");
        if (k > 0 && !(f > freqs[k - 1]))
            throw ValidationError("frequencies are not strictly increasing at index " + std::to_string(k));
        const double scaled = f * static_cast<double>(resolution);
        if (scaled > 9.0e15)
            throw IncommensurableGridError("frequency " + std::to_string(f) + " too large for resolution");
        const double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) > 1e-6 * std::max(1.0, scaled) || rounded < 1.0)
            throw IncommensurableGridError("frequency " + std::to_string(f) +
                                           " is not a multiple of 1/" + std::to_string(resolution) + " Hz");
        units.push_back(static_cast<std::int64_t>(rounded));
    }
    for (std::size_t k = 1; k < units.size(); ++k)
        if (units[k] <= units[k - 1])
            throw IncommensurableGridError("frequencies collapse at resolution 1/" + std::to_string(resolution) + " Hz");

    std::int64_t g = 0;
    for (auto u : units)
        g = std::gcd(g, u);

    FrequencyGrid grid;
    grid.resolution_ = resolution;
    grid.base_units_ = g;
    grid.base_freq_ = static_cast<double>(g) / static_cast<double>(resolution);
    grid.period_ = static_cast<double>(resolution) / static_cast<double>(g);
    for (auto u : units) {
        grid.harmonics_.push_back(u / g);
        grid.freqs_.push_back(static_cast<double>(u) / static_cast<double>(resolution));
    }
    return grid;
}

inline FrequencyGrid make_frequency_grid(std::initializer_list<double> freqs,
                                         std::int64_t resolution = FrequencyGrid::default_resolution) {
    return make_frequency_grid(std::span<const double>(freqs.begin(), freqs.size()), resolution);
}

/// The 11-frequency grid used in posture-control FRF studies (Hz).
inline const std::vector<double>& posture_frequencies() {
    static const std::vector<double> f{0.05, 0.15, 0.3, 0.4, 0.55, 0.7, 0.9, 1.1, 1.35, 1.75, 2.2};
    return f;
}

inline FrequencyGrid posture_grid() { return make_frequency_grid(posture_frequencies()); }

/// Uniform sampling t_n = n / sample_rate, n = 0..n_samples-1.
///
/// A grid made by make_time_grid covers one PIR period half-open, [0, period).
/// With `inclusive_endpoint` it gets one extra sample at t = period, which
/// duplicates phase zero; such grids are never bin-aligned.
class TimeGrid {
public:
    TimeGrid(double sample_rate, std::size_t n_samples, bool inclusive_endpoint = false)
        : sample_rate_(sample_rate), n_samples_(n_samples), inclusive_(inclusive_endpoint) {
        if (!std::isfinite(sample_rate) || sample_rate <= 0.0)
            throw ValidationError("sample rate must be positive and finite");
        if (n_samples == 0)
            throw ValidationError("time grid needs at least one sample");
    }

    double sample_rate() const noexcept { return sample_rate_; }
    double sample_period() const noexcept { return 1.0 / sample_rate_; }
    std::size_t n_samples() const noexcept { return n_samples_; }
    bool inclusive_endpoint() const noexcept { return inclusive_; }
    double nyquist() const noexcept { return 0.5 * sample_rate_; }

    double time(std::size_t n) const noexcept { return static_cast<double>(n) / sample_rate_; }

    std::vector<double> times() const {
        std::vector<double> t(n_samples_);
        for (std::size_t n = 0; n < n_samples_; ++n)
            t[n] = time(n);
        return t;
    }

    /// True when every grid frequency sits exactly on a DFT bin and below Nyquist.
    bool is_bin_aligned(const FrequencyGrid& grid) const noexcept {
        if (inclusive_)
            return false;
        const double n = static_cast<double>(n_samples_);
        for (double f : grid.freqs()) {
            if (!(f < nyquist()))
                return false;
            const double bin = f * n / sample_rate_;
            if (std::abs(bin - std::round(bin)) > 1e-9 * std::max(1.0, bin))
                return false;
        }
        return true;
    }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    double sample_rate_;
    std::size_t n_samples_;
    bool inclusive_;
};

/// sample_rate = oversample_factor * max frequency; one period of samples.
inline TimeGrid make_time_grid(const FrequencyGrid& grid, double oversample_factor = 10.0,
                               bool inclusive_endpoint = false) {
    if (!std::isfinite(oversample_factor) || oversample_factor <= 2.0)
        throw AliasingError("oversample factor must exceed 2 (got " + std::to_string(oversample_factor) + ")");
    const double fs = oversample_factor * grid.max_freq();
    const double per_period = std::round(fs / grid.base_freq());
    if (per_period < 1.0)
        throw ValidationError("time grid would be empty");
    const auto n = static_cast<std::size_t>(per_period);
    return TimeGrid(fs, inclusive_endpoint ? n + 1 : n, inclusive_endpoint);
}

} // namespace frfboot
