#pragma once

#include "frfboot/errors.hpp"
#include "frfboot/grid.hpp"
#include "frfboot/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace frfboot {

/// DFT bins 0..floor(N/2) of a real series, X[k] = sum_n x[n] exp(-j 2 pi k n / N).
/// Direct evaluation with an exact twiddle table; O(N^2 / 2).
inline std::vector<Complex> real_dft_half(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<Complex> twiddle(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = -2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        twiddle[i] = {std::cos(ph), std::sin(ph)};
    }
    std::vector<Complex> out(n / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        Complex acc{0.0, 0.0};
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += x[i] * twiddle[idx];
            idx += k;
            if (idx >= n)
                idx -= n;
        }
        out[k] = acc;
    }
    return out;
}

/// Empirical transfer G_xy / G_yy at the DFT bins that carry stimulus power.
struct RawTransfer {
    std::vector<double> freqs;
    std::vector<Complex> values;
};

inline constexpr double default_power_threshold = 0.1;

/// Transfer from `stimulus` to `response` over the bins where the stimulus
/// power reaches power_threshold * (max stimulus bin power). The DC bin is
/// never part of a transfer.
inline RawTransfer estimate_transfer(std::span<const double> stimulus, std::span<const double> response,
                                     double sample_rate, double power_threshold = default_power_threshold) {
    if (stimulus.size() != response.size())
        throw LengthMismatchError("stimulus and response differ in length");
    if (stimulus.size() < 2)
        throw ValidationError("need at least 2 samples to estimate a transfer");
    if (!(sample_rate > 0.0))
        throw ValidationError("sample rate must be positive");
    if (!(power_threshold >= 0.0 && power_threshold <= 1.0))
        throw ValidationError("power threshold must lie in [0, 1]");

    const auto y = real_dft_half(stimulus);
    const auto x = real_dft_half(response);
    std::vector<double> gyy(y.size());
    double energy = 0.0;
    for (double v : stimulus)
        energy += v * v;
    double gmax = 0.0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        gyy[k] = std::norm(y[k]);
        gmax = std::max(gmax, gyy[k]);
    }
    // Parseval: sum_k |Y_k|^2 = N * energy; anything this far below is rounding
    if (!(gmax > 1e-20 * energy * static_cast<double>(stimulus.size())))
        throw NoExcitationError("stimulus has no spectral power outside DC");

    RawTransfer raw;
    const double df = sample_rate / static_cast<double>(stimulus.size());
    for (std::size_t k = 1; k < y.size(); ++k) {
        if (gyy[k] <= 0.0 || gyy[k] < power_threshold * gmax)
            continue;
        const Complex gxy = x[k] * std::conj(y[k]);
        raw.freqs.push_back(static_cast<double>(k) * df);
        raw.values.push_back(gxy / gyy[k]);
    }
    return raw;
}

/// Drops the first `n_cycles` cycles of `cycle_length` samples.
inline std::vector<double> trim_leading_cycles(std::span<const double> series, std::size_t cycle_length,
                                               std::size_t n_cycles) {
    const std::size_t drop = cycle_length * n_cycles;
    if (drop > series.size())
        throw ValidationError("cannot trim " + std::to_string(n_cycles) + " cycles from a series of " +
                              std::to_string(series.size()) + " samples");
    return {series.begin() + static_cast<std::ptrdiff_t>(drop), series.end()};
}

/// Transfer estimated on each whole cycle after `skip_cycles` and averaged
/// (complex mean) across those repetitions.
inline RawTransfer estimate_transfer_cycles(std::span<const double> stimulus, std::span<const double> response,
                                            double sample_rate, std::size_t cycle_length, std::size_t skip_cycles,
                                            double power_threshold = default_power_threshold) {
    if (stimulus.size() != response.size())
        throw LengthMismatchError("stimulus and response differ in length");
    if (cycle_length < 2)
        throw ValidationError("cycle length must be at least 2 samples");
    const auto stim = trim_leading_cycles(stimulus, cycle_length, skip_cycles);
    const auto resp = trim_leading_cycles(response, cycle_length, skip_cycles);
    const std::size_t cycles = stim.size() / cycle_length;
    if (cycles == 0)
        throw ValidationError("no complete cycle left after trimming");

    RawTransfer acc;
    for (std::size_t c = 0; c < cycles; ++c) {
        const std::span<const double> s(stim.data() + c * cycle_length, cycle_length);
        const std::span<const double> r(resp.data() + c * cycle_length, cycle_length);
        auto one = estimate_transfer(s, r, sample_rate, power_threshold);
        if (c == 0) {
            acc = std::move(one);
            continue;
        }
        if (one.freqs != acc.freqs)
            throw ValidationError("stimulus excites different bins in different cycles");
        for (std::size_t k = 0; k < acc.values.size(); ++k)
            acc.values[k] += one.values[k];
    }
    for (auto& v : acc.values)
        v /= static_cast<double>(cycles);
    return acc;
}

/// Frequency ranges [lower, upper] (inclusive, may overlap), one per output frequency.
struct BandSpec {
    std::vector<std::pair<double, double>> ranges;
};

/// Complex mean of the raw transfer inside each band.
inline Frf band_average(const RawTransfer& raw, const BandSpec& spec, const FrequencyGrid& target) {
    if (raw.freqs.size() != raw.values.size())
        throw LengthMismatchError("raw transfer frequencies and values differ in length");
    if (spec.ranges.size() != target.size())
        throw LengthMismatchError("band spec has " + std::to_string(spec.ranges.size()) +
                                  " bands, target grid has " + std::to_string(target.size()) + " frequencies");
    constexpr double tol = 1e-9;
    Frf out{std::vector<Complex>(target.size())};
    for (std::size_t b = 0; b < spec.ranges.size(); ++b) {
        const auto [lo, hi] = spec.ranges[b];
        Complex sum{0.0, 0.0};
        std::size_t count = 0;
        for (std::size_t k = 0; k < raw.freqs.size(); ++k)
            if (raw.freqs[k] >= lo - tol && raw.freqs[k] <= hi + tol) {
                sum += raw.values[k];
                ++count;
            }
        if (count == 0)
            throw EmptyBandError("band " + std::to_string(b) + " [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "] Hz contains no transfer frequency");
        out.values[b] = sum / static_cast<double>(count);
    }
    return out;
}

/// Bands for the 11 posture frequencies over a comb at the odd multiples of
/// 0.05 Hz (a 20 s stimulus cycle). Each band's comb lines average to its
/// target frequency; neighbouring bands share lines. These edges are a
/// reconstruction, not published values.
inline BandSpec posture_band_spec() {
    return BandSpec{{
        {0.04, 0.06},  // 0.05
        {0.14, 0.16},  // 0.15
        {0.24, 0.36},  // 0.25 0.35
        {0.34, 0.46},  // 0.35 0.45
        {0.44, 0.66},  // 0.45 .. 0.65
        {0.54, 0.86},  // 0.55 .. 0.85
        {0.74, 1.06},  // 0.75 .. 1.05
        {0.84, 1.36},  // 0.85 .. 1.35
        {1.04, 1.66},  // 1.05 .. 1.65
        {1.34, 2.16},  // 1.35 .. 2.15
        {1.64, 2.76},  // 1.65 .. 2.75
    }};
}

} // namespace frfboot
