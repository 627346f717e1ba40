#pragma once

#include "frfboot/bootstrap.hpp"
#include "frfboot/errors.hpp"
#include "frfboot/grid.hpp"
#include "frfboot/transform.hpp"
#include "frfboot/types.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace frfboot {

/// Part of `curve` lying outside [lower, upper]: curve - upper above the band,
/// curve - lower below it, zero inside.
inline Pir residual(std::span<const double> curve, std::span<const double> upper, std::span<const double> lower) {
    if (curve.size() != upper.size() || curve.size() != lower.size())
        throw LengthMismatchError("residual: curve and band differ in length");
    Pir r{std::vector<double>(curve.size(), 0.0)};
    for (std::size_t t = 0; t < curve.size(); ++t) {
        if (curve[t] >= upper[t])
            r.samples[t] = curve[t] - upper[t];
        else if (curve[t] <= lower[t])
            r.samples[t] = curve[t] - lower[t];
    }
    return r;
}

inline Pir residual(const Pir& curve, const BandResult& band) {
    return residual(curve.samples, band.band_upper, band.band_lower);
}

/// Residual of the zero line (the null hypothesis of equal means).
inline Pir zero_line_residual(const BandResult& band) {
    const std::vector<double> zero(band.band_upper.size(), 0.0);
    return residual(zero, band.band_upper, band.band_lower);
}

struct ResidualSpectrum {
    std::vector<double> freqs;
    std::vector<Complex> values;
    std::vector<double> magnitude;
};

/// DFT of a residual at the grid frequencies, with magnitudes.
inline ResidualSpectrum residual_spectrum(const Pir& res, const TimeGrid& tg, const FrequencyGrid& grid) {
    ResidualSpectrum s;
    s.freqs = grid.freqs();
    s.values = spectrum_at(res, tg, grid.freqs());
    s.magnitude.reserve(s.values.size());
    for (const auto& v : s.values)
        s.magnitude.push_back(std::abs(v));
    return s;
}

} // namespace frfboot
