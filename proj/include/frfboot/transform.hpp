#pragma once

#include "frfboot/errors.hpp"
#include "frfboot/grid.hpp"
#include "frfboot/types.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace frfboot {

namespace detail {

// cos/sin of 2*pi*f*t with the whole cycles removed first, which keeps the
// argument in [0, 2*pi) and makes t = period reproduce t = 0.
inline Complex unit_phasor(double f, double t) {
    double cycles = f * t;
    cycles -= std::floor(cycles);
    const double phase = 2.0 * std::numbers::pi * cycles;
    return {std::cos(phase), std::sin(phase)};
}

} // namespace detail

/// PIR of an FRF: x(t) = sum_k Re(H_k) cos(2 pi F_k t) - Im(H_k) sin(2 pi F_k t),
/// i.e. Re(sum_k H_k exp(j 2 pi F_k t)).
inline Pir pir_from_frf(const Frf& frf, const FrequencyGrid& grid, const TimeGrid& tg) {
    if (frf.size() != grid.size())
        throw LengthMismatchError("FRF has " + std::to_string(frf.size()) + " values, grid has " +
                                  std::to_string(grid.size()));
    Pir pir{std::vector<double>(tg.n_samples(), 0.0)};
    const auto& f = grid.freqs();
    for (std::size_t n = 0; n < tg.n_samples(); ++n) {
        const double t = tg.time(n);
        double x = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            const Complex e = detail::unit_phasor(f[k], t);
            x += frf.values[k].real() * e.real() - frf.values[k].imag() * e.imag();
        }
        pir.samples[n] = x;
    }
    return pir;
}

/// (2/N) sum_n x[n] exp(-j 2 pi f t_n) at each probe frequency, N = samples on
/// the grid. Only exact at bin-aligned frequencies.
inline std::vector<Complex> spectrum_at(const Pir& pir, const TimeGrid& tg, std::span<const double> freqs) {
    if (pir.size() != tg.n_samples())
        throw LengthMismatchError("PIR has " + std::to_string(pir.size()) + " samples, time grid has " +
                                  std::to_string(tg.n_samples()));
    for (double f : freqs)
        if (!std::isfinite(f) || !(std::abs(f) < tg.nyquist()))
            throw AliasingError("probe frequency " + std::to_string(f) + " Hz is not below Nyquist (" +
                                std::to_string(tg.nyquist()) + " Hz)");

    const double scale = 2.0 / static_cast<double>(tg.n_samples());
    std::vector<Complex> out(freqs.size());
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        Complex acc{0.0, 0.0};
        for (std::size_t n = 0; n < tg.n_samples(); ++n)
            acc += pir.samples[n] * std::conj(detail::unit_phasor(freqs[k], tg.time(n)));
        out[k] = scale * acc;
    }
    return out;
}

/// Inverse of pir_from_frf; requires a bin-aligned time grid.
inline Frf frf_from_pir(const Pir& pir, const FrequencyGrid& grid, const TimeGrid& tg) {
    if (!tg.is_bin_aligned(grid))
        throw AlignmentError("time grid (" + std::to_string(tg.n_samples()) + " samples at " +
                             std::to_string(tg.sample_rate()) +
                             " Hz) does not place every frequency on a DFT bin below Nyquist");
    return Frf{spectrum_at(pir, tg, grid.freqs())};
}

} // namespace frfboot
