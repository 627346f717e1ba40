#pragma once

#include "frfboot/errors.hpp"
#include "frfboot/grid.hpp"
#include "frfboot/prts.hpp"
#include "frfboot/rng.hpp"
#include "frfboot/transfer.hpp"
#include "frfboot/types.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace frfboot {

/// Discrete one-pole low-pass with pure delay:
/// y[n] = pole * y[n-1] + gain * (1 - pole) * x[n - delay].
struct LtiSystem {
    double gain = 1.0;
    double pole = 0.0;
    std::size_t delay = 0;

    Complex response(double f, double sample_rate) const {
        const double w = 2.0 * std::numbers::pi * f / sample_rate;
        const Complex z1 = std::polar(1.0, -w);
        return gain * (1.0 - pole) * std::pow(z1, static_cast<double>(delay)) / (1.0 - pole * z1);
    }

    std::vector<double> filter(std::span<const double> x) const {
        std::vector<double> y(x.size());
        double prev = 0.0;
        for (std::size_t n = 0; n < x.size(); ++n) {
            const double in = n >= delay ? x[n - delay] : 0.0;
            prev = pole * prev + gain * (1.0 - pole) * in;
            y[n] = prev;
        }
        return y;
    }
};

/// Sway-like subject model used by the synthetic generators: corner near
/// 0.5 Hz and 0.1 s delay at 100 Hz.
inline LtiSystem default_subject_system() {
    return LtiSystem{1.0, std::exp(-2.0 * std::numbers::pi * 0.5 / 100.0), 10};
}

/// The default subject's response on a grid, evaluated at 100 Hz.
inline Frf default_base_frf(const FrequencyGrid& grid) {
    const auto sys = default_subject_system();
    Frf h{std::vector<Complex>(grid.size())};
    for (std::size_t k = 0; k < grid.size(); ++k)
        h.values[k] = sys.response(grid.freqs()[k], 100.0);
    return h;
}

/// base + independent N(0, noise_sigma^2) on the real and imaginary part of
/// every component, one member per subject.
inline FrfGroup synth_group(const Frf& base, const FrequencyGrid& grid, double noise_sigma, std::size_t n_subjects,
                            std::uint64_t seed) {
    if (n_subjects < 2)
        throw ValidationError("synthetic group needs at least 2 subjects");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        throw ValidationError("noise sigma must be a non-negative finite value");
    if (base.size() != grid.size())
        throw LengthMismatchError("base FRF does not match the grid");

    RngStream rng(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Frf> members;
    members.reserve(n_subjects);
    for (std::size_t i = 0; i < n_subjects; ++i) {
        Frf h = base;
        for (auto& v : h.values) {
            const double re = normal(rng.engine());
            const double im = normal(rng.engine());
            v += Complex{noise_sigma * re, noise_sigma * im};
        }
        members.push_back(std::move(h));
    }
    return FrfGroup(grid, std::move(members));
}

/// Adds `shift` to the real part of every component of every member.
inline FrfGroup shift_real(const FrfGroup& g, double shift) {
    std::vector<Frf> members = g.members();
    for (auto& h : members)
        for (auto& v : h.values)
            v += Complex{shift, 0.0};
    return FrfGroup(g.grid(), std::move(members), g.labels());
}

/// Stimulus, subject model and analysis settings of the full synthetic
/// pipeline: PRTS -> subject -> transfer estimate -> band average.
struct PipelineConfig {
    std::size_t n_states = 80;       ///< 20 s cycle with 0.25 s states
    double state_duration = 0.25;
    double sample_rate = 100.0;
    double amplitude = 1.0;          ///< deg peak to peak
    std::uint64_t stimulus_seed = 1;
    std::size_t cycles = 3;
    std::size_t skip_cycles = 1;
    /// Position power falls off as 1/f^2, so the comb is selected with a
    /// much lower threshold than for velocity stimuli.
    double power_threshold = 1e-6;
    LtiSystem system = default_subject_system();
    BandSpec bands = posture_band_spec();
};

/// One FRF per subject: the stimulus position drives the subject model,
/// Gaussian sensor noise (std noise_sigma, deg) is added to the sway, the
/// first cycles are discarded and the per-cycle transfers are averaged
/// before band averaging onto `grid`.
inline FrfGroup synth_group_pipeline(const PipelineConfig& cfg, const FrequencyGrid& grid, double noise_sigma,
                                     std::size_t n_subjects, std::uint64_t seed) {
    if (n_subjects < 2)
        throw ValidationError("synthetic group needs at least 2 subjects");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        throw ValidationError("noise sigma must be a non-negative finite value");
    if (cfg.cycles <= cfg.skip_cycles)
        throw ValidationError("pipeline keeps no cycle after skipping");

    const auto stim = scale_to_amplitude(
        generate_prts(cfg.n_states, 1.0, cfg.state_duration, cfg.sample_rate, cfg.stimulus_seed), cfg.amplitude);
    const auto input = repeat_cycles(stim.position, cfg.cycles);
    const auto clean = cfg.system.filter(input);

    std::vector<Frf> members;
    members.reserve(n_subjects);
    for (std::size_t i = 0; i < n_subjects; ++i) {
        RngStream rng(seed, i);
        std::normal_distribution<double> normal(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);
        std::vector<double> sway = clean;
        if (noise_sigma > 0.0)
            for (auto& v : sway)
                v += normal(rng.engine());
        const auto raw = estimate_transfer_cycles(input, sway, cfg.sample_rate, stim.cycle_samples(),
                                                  cfg.skip_cycles, cfg.power_threshold);
        members.push_back(band_average(raw, cfg.bands, grid));
    }
    return FrfGroup(grid, std::move(members));
}

} // namespace frfboot
