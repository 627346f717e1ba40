#pragma once

#include "frfboot/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace frfboot {

/// Pseudo-random ternary stimulus: velocity in {0, +s, -s}, held constant
/// for each state, and its running integral.
struct PrtsStimulus {
    std::vector<double> velocity;  ///< deg/s
    std::vector<double> position;  ///< deg
    std::vector<int> states;       ///< ternary digits 0, 1, 2 -> 0, +s, -s
    double sample_rate = 0.0;
    double speed = 0.0;            ///< s, deg/s
    std::size_t sequence_length = 0;
    std::size_t samples_per_state = 0;

    std::size_t cycle_samples() const noexcept { return sequence_length * samples_per_state; }
    double cycle_duration() const noexcept { return static_cast<double>(cycle_samples()) / sample_rate; }
    double fundamental() const noexcept { return 1.0 / cycle_duration(); }
};

namespace detail {

// Feedback taps of a primitive degree-m polynomial over GF(3):
// a[n] = sum_i taps[i] * a[n-1-i] (mod 3). Period 3^m - 1 from any non-zero state.
struct TernaryTaps {
    int degree;
    std::array<int, 8> taps;
};

inline constexpr std::array<TernaryTaps, 8> ternary_taps{{
    {1, {2}},
    {2, {1, 1}},
    {3, {0, 1, 2}},
    {4, {0, 0, 1, 1}},
    {5, {0, 0, 0, 1, 2}},
    {6, {0, 0, 0, 0, 1, 1}},
    {7, {0, 0, 0, 0, 1, 0, 2}},
    {8, {0, 0, 0, 0, 1, 0, 0, 1}},
}};

inline const TernaryTaps& taps_for_length(std::size_t n_states) {
    std::size_t len = 2;
    for (const auto& t : ternary_taps) {
        if (len == n_states)
            return t;
        len = 3 * len + 2;  // 3^(m+1) - 1
    }
    throw ValidationError("PRTS length " + std::to_string(n_states) +
                          " is not of the form 3^m - 1 with 1 <= m <= 8");
}

} // namespace detail

/// Maximal-length ternary sequence of n_states = 3^m - 1 digits.
/// The seed picks the (non-zero) initial register, i.e. a cyclic shift.
inline std::vector<int> ternary_m_sequence(std::size_t n_states, std::uint64_t seed) {
    const auto& t = detail::taps_for_length(n_states);
    const auto m = static_cast<std::size_t>(t.degree);

    std::uint64_t v = seed % n_states + 1;
    std::vector<int> reg(m);  // reg[i] = a[n-1-i]
    for (std::size_t i = 0; i < m; ++i) {
        reg[i] = static_cast<int>(v % 3);
        v /= 3;
    }
    std::vector<int> out(n_states);
    for (auto& digit : out) {
        int next = 0;
        for (std::size_t i = 0; i < m; ++i)
            next += t.taps[i] * reg[i];
        next %= 3;
        std::rotate(reg.rbegin(), reg.rbegin() + 1, reg.rend());
        reg[0] = next;
        digit = next;
    }
    return out;
}

inline PrtsStimulus generate_prts(std::size_t n_states, double speed, double state_duration, double sample_rate,
                                  std::uint64_t seed) {
    if (n_states < 2)
        throw ValidationError("PRTS needs at least 2 states");
    if (!std::isfinite(speed))
        throw ValidationError("PRTS speed must be finite");
    if (!(sample_rate > 0.0) || !(state_duration > 0.0))
        throw ValidationError("sample rate and state duration must be positive");
    const double sps = sample_rate * state_duration;
    if (std::abs(sps - std::round(sps)) > 1e-9 * std::max(1.0, sps) || std::round(sps) < 1.0)
        throw ValidationError("samples per state (" + std::to_string(sps) + ") is not a positive integer");

    PrtsStimulus s;
    s.states = ternary_m_sequence(n_states, seed);
    s.sample_rate = sample_rate;
    s.speed = speed;
    s.sequence_length = n_states;
    s.samples_per_state = static_cast<std::size_t>(std::round(sps));

    s.velocity.reserve(s.cycle_samples());
    for (int d : s.states) {
        const double v = d == 0 ? 0.0 : (d == 1 ? speed : -speed);
        s.velocity.insert(s.velocity.end(), s.samples_per_state, v);
    }
    s.position.resize(s.velocity.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < s.velocity.size(); ++n) {
        acc += s.velocity[n] / sample_rate;
        s.position[n] = acc;
    }
    return s;
}

inline double peak_to_peak(std::span<const double> x) {
    if (x.empty())
        return 0.0;
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return *hi - *lo;
}

/// Rescales the speed so that the position spans `amplitude` peak to peak.
inline PrtsStimulus scale_to_amplitude(PrtsStimulus s, double amplitude) {
    const double p2p = peak_to_peak(s.position);
    if (!(p2p > 0.0))
        throw ValidationError("cannot scale a stimulus with zero position range");
    const double k = amplitude / p2p;
    for (auto& v : s.velocity)
        v *= k;
    for (auto& p : s.position)
        p *= k;
    s.speed *= k;
    return s;
}

/// Repeats one cycle of a series `cycles` times.
inline std::vector<double> repeat_cycles(std::span<const double> cycle, std::size_t cycles) {
    std::vector<double> out;
    out.reserve(cycle.size() * cycles);
    for (std::size_t c = 0; c < cycles; ++c)
        out.insert(out.end(), cycle.begin(), cycle.end());
    return out;
}

} // namespace frfboot
