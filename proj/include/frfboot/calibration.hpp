#pragma once

#include "frfboot/bootstrap.hpp"
#include "frfboot/errors.hpp"
#include "frfboot/grid.hpp"
#include "frfboot/rng.hpp"
#include "frfboot/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

namespace frfboot {

enum class CalibrationMode { type1, power };

inline CalibrationMode parse_calibration_mode(std::string_view s) {
    if (s == "type1")
        return CalibrationMode::type1;
    if (s == "power")
        return CalibrationMode::power;
    throw ValidationError("unknown calibration mode '" + std::string(s) + "' (expected type1 or power)");
}

struct CalibrationConfig {
    CalibrationMode mode = CalibrationMode::type1;
    std::size_t replicates = 200;
    std::size_t n1 = 10;
    std::size_t n2 = 10;
    double noise = 0.1;
    double shift = 1.0;  ///< real-part shift of group 2 in power mode
    double oversample = 10.0;
    bool inclusive_endpoint = false;
    BootstrapParams params;  ///< params.seed is the master seed
};

struct CalibrationReport {
    std::size_t replicates = 0;
    std::size_t rejections = 0;
    double rate = 0.0;
    double ci_low = 0.0;   ///< Wilson 95% interval
    double ci_high = 0.0;
    double shift = 0.0;
};

/// Wilson score interval at 95%.
inline std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials) {
    if (trials == 0)
        return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Monte Carlo rejection rate of the band test on synthetic groups drawn
/// around `base`. Replicate r uses seeds derived from (master seed, r), so
/// any replicate can be rerun on its own.
inline CalibrationReport calibrate(const CalibrationConfig& cfg, const FrequencyGrid& grid, const Frf& base,
                                   const std::function<void(std::size_t, bool)>& on_replicate = {}) {
    if (cfg.replicates == 0)
        throw ValidationError("calibration needs at least one replicate");
    cfg.params.validate();
    const auto tg = make_time_grid(grid, cfg.oversample, cfg.inclusive_endpoint);
    const double shift = cfg.mode == CalibrationMode::power ? cfg.shift : 0.0;

    CalibrationReport rep;
    rep.replicates = cfg.replicates;
    rep.shift = shift;
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
        const std::uint64_t s = derive_seed(cfg.params.seed, r);
        const auto g1 = synth_group(base, grid, cfg.noise, cfg.n1, derive_seed(s, 1));
        auto g2 = synth_group(base, grid, cfg.noise, cfg.n2, derive_seed(s, 2));
        if (shift != 0.0)
            g2 = shift_real(g2, shift);
        BootstrapParams p = cfg.params;
        p.seed = derive_seed(s, 3);
        const bool reject = confidence_band_difference(g1, g2, tg, p).reject;
        rep.rejections += reject ? 1 : 0;
        if (on_replicate)
            on_replicate(r, reject);
    }
    rep.rate = static_cast<double>(rep.rejections) / static_cast<double>(rep.replicates);
    std::tie(rep.ci_low, rep.ci_high) = wilson_interval(rep.rejections, rep.replicates);
    return rep;
}

} // namespace frfboot
