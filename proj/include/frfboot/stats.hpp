#pragma once

#include "frfboot/errors.hpp"
#include "frfboot/types.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace frfboot {

namespace detail {

inline std::size_t common_length(std::span<const Pir> pirs) {
    const std::size_t len = pirs.front().size();
    for (std::size_t i = 1; i < pirs.size(); ++i)
        if (pirs[i].size() != len)
            throw LengthMismatchError("PIR " + std::to_string(i) + " has " + std::to_string(pirs[i].size()) +
                                      " samples, expected " + std::to_string(len));
    return len;
}

} // namespace detail

/// Per-sample arithmetic mean.
inline Pir pointwise_mean(std::span<const Pir> pirs) {
    if (pirs.empty())
        throw ValidationError("mean of an empty PIR list");
    const std::size_t len = detail::common_length(pirs);
    Pir mean{std::vector<double>(len, 0.0)};
    for (const auto& p : pirs)
        for (std::size_t n = 0; n < len; ++n)
            mean.samples[n] += p.samples[n];
    const double inv = 1.0 / static_cast<double>(pirs.size());
    for (auto& v : mean.samples)
        v *= inv;
    return mean;
}

/// Per-sample standard deviation with the unbiased 1/(N-1) normalisation.
inline std::vector<double> pointwise_std(std::span<const Pir> pirs) {
    if (pirs.size() < 2)
        throw ValidationError("standard deviation needs at least 2 PIRs, got " + std::to_string(pirs.size()));
    const Pir mean = pointwise_mean(pirs);
    const std::size_t len = mean.size();
    std::vector<double> ss(len, 0.0);
    for (const auto& p : pirs)
        for (std::size_t n = 0; n < len; ++n) {
            const double d = p.samples[n] - mean.samples[n];
            ss[n] += d * d;
        }
    const double inv = 1.0 / static_cast<double>(pirs.size() - 1);
    for (auto& v : ss)
        v = std::sqrt(v * inv);
    return ss;
}

} // namespace frfboot
