#pragma once

#include "frfboot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frfboot {

enum class QuantileMethod {
    /// Order statistic: sorted[ceil(alpha * B) - 1].
    order,
    /// 1000-bin cumulative histogram over [min, max]; returns the left edge of
    /// the first bin whose cumulative fraction exceeds alpha.
    histogram,
};

inline std::string_view to_string(QuantileMethod m) {
    return m == QuantileMethod::order ? "order" : "histogram";
}

inline QuantileMethod parse_quantile_method(std::string_view s) {
    if (s == "order")
        return QuantileMethod::order;
    if (s == "histogram")
        return QuantileMethod::histogram;
    throw ValidationError("unknown quantile method '" + std::string(s) + "' (expected order or histogram)");
}

inline constexpr std::size_t histogram_bins = 1000;

namespace detail {

inline void check_quantile_args(std::span<const double> stats, double alpha) {
    if (stats.empty())
        throw ValidationError("no statistics to take a quantile of");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("alpha must lie in (0, 1), got " + std::to_string(alpha));
}

inline double order_quantile_sorted(std::span<const double> sorted, double alpha) {
    const double b = static_cast<double>(sorted.size());
    // alpha * B is usually meant to be an integer; absorb its representation error
    auto k = static_cast<std::size_t>(std::ceil(alpha * b - 1e-9));
    k = std::clamp<std::size_t>(k, 1, sorted.size());
    return sorted[k - 1];
}

inline double histogram_quantile_sorted(std::span<const double> sorted, double alpha) {
    const double lo = sorted.front();
    const double hi = sorted.back();
    if (!(hi > lo))
        return lo;
    std::vector<double> edges(histogram_bins + 1);
    for (std::size_t i = 0; i <= histogram_bins; ++i)
        edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(histogram_bins);
    edges.back() = hi;

    const double total = static_cast<double>(sorted.size());
    // Bins are [e_i, e_{i+1}) except the last, which also holds the maximum.
    for (std::size_t i = 0; i < histogram_bins; ++i) {
        const auto end = (i + 1 == histogram_bins)
                             ? sorted.end()
                             : std::lower_bound(sorted.begin(), sorted.end(), edges[i + 1]);
        const double cdf = static_cast<double>(end - sorted.begin()) / total;
        if (cdf > alpha)
            return edges[i];
    }
    return edges[histogram_bins - 1];
}

} // namespace detail

/// Bin width the histogram method works at: (max - min) / 1000.
inline double histogram_bin_width(std::span<const double> stats) {
    if (stats.empty())
        return 0.0;
    const auto [lo, hi] = std::minmax_element(stats.begin(), stats.end());
    return (*hi - *lo) / static_cast<double>(histogram_bins);
}

/// Smallest constant that at least a fraction alpha of the statistics do not exceed.
inline double critical_constant(std::span<const double> stats, double alpha,
                                QuantileMethod method = QuantileMethod::order) {
    detail::check_quantile_args(stats, alpha);
    std::vector<double> sorted(stats.begin(), stats.end());
    std::sort(sorted.begin(), sorted.end());
    return method == QuantileMethod::order ? detail::order_quantile_sorted(sorted, alpha)
                                           : detail::histogram_quantile_sorted(sorted, alpha);
}

} // namespace frfboot
