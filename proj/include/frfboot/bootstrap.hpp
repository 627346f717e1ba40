#pragma once

#include "frfboot/errors.hpp"
#include "frfboot/grid.hpp"
#include "frfboot/quantile.hpp"
#include "frfboot/rng.hpp"
#include "frfboot/stats.hpp"
#include "frfboot/transform.hpp"
#include "frfboot/types.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace frfboot {

/// Points whose nested standard deviation falls below
/// relative_epsilon * max(max(sd), data scale) are left out of the max-pivot statistic.
struct SigmaFloor {
    double relative_epsilon = 1e-12;
};

struct BootstrapParams {
    double alpha = 0.95;      ///< confidence level, fraction in (0, 1)
    std::size_t B = 10000;    ///< outer replications
    std::size_t Bs = 200;     ///< nested replications for the standard deviation
    std::uint64_t seed = 0;
    SigmaFloor sigma_floor{};
    QuantileMethod quantile_method = QuantileMethod::order;
    unsigned threads = 1;     ///< 0 selects std::thread::hardware_concurrency()

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw ValidationError("alpha must lie in (0, 1), got " + std::to_string(alpha));
        if (B < 100)
            throw ValidationError("B must be at least 100, got " + std::to_string(B));
        if (Bs < 2)
            throw ValidationError("Bs must be at least 2, got " + std::to_string(Bs));
        if (!(sigma_floor.relative_epsilon >= 0.0))
            throw ValidationError("sigma floor must be non-negative");
    }
};

/// Maximal run of samples where the zero line lies outside the band.
struct Crossing {
    double t_start = 0.0;
    double t_end = 0.0;
    std::size_t first_sample = 0;
    std::size_t n_samples = 0;

    friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct BandResult {
    Pir avg;                          ///< observed difference of group mean PIRs
    std::vector<double> sigma;        ///< bootstrap standard deviation of the difference
    double cc = 0.0;                  ///< critical constant
    std::vector<double> band_upper;   ///< avg + cc * sigma
    std::vector<double> band_lower;   ///< avg - cc * sigma
    std::vector<double> stats;        ///< B pivot statistics, ascending
    bool reject = false;
    std::vector<Crossing> crossings;
    /// sigma vanishes everywhere, or every replication was degenerate
    bool degenerate = false;
    std::size_t degenerate_replicates = 0;
};

struct PivotStatistic {
    double value = 0.0;
    bool degenerate = false;  ///< no admissible sample; value is 0
};

/// max_t |xm(t) - xb(t)| / sb(t) over samples admitted by the floor policy.
/// `scale` is the magnitude of the underlying data; sd values that are mere
/// rounding residue relative to it are not admitted.
inline PivotStatistic max_pivot_statistic(std::span<const double> xm, std::span<const double> xb,
                                          std::span<const double> sb, SigmaFloor floor = {},
                                          double scale = 0.0) {
    if (xm.size() != xb.size() || xm.size() != sb.size())
        throw LengthMismatchError("pivot statistic inputs differ in length");
    double smax = 0.0;
    for (double s : sb)
        smax = std::max(smax, s);
    const double threshold = floor.relative_epsilon * std::max(smax, scale);

    PivotStatistic out{0.0, true};
    for (std::size_t t = 0; t < xm.size(); ++t) {
        if (!(sb[t] > 0.0) || sb[t] < threshold)
            continue;
        out.degenerate = false;
        out.value = std::max(out.value, std::abs(xm[t] - xb[t]) / sb[t]);
    }
    return out;
}

inline PivotStatistic max_pivot_statistic(const Pir& xm, const Pir& xb, std::span<const double> sb,
                                          SigmaFloor floor = {}, double scale = 0.0) {
    return max_pivot_statistic(xm.samples, xb.samples, sb, floor, scale);
}

/// pointwise_mean(g1) - pointwise_mean(g2)
inline Pir diff_of_means(std::span<const Pir> g1, std::span<const Pir> g2) {
    if (g1.empty() || g2.empty())
        throw ValidationError("difference of means needs two non-empty groups");
    Pir d = pointwise_mean(g1);
    const Pir m2 = pointwise_mean(g2);
    if (m2.size() != d.size())
        throw LengthMismatchError("groups have PIRs of different lengths");
    for (std::size_t n = 0; n < d.size(); ++n)
        d.samples[n] -= m2.samples[n];
    return d;
}

namespace detail {

/// Subjects x samples, row-major.
class PirMatrix {
public:
    explicit PirMatrix(std::span<const Pir> pirs) : rows_(pirs.size()), cols_(0) {
        if (pirs.empty())
            throw ValidationError("empty group");
        cols_ = detail::common_length(pirs);
        data_.reserve(rows_ * cols_);
        for (const auto& p : pirs)
            data_.insert(data_.end(), p.samples.begin(), p.samples.end());
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const double* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }
    double max_abs() const noexcept {
        double m = 0.0;
        for (double v : data_)
            m = std::max(m, std::abs(v));
        return m;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

// out[j] = outer[inner[j]]: a resample of a resample, addressed in the original group.
inline void compose(std::span<const std::size_t> outer, std::span<const std::size_t> inner,
                    std::vector<std::size_t>& out) {
    out.resize(inner.size());
    for (std::size_t j = 0; j < inner.size(); ++j)
        out[j] = outer[inner[j]];
}

// out += sign * mean of y rows selected by idx (with multiplicity).
inline void add_resampled_mean(const PirMatrix& y, std::span<const std::size_t> idx, double sign,
                               std::vector<std::size_t>& counts, double* out) {
    counts.assign(y.rows(), 0);
    for (auto i : idx)
        ++counts[i];
    const double inv = sign / static_cast<double>(idx.size());
    const std::size_t ns = y.cols();
    for (std::size_t i = 0; i < y.rows(); ++i) {
        if (counts[i] == 0)
            continue;
        const double w = inv * static_cast<double>(counts[i]);
        const double* r = y.row(i);
        for (std::size_t t = 0; t < ns; ++t)
            out[t] += w * r[t];
    }
}

inline void resampled_diff(const PirMatrix& y1, std::span<const std::size_t> idx1, const PirMatrix& y2,
                           std::span<const std::size_t> idx2, std::vector<std::size_t>& counts, double* out) {
    std::fill(out, out + y1.cols(), 0.0);
    add_resampled_mean(y1, idx1, 1.0, counts, out);
    add_resampled_mean(y2, idx2, -1.0, counts, out);
}

// Column-wise sample standard deviation (1/(rows-1)) of a rows x cols block.
inline void column_std(const std::vector<double>& block, std::size_t rows, std::size_t cols,
                       std::vector<double>& mean, std::vector<double>& out) {
    mean.assign(cols, 0.0);
    out.assign(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* x = block.data() + r * cols;
        for (std::size_t t = 0; t < cols; ++t)
            mean[t] += x[t];
    }
    const double inv_n = 1.0 / static_cast<double>(rows);
    for (auto& m : mean)
        m *= inv_n;
    for (std::size_t r = 0; r < rows; ++r) {
        const double* x = block.data() + r * cols;
        for (std::size_t t = 0; t < cols; ++t) {
            const double d = x[t] - mean[t];
            out[t] += d * d;
        }
    }
    const double inv_n1 = 1.0 / static_cast<double>(rows - 1);
    for (auto& v : out)
        v = std::sqrt(v * inv_n1);
}

struct Workspace {
    std::vector<std::size_t> idx1, idx2, nested1, nested2, composed1, composed2, counts;
    std::vector<double> block, mean, sd, xb;
};

// Standard deviation over Bs replications of the difference of means of
// groups resampled from the subsets base1/base2 of y1/y2.
inline void nested_sigma(const PirMatrix& y1, std::span<const std::size_t> base1, const PirMatrix& y2,
                         std::span<const std::size_t> base2, std::size_t Bs, RngStream& rng, Workspace& ws) {
    const std::size_t ns = y1.cols();
    ws.block.resize(Bs * ns);
    for (std::size_t b = 0; b < Bs; ++b) {
        resample_indices(base1.size(), rng, ws.nested1);
        resample_indices(base2.size(), rng, ws.nested2);
        compose(base1, ws.nested1, ws.composed1);
        compose(base2, ws.nested2, ws.composed2);
        resampled_diff(y1, ws.composed1, y2, ws.composed2, ws.counts, ws.block.data() + b * ns);
    }
    column_std(ws.block, Bs, ns, ws.mean, ws.sd);
}

inline std::vector<std::size_t> identity_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = i;
    return v;
}

inline unsigned resolve_threads(unsigned requested) {
    if (requested == 0)
        requested = std::max(1u, std::thread::hardware_concurrency());
    return requested;
}

} // namespace detail

/// Pointwise standard deviation over Bs bootstrap replications of
/// diff_of_means on groups resampled with replacement.
inline std::vector<double> bootstrap_sigma(std::span<const Pir> g1, std::span<const Pir> g2, std::size_t Bs,
                                           RngStream& rng) {
    if (g1.size() < 2 || g2.size() < 2)
        throw ValidationError("bootstrap needs at least 2 members per group");
    if (Bs < 2)
        throw ValidationError("Bs must be at least 2, got " + std::to_string(Bs));
    const detail::PirMatrix y1(g1), y2(g2);
    if (y1.cols() != y2.cols())
        throw LengthMismatchError("groups have PIRs of different lengths");
    detail::Workspace ws;
    const auto all1 = detail::identity_indices(y1.rows());
    const auto all2 = detail::identity_indices(y2.rows());
    detail::nested_sigma(y1, all1, y2, all2, Bs, rng, ws);
    return ws.sd;
}

/// Zero-line test on a band: rejection and the maximal runs where 0 is outside.
struct ZeroLineDecision {
    bool reject = false;
    std::vector<Crossing> crossings;
};

inline bool zero_excluded(double lower, double upper) noexcept { return lower > 0.0 || upper < 0.0; }

inline ZeroLineDecision zero_line_decision(std::span<const double> upper, std::span<const double> lower,
                                           const TimeGrid& tg) {
    if (upper.size() != lower.size() || upper.size() != tg.n_samples())
        throw LengthMismatchError("band and time grid differ in length");
    ZeroLineDecision d;
    std::size_t t = 0;
    while (t < upper.size()) {
        if (!zero_excluded(lower[t], upper[t])) {
            ++t;
            continue;
        }
        const std::size_t first = t;
        while (t < upper.size() && zero_excluded(lower[t], upper[t]))
            ++t;
        d.crossings.push_back(Crossing{tg.time(first), tg.time(t - 1), first, t - first});
    }
    d.reject = !d.crossings.empty();
    return d;
}

/// Confidence band on the difference of the group mean PIRs, with the
/// critical constant from a nested (pivotised) bootstrap.
///
/// Random streams: stream 0 drives the Bs replications that estimate sigma on
/// the original groups; stream b + 1 drives outer replication b together with
/// its nested Bs loop. The result therefore does not depend on `threads`.
inline BandResult confidence_band_difference(std::span<const Pir> pirs1, std::span<const Pir> pirs2,
                                             const TimeGrid& tg, const BootstrapParams& params) {
    params.validate();
    if (pirs1.size() < 2 || pirs2.size() < 2)
        throw ValidationError("each group needs at least 2 members (got " + std::to_string(pirs1.size()) +
                              " and " + std::to_string(pirs2.size()) + ")");
    const detail::PirMatrix y1(pirs1), y2(pirs2);
    if (y1.cols() != y2.cols() || y1.cols() != tg.n_samples())
        throw LengthMismatchError("PIR lengths do not match the time grid");
    const std::size_t ns = y1.cols();
    const double scale = std::max(y1.max_abs(), y2.max_abs());

    BandResult res;
    res.avg = diff_of_means(pirs1, pirs2);

    const auto all1 = detail::identity_indices(y1.rows());
    const auto all2 = detail::identity_indices(y2.rows());
    {
        detail::Workspace ws;
        RngStream rng(params.seed, 0);
        detail::nested_sigma(y1, all1, y2, all2, params.Bs, rng, ws);
        res.sigma = ws.sd;
    }

    std::vector<double> stats(params.B, 0.0);
    std::vector<unsigned char> degenerate(params.B, 0);
    std::atomic<std::size_t> next{0};
    constexpr std::size_t chunk = 8;

    auto worker = [&] {
        detail::Workspace ws;
        ws.xb.resize(ns);
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= params.B)
                break;
            const std::size_t end = std::min(begin + chunk, params.B);
            for (std::size_t b = begin; b < end; ++b) {
                RngStream rng(params.seed, static_cast<std::uint64_t>(b) + 1);
                resample_indices(y1.rows(), rng, ws.idx1);
                resample_indices(y2.rows(), rng, ws.idx2);
                detail::resampled_diff(y1, ws.idx1, y2, ws.idx2, ws.counts, ws.xb.data());
                detail::nested_sigma(y1, ws.idx1, y2, ws.idx2, params.Bs, rng, ws);
                const auto p = max_pivot_statistic(res.avg.samples, ws.xb, ws.sd, params.sigma_floor, scale);
                stats[b] = p.value;
                degenerate[b] = p.degenerate ? 1 : 0;
            }
        }
    };

    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::size_t>(detail::resolve_threads(params.threads), params.B));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
    }

    std::sort(stats.begin(), stats.end());
    res.stats = std::move(stats);
    for (auto d : degenerate)
        res.degenerate_replicates += d;
    res.cc = critical_constant(res.stats, params.alpha, params.quantile_method);

    res.band_upper.resize(ns);
    res.band_lower.resize(ns);
    double sigma_max = 0.0;
    for (std::size_t t = 0; t < ns; ++t) {
        res.band_upper[t] = res.avg.samples[t] + res.cc * res.sigma[t];
        res.band_lower[t] = res.avg.samples[t] - res.cc * res.sigma[t];
        sigma_max = std::max(sigma_max, res.sigma[t]);
    }
    res.degenerate = !(sigma_max > params.sigma_floor.relative_epsilon * scale) ||
                     res.degenerate_replicates == params.B;

    auto decision = zero_line_decision(res.band_upper, res.band_lower, tg);
    res.reject = decision.reject;
    res.crossings = std::move(decision.crossings);
    return res;
}

/// PIRs of every member of a group on the given time grid.
inline std::vector<Pir> group_pirs(const FrfGroup& group, const TimeGrid& tg) {
    std::vector<Pir> out;
    out.reserve(group.size());
    for (const auto& h : group.members())
        out.push_back(pir_from_frf(h, group.grid(), tg));
    return out;
}

inline BandResult confidence_band_difference(const FrfGroup& group1, const FrfGroup& group2, const TimeGrid& tg,
                                             const BootstrapParams& params) {
    if (!(group1.grid() == group2.grid()))
        throw ValidationError("groups are defined on different frequency grids");
    if (group1.size() < 2 || group2.size() < 2)
        throw ValidationError("each group needs at least 2 members (got " + std::to_string(group1.size()) +
                              " and " + std::to_string(group2.size()) + ")");
    const auto p1 = group_pirs(group1, tg);
    const auto p2 = group_pirs(group2, tg);
    return confidence_band_difference(p1, p2, tg, params);
}

} // namespace frfboot
