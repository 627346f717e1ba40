#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace oracle {

/// Exact non-negative rational p/q in lowest terms.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

/// "0.15" -> 3/20
inline Fraction parse_decimal(const std::string& s) {
    std::int64_t num = 0, den = 1;
    bool frac = false;
    for (char c : s) {
        if (c == '.') {
            frac = true;
            continue;
        }
        num = num * 10 + (c - '0');
        if (frac)
            den *= 10;
    }
    const auto g = std::gcd(num, den);
    return {num / g, den / g};
}

/// gcd of reduced fractions: gcd(numerators) / lcm(denominators).
inline Fraction rational_gcd(const std::vector<Fraction>& v) {
    std::int64_t n = 0, d = 1;
    for (const auto& f : v) {
        n = std::gcd(n, f.num);
        d = std::lcm(d, f.den);
    }
    const auto g = std::gcd(n, d);
    return {n / g, d / g};
}

/// (2/N) sum_n x[n] exp(-j 2 pi f n / fs), long double, no phase reduction.
inline std::complex<double> dft_at(const std::vector<double>& x, double fs, double f) {
    long double re = 0, im = 0;
    const long double pi = 3.141592653589793238462643383279502884L;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const long double ph = 2 * pi * static_cast<long double>(f) * static_cast<long double>(n) / fs;
        re += x[n] * std::cos(ph);
        im -= x[n] * std::sin(ph);
    }
    const long double s = 2.0L / static_cast<long double>(x.size());
    return {static_cast<double>(re * s), static_cast<double>(im * s)};
}

/// x(t) = sum_k Re(H_k) cos(2 pi F_k t) - Im(H_k) sin(2 pi F_k t), long double.
inline double pir_sample(const std::vector<std::complex<double>>& h, const std::vector<double>& f, double t) {
    const long double pi = 3.141592653589793238462643383279502884L;
    long double x = 0;
    for (std::size_t k = 0; k < h.size(); ++k) {
        const long double ph = 2 * pi * static_cast<long double>(f[k]) * static_cast<long double>(t);
        x += h[k].real() * std::cos(ph) - h[k].imag() * std::sin(ph);
    }
    return static_cast<double>(x);
}

/// Column mean of rows[i][t] by a straight per-sample sum.
inline double mean_at(const std::vector<std::vector<double>>& rows, std::size_t t) {
    long double s = 0;
    for (const auto& r : rows)
        s += r[t];
    return static_cast<double>(s / static_cast<long double>(rows.size()));
}

/// Column standard deviation, 1/(N-1), computed with long double.
inline double std_at(const std::vector<std::vector<double>>& rows, std::size_t t) {
    const long double m = mean_at(rows, t);
    long double ss = 0;
    for (const auto& r : rows)
        ss += (r[t] - m) * (r[t] - m);
    return static_cast<double>(std::sqrt(ss / static_cast<long double>(rows.size() - 1)));
}

/// Cumulative 1000-bin histogram over [min, max]; left edge of the first bin
/// whose cumulative fraction exceeds alpha. Bins by direct edge comparison.
inline double histogram_constant(std::vector<double> stats, double alpha) {
    const double lo = *std::min_element(stats.begin(), stats.end());
    const double hi = *std::max_element(stats.begin(), stats.end());
    const int bins = 1000;
    std::vector<double> edges(bins + 1);
    for (int i = 0; i <= bins; ++i)
        edges[i] = lo + (hi - lo) * i / bins;
    edges[bins] = hi;
    std::vector<int> counts(bins, 0);
    for (double x : stats) {
        int b = bins - 1;
        for (int i = 0; i < bins; ++i)
            if (x >= edges[i] && x < edges[i + 1]) {
                b = i;
                break;
            }
        ++counts[b];
    }
    int cum = 0;
    for (int i = 0; i < bins; ++i) {
        cum += counts[i];
        if (static_cast<double>(cum) / static_cast<double>(stats.size()) > alpha)
            return edges[i];
    }
    return edges[bins - 1];
}

inline std::vector<std::complex<double>> random_frf(std::mt19937_64& rng, std::size_t m, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, scale);
    std::vector<std::complex<double>> h(m);
    for (auto& v : h)
        v = {nd(rng), nd(rng)};
    return h;
}

} // namespace oracle
