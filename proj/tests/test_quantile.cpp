#include "frfboot/quantile.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace frfboot;

TEST_CASE("order-statistic critical constant", "[quantile]") {
    std::vector<double> stats(100);
    std::iota(stats.begin(), stats.end(), 1.0);
    std::mt19937_64 rng(3);
    std::shuffle(stats.begin(), stats.end(), rng);

    CHECK(critical_constant(stats, 0.95) == 95.0);
    CHECK(critical_constant(stats, 0.99) == 99.0);
    CHECK(critical_constant(stats, 0.9) == 90.0);
    CHECK(critical_constant(stats, 0.951) == 96.0);
    CHECK(critical_constant(stats, 0.001) == 1.0);
    CHECK(critical_constant(std::vector<double>{4.2}, 0.5) == 4.2);
}

TEST_CASE("critical constant is monotone in alpha", "[quantile][property]") {
    std::mt19937_64 rng(8);
    std::exponential_distribution<double> ed(1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> stats(500);
        for (auto& s : stats)
            s = ed(rng);
        for (auto m : {QuantileMethod::order, QuantileMethod::histogram}) {
            double prev = -1.0;
            for (double a : {0.5, 0.8, 0.9, 0.95, 0.975, 0.99, 0.999}) {
                const double c = critical_constant(stats, a, m);
                CHECK(c >= prev);
                prev = c;
            }
        }
    }
}

TEST_CASE("histogram critical constant", "[quantile]") {
    std::mt19937_64 rng(21);
    std::exponential_distribution<double> ed(1.0);
    std::vector<double> stats(10000);
    for (auto& s : stats)
        s = ed(rng);

    SECTION("agrees with the direct cumulative-histogram oracle") {
        for (double a : {0.9, 0.95, 0.99})
            CHECK(critical_constant(stats, a, QuantileMethod::histogram) == oracle::histogram_constant(stats, a));
    }
    SECTION("within one bin width of the order statistic at the usual levels") {
        const double w = histogram_bin_width(stats);
        for (double a : {0.9, 0.95}) {
            INFO("alpha " << a);
            const double h = critical_constant(stats, a, QuantileMethod::histogram);
            const double o = critical_constant(stats, a, QuantileMethod::order);
            CHECK(std::abs(h - o) <= w);
        }
    }
    SECTION("histogram constant is the left edge of the bin holding the next order statistic") {
        // Far in the tail consecutive order statistics can sit more than a bin apart.
        std::vector<double> sorted = stats;
        std::sort(sorted.begin(), sorted.end());
        const double w = histogram_bin_width(stats);
        for (double a : {0.9, 0.95, 0.99}) {
            INFO("alpha " << a);
            const auto k = static_cast<std::size_t>(std::llround(a * 10000.0));
            const double h = critical_constant(stats, a, QuantileMethod::histogram);
            CHECK(h <= sorted[k]);
            CHECK(sorted[k] < h + w * (1.0 + 1e-9));
        }
    }
    SECTION("constant statistics") {
        CHECK(critical_constant(std::vector<double>(10, 2.5), 0.95, QuantileMethod::histogram) == 2.5);
    }
}

TEST_CASE("critical constant errors", "[quantile]") {
    CHECK_THROWS_AS(critical_constant(std::vector<double>{}, 0.95), ValidationError);
    CHECK_THROWS_AS(critical_constant(std::vector<double>{1.0}, 0.0), ValidationError);
    CHECK_THROWS_AS(critical_constant(std::vector<double>{1.0}, 1.0), ValidationError);
    CHECK_THROWS_AS(parse_quantile_method("median"), ValidationError);
    CHECK(parse_quantile_method("histogram") == QuantileMethod::histogram);
}
