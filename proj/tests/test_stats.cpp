#include "frfboot/stats.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace frfboot;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<Pir> random_pirs(std::mt19937_64& rng, std::size_t n, std::size_t len) {
    std::normal_distribution<double> nd(0.0, 2.0);
    std::vector<Pir> out(n, Pir{std::vector<double>(len)});
    for (auto& p : out)
        for (auto& v : p.samples)
            v = nd(rng);
    return out;
}

std::vector<std::vector<double>> rows_of(const std::vector<Pir>& pirs) {
    std::vector<std::vector<double>> r;
    for (const auto& p : pirs)
        r.push_back(p.samples);
    return r;
}

} // namespace

TEST_CASE("pointwise mean and std examples", "[stats]") {
    SECTION("identical PIRs") {
        const Pir p{{1.0, -2.0, 3.5}};
        const std::vector<Pir> v{p, p};
        CHECK(pointwise_mean(v) == p);
        for (double s : pointwise_std(v))
            CHECK(s == 0.0);
    }
    SECTION("{1, 3} at one sample") {
        const std::vector<Pir> v{Pir{{1.0}}, Pir{{3.0}}};
        CHECK(pointwise_mean(v).samples[0] == 2.0);
        CHECK_THAT(pointwise_std(v)[0], WithinAbs(std::sqrt(2.0), 1e-15));
    }
    SECTION("mean of a single PIR is itself") {
        const std::vector<Pir> v{Pir{{4.0, 5.0}}};
        CHECK(pointwise_mean(v) == v[0]);
    }
    SECTION("errors") {
        CHECK_THROWS_AS(pointwise_mean(std::vector<Pir>{}), ValidationError);
        CHECK_THROWS_AS(pointwise_std(std::vector<Pir>{Pir{{1.0}}}), ValidationError);
        CHECK_THROWS_AS(pointwise_mean(std::vector<Pir>{Pir{{1.0}}, Pir{{1.0, 2.0}}}), LengthMismatchError);
        CHECK_THROWS_AS(pointwise_std(std::vector<Pir>{Pir{{1.0}}, Pir{{1.0, 2.0}}}), LengthMismatchError);
    }
}

TEST_CASE("pointwise estimators match the brute-force oracle", "[stats][oracle]") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pirs = random_pirs(rng, 5, 440);
        const auto rows = rows_of(pirs);
        const auto m = pointwise_mean(pirs);
        const auto s = pointwise_std(pirs);
        for (std::size_t t = 0; t < 440; ++t) {
            CHECK_THAT(m.samples[t], WithinAbs(oracle::mean_at(rows, t), 1e-12));
            CHECK_THAT(s[t], WithinAbs(oracle::std_at(rows, t), 1e-12));
        }
    }
}

TEST_CASE("pointwise std invariances", "[stats][property]") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 20; ++trial) {
        auto pirs = random_pirs(rng, 6, 50);
        const auto base = pointwise_std(pirs);

        std::vector<double> offset(50);
        for (auto& o : offset)
            o = 10.0 * nd(rng);
        auto shifted = pirs;
        for (auto& p : shifted)
            for (std::size_t t = 0; t < 50; ++t)
                p.samples[t] += offset[t];
        const auto s_shift = pointwise_std(shifted);

        const double c = -3.5 * std::abs(nd(rng)) - 0.1;
        auto scaled = pirs;
        for (auto& p : scaled)
            for (auto& v : p.samples)
                v *= c;
        const auto s_scale = pointwise_std(scaled);

        for (std::size_t t = 0; t < 50; ++t) {
            CHECK_THAT(s_shift[t], WithinAbs(base[t], 1e-10));
            CHECK_THAT(s_scale[t], WithinAbs(std::abs(c) * base[t], 1e-10));
        }
    }
}
