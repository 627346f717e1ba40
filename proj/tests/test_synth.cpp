#include "frfboot/synth.hpp"

#include <catch_amalgamated.hpp>

using namespace frfboot;

TEST_CASE("synth_group", "[synth]") {
    const auto g = posture_grid();
    const auto base = default_base_frf(g);

    SECTION("zero noise copies the base") {
        const auto grp = synth_group(base, g, 0.0, 5, 1);
        REQUIRE(grp.size() == 5);
        for (const auto& m : grp.members())
            CHECK(m == base);
    }
    SECTION("fixed seed is reproducible bit for bit") {
        const auto a = synth_group(base, g, 0.1, 8, 77);
        const auto b = synth_group(base, g, 0.1, 8, 77);
        CHECK(a.members() == b.members());
        const auto c = synth_group(base, g, 0.1, 8, 78);
        CHECK_FALSE(a.members() == c.members());
    }
    SECTION("sample mean converges to the base") {
        const double sigma = 0.1;
        const auto grp = synth_group(base, g, sigma, 10000, 3);
        for (std::size_t k = 0; k < g.size(); ++k) {
            Complex mean{0.0, 0.0};
            for (const auto& m : grp.members())
                mean += m.values[k];
            mean /= 10000.0;
            CHECK(std::abs(mean.real() - base.values[k].real()) < 3.0 * sigma / 100.0);
            CHECK(std::abs(mean.imag() - base.values[k].imag()) < 3.0 * sigma / 100.0);
        }
    }
    SECTION("errors") {
        CHECK_THROWS_AS(synth_group(base, g, 0.1, 1, 1), ValidationError);
        CHECK_THROWS_AS(synth_group(base, g, -0.1, 3, 1), ValidationError);
    }
    SECTION("shift_real") {
        const auto a = synth_group(base, g, 0.1, 4, 5);
        const auto b = shift_real(a, 1.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t k = 0; k < g.size(); ++k) {
                CHECK(b[i].values[k].real() == a[i].values[k].real() + 1.0);
                CHECK(b[i].values[k].imag() == a[i].values[k].imag());
            }
    }
}

TEST_CASE("full synthetic pipeline", "[synth][pipeline]") {
    const auto g = posture_grid();
    const PipelineConfig cfg;

    SECTION("noise-free subjects are identical and match the band-averaged model") {
        const auto grp = synth_group_pipeline(cfg, g, 0.0, 3, 1);
        REQUIRE(grp.size() == 3);
        CHECK(grp[0] == grp[1]);
        CHECK(grp[1] == grp[2]);
        // expected: model response averaged over each band's comb lines
        const auto bands = posture_band_spec();
        for (std::size_t b = 0; b < g.size(); ++b) {
            Complex sum{0.0, 0.0};
            int count = 0;
            for (int k = 1; k < 200; k += 2) {
                const double f = 0.05 * k;
                if (f >= bands.ranges[b].first && f <= bands.ranges[b].second) {
                    sum += cfg.system.response(f, cfg.sample_rate);
                    ++count;
                }
            }
            CHECK(std::abs(grp[0].values[b] - sum / static_cast<double>(count)) < 1e-6);
        }
    }
    SECTION("noise makes subjects differ, deterministically") {
        const auto a = synth_group_pipeline(cfg, g, 0.05, 3, 9);
        const auto b = synth_group_pipeline(cfg, g, 0.05, 3, 9);
        CHECK(a.members() == b.members());
        CHECK_FALSE(a[0] == a[1]);
    }
}
