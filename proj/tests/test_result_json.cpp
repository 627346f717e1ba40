#include "frfboot/bootstrap.hpp"
#include "frfboot/digest.hpp"
#include "frfboot/group_csv.hpp"
#include "frfboot/result_json.hpp"
#include "frfboot/synth.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

using namespace frfboot;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string golden_dir = FRFBOOT_GOLDEN_DIR;

ResultMeta meta_for(const FrequencyGrid& grid, const TimeGrid& tg, const BootstrapParams& p) {
    return ResultMeta{p, grid, tg, 10.0, {{"group1", sha256_hex("a"), 5}, {"group2", sha256_hex("b"), 5}}};
}

void check_same(const ResultDocument& a, const ResultDocument& b) {
    CHECK(a.format_version == b.format_version);
    CHECK(a.software_version == b.software_version);
    CHECK(a.alpha == b.alpha);
    CHECK(a.B == b.B);
    CHECK(a.Bs == b.Bs);
    CHECK(a.seed == b.seed);
    CHECK(a.quantile_method == b.quantile_method);
    CHECK(a.inclusive_endpoint == b.inclusive_endpoint);
    CHECK(a.oversample == b.oversample);
    CHECK(a.sigma_floor == b.sigma_floor);
    CHECK(a.freqs == b.freqs);
    CHECK(a.base_freq == b.base_freq);
    CHECK(a.period == b.period);
    CHECK(a.sample_rate == b.sample_rate);
    CHECK(a.n_samples == b.n_samples);
    CHECK(a.times == b.times);
    CHECK(a.avg == b.avg);
    CHECK(a.sigma == b.sigma);
    CHECK(a.band_upper == b.band_upper);
    CHECK(a.band_lower == b.band_lower);
    CHECK(a.cc == b.cc);
    CHECK(a.reject == b.reject);
    CHECK(a.degenerate == b.degenerate);
    CHECK(a.degenerate_replicates == b.degenerate_replicates);
    CHECK(a.crossings == b.crossings);
    CHECK(a.residual_freqs == b.residual_freqs);
    CHECK(a.residual_re == b.residual_re);
    CHECK(a.residual_im == b.residual_im);
    CHECK(a.residual_magnitude == b.residual_magnitude);
    CHECK(a.stats.count == b.stats.count);
    CHECK(a.stats.min == b.stats.min);
    CHECK(a.stats.median == b.stats.median);
    CHECK(a.stats.max == b.stats.max);
    CHECK(a.stats.quantiles == b.stats.quantiles);
    CHECK(a.inputs == b.inputs);
}

} // namespace

TEST_CASE("golden result document", "[io]") {
    const auto bytes = slurp(golden_dir + "/result.json");
    const auto doc = read_result(bytes);
    CHECK(write_document(doc) == bytes);
    CHECK(doc.n_samples == 440);
    CHECK(doc.avg.size() == 440);
    CHECK(doc.reject == !doc.crossings.empty());
    CHECK(doc.inputs.size() == 2);
    CHECK(doc.inputs[0].sha256 == sha256_hex(slurp(golden_dir + "/group_a.csv")));
    CHECK(doc.inputs[1].sha256 == sha256_hex(slurp(golden_dir + "/group_b.csv")));
}

TEST_CASE("result documents round-trip losslessly", "[io][property]") {
    const auto grid = posture_grid();
    const auto base = default_base_frf(grid);
    BootstrapParams p;
    p.B = 100;
    p.Bs = 10;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        for (bool inclusive : {false, true}) {
            p.seed = seed;
            const auto tg = make_time_grid(grid, 10.0, inclusive);
            const auto g1 = synth_group(base, grid, 0.1, 4, seed);
            const auto g2 = shift_real(synth_group(base, grid, 0.1, 5, seed + 10), 0.2 * static_cast<double>(seed));
            const auto r = confidence_band_difference(g1, g2, tg, p);
            const auto doc = make_document(r, meta_for(grid, tg, p));
            const auto text = write_document(doc);
            const auto back = read_result(text);
            check_same(doc, back);
            CHECK(write_document(back) == text);
        }
    }
}

TEST_CASE("no rejection means no crossings", "[io]") {
    const auto grid = posture_grid();
    const auto tg = make_time_grid(grid);
    const auto base = default_base_frf(grid);
    BootstrapParams p;
    p.B = 100;
    p.Bs = 10;
    p.seed = 4;
    const auto g = synth_group(base, grid, 0.1, 5, 9);
    const auto r = confidence_band_difference(g, g, tg, p);
    REQUIRE_FALSE(r.reject);
    const auto doc = read_result(write_result(r, meta_for(grid, tg, p)));
    CHECK_FALSE(doc.reject);
    CHECK(doc.crossings.empty());
}

TEST_CASE("input digests", "[io]") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const auto bytes = slurp(golden_dir + "/group_paper_grid.csv");
    const auto d0 = sha256_hex(bytes);
    for (std::size_t pos : {std::size_t{0}, bytes.size() / 2, bytes.size() - 1}) {
        auto changed = bytes;
        changed[pos] = static_cast<char>(changed[pos] ^ 1);
        CHECK(sha256_hex(changed) != d0);
    }
}

TEST_CASE("result reader errors", "[io]") {
    const auto bytes = slurp(golden_dir + "/result.json");
    SECTION("version mismatch") {
        auto text = bytes;
        const auto pos = text.find("\"format_version\": 1");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 19, "\"format_version\": 2");
        CHECK_THROWS_AS(read_result(text), VersionError);
    }
    SECTION("truncated document") {
        CHECK_THROWS_AS(read_result(bytes.substr(0, bytes.size() / 2)), ParseError);
        CHECK_THROWS_AS(read_result(std::string{}), ParseError);
    }
    SECTION("missing field") {
        CHECK_THROWS_AS(read_result("{\"format_version\": 1}"), ParseError);
    }
}
