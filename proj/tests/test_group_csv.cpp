#include "frfboot/group_csv.hpp"
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

std::string expect_parse_error(const std::string& text) {
    try {
        (void)read_frf_group(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    FAIL("no ParseError for input");
    return {};
}

} // namespace

TEST_CASE("golden group file", "[io]") {
    const auto bytes = slurp(golden_dir + "/group_paper_grid.csv");
    const auto g = read_frf_group(bytes);
    CHECK(g.size() == 2);
    CHECK(g.grid().size() == 11);
    CHECK(g.grid() == posture_grid());
    CHECK(g.labels() == std::vector<std::string>{"s1", "s2"});
    CHECK(write_frf_group(g) == bytes);
}

TEST_CASE("group file errors", "[io]") {
    const std::string header = "subject,re_0.050,im_0.050,re_0.150,im_0.150\n";

    SECTION("empty data section") {
        CHECK_THROWS_WITH(read_frf_group(header), Catch::Matchers::ContainsSubstring("empty group"));
    }
    SECTION("missing header") {
        CHECK_THROWS_AS(read_frf_group(std::string{}), ParseError);
    }
    SECTION("NaN token names its row and column") {
        const auto msg = expect_parse_error(header + "a,1,2,3,4\nb,1,NaN,3,4\n");
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("column 3") != std::string::npos);
    }
    SECTION("non-numeric field") {
        const auto msg = expect_parse_error(header + "a,1,2,x3,4\n");
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("column 4") != std::string::npos);
    }
    SECTION("ragged row") {
        const auto msg = expect_parse_error(header + "a,1,2,3\n");
        CHECK(msg.find("line 2") != std::string::npos);
    }
    SECTION("header frequencies must increase") {
        CHECK_THROWS_AS(read_frf_group("subject,re_0.150,im_0.150,re_0.050,im_0.050\na,1,2,3,4\n"), ParseError);
        CHECK_THROWS_AS(read_frf_group("subject,re_0.050,im_0.050,re_0.050,im_0.050\na,1,2,3,4\n"), ParseError);
    }
    SECTION("re/im header mismatch") {
        CHECK_THROWS_AS(read_frf_group("subject,re_0.050,im_0.100\na,1,2\n"), ParseError);
    }
    SECTION("error position accessors") {
        try {
            (void)read_frf_group(header + "a,1,2,3,inf\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.column() == 5);
        }
    }
}

TEST_CASE("group files round-trip losslessly", "[io][property]") {
    const auto grid = posture_grid();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> exp10(-300.0, 300.0);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Frf> members(3, Frf{std::vector<Complex>(grid.size())});
        for (auto& m : members)
            for (auto& v : m.values)
                v = {mant(rng) * std::pow(10.0, exp10(rng)), mant(rng)};
        const FrfGroup g(grid, members, {"alpha", "b_2", "subject 3"});
        const auto text = write_frf_group(g);
        const auto back = read_frf_group(text);
        CHECK(back.labels() == g.labels());
        CHECK(back.grid() == g.grid());
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(back.members()[i] == g.members()[i]);
        CHECK(write_frf_group(back) == text);
    }
}
