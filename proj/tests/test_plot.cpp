#include "frfboot/bootstrap.hpp"
#include "frfboot/plot.hpp"
#include "frfboot/residual.hpp"
#include "frfboot/synth.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

using namespace frfboot;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1))
        ++n;
    return n;
}

} // namespace

TEST_CASE("plot outputs", "[plot]") {
    const auto grid = posture_grid();
    const auto tg = make_time_grid(grid);
    const auto base = default_base_frf(grid);
    BootstrapParams p;
    p.B = 100;
    p.Bs = 10;
    p.seed = 3;
    const auto r = confidence_band_difference(synth_group(base, grid, 0.1, 4, 1),
                                              shift_real(synth_group(base, grid, 0.1, 4, 2), 0.5), tg, p);
    const auto spec = residual_spectrum(zero_line_residual(r), tg, grid);

    SECTION("band data") {
        const auto lines = lines_of(band_plot_csv(r, tg));
        REQUIRE(lines.size() == 441);
        CHECK(lines[0] == "t,avg,upper,lower,zero");
        for (std::size_t i = 1; i < lines.size(); ++i)
            CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 4);
        CHECK(lines[1].rfind("0,", 0) == 0);
    }
    SECTION("spectrum data") {
        const auto lines = lines_of(spectrum_plot_csv(spec));
        REQUIRE(lines.size() == 12);
        CHECK(lines[0] == "f,magnitude");
        CHECK(std::stod(lines[1].substr(0, lines[1].find(','))) == 0.05);
    }
    SECTION("svg") {
        const auto svg = render_svg(r, tg, spec);
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(count(svg, "<polyline") >= 4);
        CHECK(count(svg, "<") == count(svg, ">"));
        CHECK(svg.find("nan") == std::string::npos);
    }
}
