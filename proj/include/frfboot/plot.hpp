#pragma once

#include "frfboot/bootstrap.hpp"
#include "frfboot/number_format.hpp"
#include "frfboot/residual.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace frfboot {

/// t,avg,upper,lower,zero per sample.
inline std::string band_plot_csv(const BandResult& r, const TimeGrid& tg) {
    std::string out = "t,avg,upper,lower,zero\n";
    for (std::size_t n = 0; n < r.avg.size(); ++n) {
        out += format_double(tg.time(n));
        out += ',' + format_double(r.avg.samples[n]);
        out += ',' + format_double(r.band_upper[n]);
        out += ',' + format_double(r.band_lower[n]);
        out += ",0\n";
    }
    return out;
}

/// f,magnitude per grid frequency.
inline std::string spectrum_plot_csv(const ResidualSpectrum& s) {
    std::string out = "f,magnitude\n";
    for (std::size_t k = 0; k < s.freqs.size(); ++k)
        out += format_double(s.freqs[k]) + ',' + format_double(s.magnitude[k]) + '\n';
    return out;
}

namespace detail {

struct Panel {
    double x0, y0, w, h;
    double xmin, xmax, ymin, ymax;

    double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

inline std::string svg_num(double v) { return format_fixed(v, 2); }

inline void expand_range(double& lo, double& hi) {
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
}

inline std::string polyline(const Panel& p, std::span<const double> x, std::span<const double> y,
                            const char* stroke, const char* extra = "") {
    std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" " + extra + " points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i)
            s += ' ';
        s += svg_num(p.px(x[i])) + ',' + svg_num(p.py(y[i]));
    }
    return s + "\"/>\n";
}

inline std::string frame(const Panel& p, const std::string& title, const std::string& xlabel) {
    std::string s = "<rect x=\"" + svg_num(p.x0) + "\" y=\"" + svg_num(p.y0) + "\" width=\"" + svg_num(p.w) +
                    "\" height=\"" + svg_num(p.h) + "\" fill=\"none\" stroke=\"black\"/>\n";
    s += "<text x=\"" + svg_num(p.x0 + p.w / 2) + "\" y=\"" + svg_num(p.y0 - 8) +
         "\" text-anchor=\"middle\" font-size=\"14\">" + title + "</text>\n";
    s += "<text x=\"" + svg_num(p.x0 + p.w / 2) + "\" y=\"" + svg_num(p.y0 + p.h + 32) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + xlabel + "</text>\n";
    const auto label = [&](double x, double y, double v, const char* anchor) {
        return "<text x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) + "\" text-anchor=\"" + anchor +
               "\" font-size=\"10\">" + format_fixed(v, 3) + "</text>\n";
    };
    s += label(p.x0, p.y0 + p.h + 14, p.xmin, "start");
    s += label(p.x0 + p.w, p.y0 + p.h + 14, p.xmax, "end");
    s += label(p.x0 - 4, p.y0 + p.h, p.ymin, "end");
    s += label(p.x0 - 4, p.y0 + 10, p.ymax, "end");
    return s;
}

} // namespace detail

/// Two-panel figure: band on the mean difference against the zero line
/// (left) and the residual magnitude spectrum (right).
inline std::string render_svg(const BandResult& r, const TimeGrid& tg, const ResidualSpectrum& spec) {
    const auto t = tg.times();
    double ylo = 0.0, yhi = 0.0;
    for (std::size_t n = 0; n < t.size(); ++n) {
        ylo = std::min({ylo, r.band_lower[n], r.avg.samples[n]});
        yhi = std::max({yhi, r.band_upper[n], r.avg.samples[n]});
    }
    detail::expand_range(ylo, yhi);
    const double tmax = t.size() > 1 ? t.back() : 1.0;
    const detail::Panel left{70, 40, 520, 320, 0.0, tmax, ylo, yhi};

    double mmax = 0.0;
    for (double m : spec.magnitude)
        mmax = std::max(mmax, m);
    if (!(mmax > 0.0))
        mmax = 1.0;
    const double fmax = spec.freqs.empty() ? 1.0 : spec.freqs.back() * 1.05;
    const detail::Panel right{680, 40, 420, 320, 0.0, fmax, 0.0, mmax * 1.1};

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1140\" height=\"420\" "
                    "viewBox=\"0 0 1140 420\" font-family=\"sans-serif\">\n"
                    "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += detail::frame(left, "Difference of means with confidence band", "t (s)");
    const std::vector<double> zero(t.size(), 0.0);
    s += detail::polyline(left, t, r.band_upper, "#4a7bd0");
    s += detail::polyline(left, t, r.band_lower, "#4a7bd0");
    s += detail::polyline(left, t, r.avg.samples, "black");
    s += detail::polyline(left, t, zero, "#c0392b", "stroke-dasharray=\"6,4\"");
    for (const auto& c : r.crossings) {
        const double xa = left.px(c.t_start), xb = left.px(c.t_end);
        s += "<rect x=\"" + detail::svg_num(xa - 1) + "\" y=\"" + detail::svg_num(left.y0) + "\" width=\"" +
             detail::svg_num(std::max(2.0, xb - xa + 2)) + "\" height=\"" + detail::svg_num(left.h) +
             "\" fill=\"#c0392b\" fill-opacity=\"0.15\"/>\n";
    }

    s += detail::frame(right, "Residual spectrum |R(f)|", "f (Hz)");
    for (std::size_t k = 0; k < spec.freqs.size(); ++k) {
        const double x = right.px(spec.freqs[k]);
        s += "<line x1=\"" + detail::svg_num(x) + "\" y1=\"" + detail::svg_num(right.py(0.0)) + "\" x2=\"" +
             detail::svg_num(x) + "\" y2=\"" + detail::svg_num(right.py(spec.magnitude[k])) +
             "\" stroke=\"#4a7bd0\" stroke-width=\"3\"/>\n";
        s += "<circle cx=\"" + detail::svg_num(x) + "\" cy=\"" + detail::svg_num(right.py(spec.magnitude[k])) +
             "\" r=\"3\" fill=\"#4a7bd0\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace frfboot
