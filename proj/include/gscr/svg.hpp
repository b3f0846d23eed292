#ifndef GSCR_SVG_HPP
#define GSCR_SVG_HPP

// Minimal hand-rolled SVG scatter for constellations: axes, the power
// budget circle, and one dot per point with radius proportional to its
// probability. CSV is the primary output; this is for eyeballing.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "gscr/shaping.hpp"

namespace gscr {

inline void write_constellation_svg(const std::string& path, const Constellation& c,
                                    double power_budget) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("svg: cannot open for writing: " + path);
    const double budget_r = std::sqrt(power_budget);
    double extent = budget_r;
    for (const auto& s : c.points) extent = std::max(extent, s.norm());
    extent *= 1.15;

    const int size = 640;
    const double half = size / 2.0;
    auto px = [&](double v) { return half + v / extent * (half - 10.0); };
    auto py = [&](double v) { return half - v / extent * (half - 10.0); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
        << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"0\" y1=\"" << half << "\" x2=\"" << size << "\" y2=\"" << half
        << "\" stroke=\"#cccccc\"/>\n";
    out << "<line x1=\"" << half << "\" y1=\"0\" x2=\"" << half << "\" y2=\"" << size
        << "\" stroke=\"#cccccc\"/>\n";
    out << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\""
        << (budget_r / extent * (half - 10.0))
        << "\" fill=\"none\" stroke=\"#8888ff\" stroke-dasharray=\"6 4\"/>\n";
    for (std::size_t j = 0; j < c.order(); ++j) {
        const double r = 2.0 + 40.0 * c.probs[j];
        out << "<circle cx=\"" << px(c.points[j].x) << "\" cy=\"" << py(c.points[j].y)
            << "\" r=\"" << r << "\" fill=\"#d04040\" fill-opacity=\"0.75\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace gscr

#endif  // GSCR_SVG_HPP
