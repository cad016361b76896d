#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "navsim/scenario.hpp"
#include "navsim/simulate.hpp"

namespace navsim {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvHeader =
    "t,x,y,theta,u,d,beta,mode,submode,sigma";

namespace detail {

// %.17g keeps round trips bit-exact and output platform-stable.
inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace detail

inline void write_csv(const RunRecord& rec, std::ostream& os) {
    os << kCsvHeader << "\n";
    for (const auto& sm : rec.series) {
        os << detail::fmt(sm.t) << ',' << detail::fmt(sm.x) << ','
           << detail::fmt(sm.y) << ',' << detail::fmt(sm.theta) << ','
           << detail::fmt(sm.u) << ',' << detail::fmt(sm.d) << ','
           << detail::fmt(sm.beta) << ','
           << (sm.mode == Mode::Pursuit ? 'A' : 'B') << ','
           << submode_name(sm.submode) << ',' << (sm.sigma > 0 ? 1 : -1)
           << "\n";
    }
}

inline void write_csv(const RunRecord& rec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    write_csv(rec, out);
}

inline std::vector<Sample> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty record file");
    if (line == std::string(kCsvHeader) + "\r") line.pop_back();
    if (line != kCsvHeader) throw IoError("unexpected record header");
    std::vector<Sample> out;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != 10) throw IoError("bad record row: " + line);
        Sample sm;
        sm.t = std::stod(cells[0]);
        sm.x = std::stod(cells[1]);
        sm.y = std::stod(cells[2]);
        sm.theta = std::stod(cells[3]);
        sm.u = std::stod(cells[4]);
        sm.d = std::stod(cells[5]);
        sm.beta = std::stod(cells[6]);
        sm.mode = cells[7] == "A" ? Mode::Pursuit : Mode::Avoid;
        if (cells[8] == "IT") sm.submode = SubMode::InitialTurn;
        else if (cells[8] == "SMEC") sm.submode = SubMode::WallFollow;
        else if (cells[8] == "SMT") sm.submode = SubMode::TargetSlide;
        else if (cells[8] == "BANG") sm.submode = SubMode::Bang;
        else sm.submode = SubMode::None;
        sm.sigma = std::stoi(cells[9]);
        out.push_back(sm);
    }
    return out;
}

inline std::vector<Sample> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_csv(in);
}

namespace detail {

inline void svg_polyline(std::ostream& os, const std::vector<Vec2>& pts,
                         const std::string& color, double width,
                         bool closed, const std::string& fill = "none") {
    os << "<path d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        os << (i == 0 ? "M " : "L ") << fmt(pts[i].x) << ' '
           << fmt(-pts[i].y) << ' ';
    if (closed) os << "Z";
    os << "\" fill=\"" << fill << "\" stroke=\"" << color
       << "\" stroke-width=\"" << width << "\"/>\n";
}

inline const char* mode_color(Mode mode, SubMode sub) {
    if (mode == Mode::Pursuit)
        return sub == SubMode::TargetSlide ? "#1f77b4" : "#2ca02c";
    switch (sub) {
        case SubMode::InitialTurn: return "#d62728";
        case SubMode::WallFollow: return "#ff7f0e";
        case SubMode::TargetSlide: return "#9467bd";
        default: return "#8c564b";
    }
}

}  // namespace detail

// Scene plot: obstacle (filled), the d_safe and d_trig offset curves,
// the target, and the trajectory colored by mode/submode.
inline void write_svg(const std::vector<Sample>& series,
                      const Scenario& sc, std::ostream& os) {
    double x0 = sc.target.x, x1 = sc.target.x;
    double y0 = sc.target.y, y1 = sc.target.y;
    auto grow = [&](const Vec2& p) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    };
    for (const auto& sm : series) grow({sm.x, sm.y});
    const PolyCurve trig = sc.obstacle.polygonize(sc.nav.d_trig, 1e-3);
    for (const auto& p : trig.points) grow(p);
    const double pad = 0.05 * std::max(x1 - x0, y1 - y0) + 0.5;
    x0 -= pad; x1 += pad; y0 -= pad; y1 += pad;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
       << detail::fmt(x0) << ' ' << detail::fmt(-y1) << ' '
       << detail::fmt(x1 - x0) << ' ' << detail::fmt(y1 - y0)
       << "\" width=\"900\" height=\""
       << static_cast<int>(900.0 * (y1 - y0) / (x1 - x0)) << "\">\n";
    os << "<rect x=\"" << detail::fmt(x0) << "\" y=\"" << detail::fmt(-y1)
       << "\" width=\"" << detail::fmt(x1 - x0) << "\" height=\""
       << detail::fmt(y1 - y0) << "\" fill=\"white\"/>\n";

    const double lw = 0.004 * std::max(x1 - x0, y1 - y0);
    detail::svg_polyline(os, sc.obstacle.boundary_polyline().points,
                         "#444444", lw, true, "#cccccc");
    detail::svg_polyline(os,
                         sc.obstacle.polygonize(sc.nav.d_safe, 1e-3).points,
                         "#d62728", 0.5 * lw, true);
    detail::svg_polyline(os, trig.points, "#1f77b4", 0.5 * lw, true);

    // Trajectory, split into single-color runs.
    std::size_t i = 0;
    while (i + 1 < series.size()) {
        const char* color =
            detail::mode_color(series[i].mode, series[i].submode);
        std::vector<Vec2> run;
        run.push_back({series[i].x, series[i].y});
        std::size_t j = i + 1;
        while (j < series.size() &&
               detail::mode_color(series[j].mode, series[j].submode) ==
                   color) {
            run.push_back({series[j].x, series[j].y});
            ++j;
        }
        if (j < series.size()) run.push_back({series[j].x, series[j].y});
        detail::svg_polyline(os, run, color, 1.5 * lw, false);
        i = j;
    }

    os << "<circle cx=\"" << detail::fmt(sc.target.x) << "\" cy=\""
       << detail::fmt(-sc.target.y) << "\" r=\"" << detail::fmt(2.0 * lw)
       << "\" fill=\"#000000\"/>\n";
    if (!series.empty())
        os << "<circle cx=\"" << detail::fmt(series.front().x)
           << "\" cy=\"" << detail::fmt(-series.front().y) << "\" r=\""
           << detail::fmt(2.0 * lw) << "\" fill=\"#2ca02c\"/>\n";
    os << "</svg>\n";
}

inline void write_svg(const std::vector<Sample>& series, const Scenario& sc,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    write_svg(series, sc, out);
}

}  // namespace navsim
