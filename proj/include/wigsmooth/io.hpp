#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wigsmooth/contour.hpp"
#include "wigsmooth/emission.hpp"
#include "wigsmooth/errors.hpp"
#include "wigsmooth/field.hpp"
#include "wigsmooth/tdse.hpp"

namespace wigsmooth::io {

namespace detail {

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void put_f64(std::ostream& os, double v) {
    static_assert(sizeof(double) == 8);
    os.write(reinterpret_cast<const char*>(&v), 8);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), 8);
}

inline double get_f64(std::istream& is) {
    double v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

inline std::uint64_t get_u64(std::istream& is) {
    std::uint64_t v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

}  // namespace detail

inline constexpr char kFieldMagic[16] = {'W', 'I', 'G', 'F', 'I', 'E', 'L', 'D',
                                         '0', '0', '0', '1', 0, 0, 0, 0};
inline constexpr char kSeriesMagic[16] = {'W', 'I', 'G', 'S', 'E', 'R', 'I', 'E',
                                          'S', '0', '0', '0', '1', 0, 0, 0};

/// CSV field format: header `# axis1 min max n ; axis2 min max n`, then one
/// row per axis2 sample (axis2-major), axis1 values comma-separated.
inline void write_field_csv(std::ostream& os, const DistributionField& f) {
    os << "# axis1 " << detail::fmt_double(f.axis1().min) << ' '
       << detail::fmt_double(f.axis1().max) << ' ' << f.n1() << " ; axis2 "
       << detail::fmt_double(f.axis2().min) << ' ' << detail::fmt_double(f.axis2().max) << ' '
       << f.n2() << '\n';
    for (std::size_t j = 0; j < f.n2(); ++j) {
        for (std::size_t i = 0; i < f.n1(); ++i) {
            if (i) os << ',';
            os << detail::fmt_double(f(i, j));
        }
        os << '\n';
    }
}

inline DistributionField read_field_csv(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# axis1 ", 0) != 0)
        throw config_error("field csv: missing axis header");
    double a1min, a1max, a2min, a2max;
    std::size_t n1, n2;
    {
        std::istringstream hs(header.substr(8));
        std::string semi, axis2;
        if (!(hs >> a1min >> a1max >> n1 >> semi >> axis2 >> a2min >> a2max >> n2) ||
            semi != ";" || axis2 != "axis2")
            throw config_error("field csv: malformed axis header");
    }
    DistributionField f(Axis(a1min, a1max, n1), Axis(a2min, a2max, n2));
    std::string line;
    for (std::size_t j = 0; j < n2; ++j) {
        if (!std::getline(is, line)) throw config_error("field csv: truncated rows");
        std::istringstream ls(line);
        std::string cell;
        for (std::size_t i = 0; i < n1; ++i) {
            if (!std::getline(ls, cell, ','))
                throw config_error("field csv: short row " + std::to_string(j));
            f(i, j) = std::stod(cell);
        }
    }
    return f;
}

/// Binary field: 16-byte magic, two axis records (min f64, max f64, n u64,
/// little-endian), then axis1-major f64 values.
inline void write_field_binary(std::ostream& os, const DistributionField& f) {
    os.write(kFieldMagic, 16);
    detail::put_f64(os, f.axis1().min);
    detail::put_f64(os, f.axis1().max);
    detail::put_u64(os, f.n1());
    detail::put_f64(os, f.axis2().min);
    detail::put_f64(os, f.axis2().max);
    detail::put_u64(os, f.n2());
    for (double v : f.values()) detail::put_f64(os, v);
}

inline DistributionField read_field_binary(std::istream& is) {
    char magic[16];
    is.read(magic, 16);
    if (!is || std::memcmp(magic, kFieldMagic, 16) != 0)
        throw config_error("field binary: bad magic");
    const double a1min = detail::get_f64(is), a1max = detail::get_f64(is);
    const auto n1 = static_cast<std::size_t>(detail::get_u64(is));
    const double a2min = detail::get_f64(is), a2max = detail::get_f64(is);
    const auto n2 = static_cast<std::size_t>(detail::get_u64(is));
    if (!is || n1 < 2 || n2 < 2 || n1 > (1u << 24) || n2 > (1u << 24))
        throw config_error("field binary: bad axis record");
    std::vector<double> values(n1 * n2);
    for (double& v : values) v = detail::get_f64(is);
    if (!is) throw config_error("field binary: truncated values");
    return DistributionField(Axis(a1min, a1max, n1), Axis(a2min, a2max, n2), std::move(values));
}

/// Dipole record CSV: `t,ddot_d` rows.
inline void write_series_csv(std::ostream& os, const std::vector<double>& times,
                             const std::vector<double>& values) {
    os << "t,ddot_d\n";
    for (std::size_t k = 0; k < times.size(); ++k)
        os << detail::fmt_double(times[k]) << ',' << detail::fmt_double(values[k]) << '\n';
}

inline void read_series_csv(std::istream& is, std::vector<double>& times,
                            std::vector<double>& values) {
    std::string line;
    if (!std::getline(is, line) || line != "t,ddot_d")
        throw config_error("series csv: missing t,ddot_d header");
    times.clear();
    values.clear();
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw config_error("series csv: malformed row");
        times.push_back(std::stod(line.substr(0, comma)));
        values.push_back(std::stod(line.substr(comma + 1)));
    }
}

/// Binary 1D variant of the field container: magic, one axis record, values.
inline void write_series_binary(std::ostream& os, const std::vector<double>& times,
                                const std::vector<double>& values) {
    if (times.size() != values.size() || times.size() < 2)
        throw config_error("series binary: need at least two samples");
    os.write(kSeriesMagic, 16);
    detail::put_f64(os, times.front());
    detail::put_f64(os, times.back());
    detail::put_u64(os, times.size());
    for (double v : values) detail::put_f64(os, v);
}

inline void read_series_binary(std::istream& is, std::vector<double>& times,
                               std::vector<double>& values) {
    char magic[16];
    is.read(magic, 16);
    if (!is || std::memcmp(magic, kSeriesMagic, 16) != 0)
        throw config_error("series binary: bad magic");
    const double t0 = detail::get_f64(is), t1 = detail::get_f64(is);
    const auto n = static_cast<std::size_t>(detail::get_u64(is));
    if (!is || n < 2 || n > (1u << 28)) throw config_error("series binary: bad axis record");
    Axis ax(t0, t1, n);
    times = ax.samples();
    values.resize(n);
    for (double& v : values) v = detail::get_f64(is);
    if (!is) throw config_error("series binary: truncated values");
}

/// Contour CSV: `level_index,level,polyline_index,axis1,axis2` rows.
inline void write_contours_csv(std::ostream& os, const ContourSet& cs) {
    os << "level_index,level,polyline_index,axis1,axis2\n";
    for (std::size_t l = 0; l < cs.levels.size(); ++l)
        for (std::size_t p = 0; p < cs.polylines[l].size(); ++p)
            for (const auto& v : cs.polylines[l][p])
                os << l << ',' << detail::fmt_double(cs.levels[l]) << ',' << p << ','
                   << detail::fmt_double(v[0]) << ',' << detail::fmt_double(v[1]) << '\n';
}

namespace detail {

struct SvgFrame {
    double x0, x1, y0, y1;             // data bounds
    double width = 800, height = 600;  // pixel canvas
    double margin = 50;

    double px(double x) const {
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin);
    }
    double py(double y) const {
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin);
    }
};

inline std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline void svg_open(std::ostream& os, const SvgFrame& fr) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fr.width << "\" height=\""
       << fr.height << "\" viewBox=\"0 0 " << fr.width << ' ' << fr.height << "\">\n";
    os << "<style>\n"
          "path { fill: none; stroke-width: 1; }\n";
    for (int l = 0; l < 16; ++l) {
        const int shade = 32 + l * 12;
        os << ".level-" << l << " { stroke: rgb(" << shade << ',' << shade << ',' << shade
           << "); }\n";
    }
    os << ".solid { fill: #000; stroke: none; }\n"
          ".open { fill: none; stroke: #000; stroke-width: 1; }\n"
          ".frame { fill: none; stroke: #000; stroke-width: 1; }\n"
          "</style>\n";
    os << "<rect class=\"frame\" x=\"" << fr.margin << "\" y=\"" << fr.margin << "\" width=\""
       << fr.width - 2 * fr.margin << "\" height=\"" << fr.height - 2 * fr.margin << "\"/>\n";
}

}  // namespace detail

/// Contour line art, one path per polyline, level encoded as a stroke class.
inline void write_contours_svg(std::ostream& os, const ContourSet& cs, const Axis& a1,
                               const Axis& a2) {
    detail::SvgFrame fr{a1.min, a1.max, a2.min, a2.max};
    detail::svg_open(os, fr);
    for (std::size_t l = 0; l < cs.levels.size(); ++l)
        for (const auto& line : cs.polylines[l]) {
            os << "<path class=\"level-" << (l % 16) << "\" d=\"";
            for (std::size_t v = 0; v < line.size(); ++v)
                os << (v == 0 ? "M" : " L") << detail::fmt_px(fr.px(line[v][0])) << ' '
                   << detail::fmt_px(fr.py(line[v][1]));
            if (polyline_closed(line)) os << " Z";
            os << "\"/>\n";
        }
    os << "</svg>\n";
}

/// Classical emission map: solid dots for first returns, open circles for
/// later recollisions.
inline void write_emission_svg(std::ostream& os, const std::vector<EmissionPoint>& points,
                               double t_lo, double t_hi, double w_lo, double w_hi) {
    detail::SvgFrame fr{t_lo, t_hi, w_lo, w_hi};
    detail::svg_open(os, fr);
    for (const auto& p : points) {
        if (p.t_emit < t_lo || p.t_emit > t_hi || p.omega < w_lo || p.omega > w_hi) continue;
        os << "<circle class=\"" << (p.return_index == 1 ? "solid" : "open") << "\" cx=\""
           << detail::fmt_px(fr.px(p.t_emit)) << "\" cy=\"" << detail::fmt_px(fr.py(p.omega))
           << "\" r=\"" << (p.return_index == 1 ? "1.2" : "2.4") << "\"/>\n";
    }
    os << "</svg>\n";
}

inline void write_emission_csv(std::ostream& os, const std::vector<EmissionPoint>& points) {
    os << "t_emit,omega,return_index\n";
    for (const auto& p : points)
        os << detail::fmt_double(p.t_emit) << ',' << detail::fmt_double(p.omega) << ','
           << p.return_index << '\n';
}

inline void save_text(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot open for writing: " + path);
    os << content;
}

template <typename Writer>
inline void save_with(const std::string& path, Writer&& writer, bool binary = false) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw config_error("cannot open for writing: " + path);
    writer(os);
}

}  // namespace wigsmooth::io
