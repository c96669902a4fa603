#include "ratlas/io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <limits>

namespace ratlas::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& t, int branch_index) {
    std::string out = "param,re,im,branch,residual\n";
    for (const auto& s : t.samples) {
        out += format_double(s.param);
        out += ',';
        out += format_double(s.root.zeta.real());
        out += ',';
        out += format_double(s.root.zeta.imag());
        out += ',';
        out += std::to_string(branch_index);
        out += ',';
        out += format_double(s.root.residual);
        out += '\n';
    }
    return out;
}

std::string eigencurves_csv(const std::vector<std::array<double, 5>>& rows) {
    std::string out = "delta,e1,e2,e3,e4\n";
    for (const auto& r : rows) {
        for (int i = 0; i < 5; ++i) {
            out += format_double(r[i]);
            out += (i == 4) ? '\n' : ',';
        }
    }
    return out;
}

std::string dressed_csv(const std::vector<std::array<double, 3>>& rows) {
    std::string out = "delta,zeta_minus,zeta_plus\n";
    for (const auto& r : rows) {
        for (int i = 0; i < 3; ++i) {
            out += format_double(r[i]);
            out += (i == 2) ? '\n' : ',';
        }
    }
    return out;
}

void write_file_atomic(const std::string& path, std::string_view content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + tmp + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw Error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("rename " + tmp + " -> " + path + " failed");
}

std::string svg_polylines(
    const std::vector<std::vector<std::pair<double, double>>>& branches,
    int width, int height) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& br : branches)
        for (const auto& [x, y] : br) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmin < xmax)) { xmin -= 0.5; xmax += 0.5; }
    if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }

    const double mx = 40.0, my = 20.0;
    auto sx = [&](double x) {
        return mx + (x - xmin) / (xmax - xmin) * (width - 2 * mx);
    };
    auto sy = [&](double y) {
        return height - my - (y - ymin) / (ymax - ymin) * (height - 2 * my);
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width) + "\" height=\"" +
                      std::to_string(height) + "\">\n";
    svg += "<rect x=\"" + format_double(mx) + "\" y=\"" + format_double(my) +
           "\" width=\"" + format_double(width - 2 * mx) + "\" height=\"" +
           format_double(height - 2 * my) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& br : branches) {
        svg += "<polyline fill=\"none\" stroke=\"black\" points=\"";
        for (const auto& [x, y] : br) {
            svg += format_double(sx(x));
            svg += ',';
            svg += format_double(sy(y));
            svg += ' ';
        }
        svg += "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace ratlas::io
