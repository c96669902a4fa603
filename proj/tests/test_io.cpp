#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ratlas/discrete.hpp"
#include "ratlas/io.hpp"

using namespace ratlas;

namespace {
Trajectory sample_trajectory() {
    Trajectory t;
    t.param_name = VaryParam::Mu;
    for (int i = 0; i < 5; ++i) {
        RootResult r;
        r.zeta = {1.0 + 0.1 * i, -1e-4 * i};
        r.residual = 1e-13;
        t.samples.push_back({0.01 * (i + 1), r});
    }
    return t;
}
} // namespace

TEST_CASE("csv serialization is deterministic") {
    const auto t = sample_trajectory();
    const auto a = io::trajectory_csv(t, 0);
    const auto b = io::trajectory_csv(t, 0);
    CHECK(a == b);
    CHECK(a.substr(0, 31) == "param,re,im,branch,residual\n0.0");

    std::istringstream is(a);
    std::string line;
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 6); // header + 5 samples
}

TEST_CASE("eigencurve csv identical across parallel and serial kernels") {
    const auto par = discrete::eigencurves(0.1, 0.01, {-0.2, 0.2}, 101, true);
    const auto ser = discrete::eigencurves(0.1, 0.01, {-0.2, 0.2}, 101, false);
    CHECK(io::eigencurves_csv(par) == io::eigencurves_csv(ser));
}

TEST_CASE("atomic file writes leave no temp files") {
    const std::string path = "io_test_output.csv";
    io::write_file_atomic(path, "a,b\n1,2\n");
    std::ifstream f(path);
    std::string all((std::istreambuf_iterator<char>(f)),
                    std::istreambuf_iterator<char>());
    CHECK(all == "a,b\n1,2\n");
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
    std::remove(path.c_str());
}

TEST_CASE("format_double round-trips") {
    for (double v : {1.0 / 3.0, -2.7e-6, 548.1439920189041, 0.0}) {
        const auto s = io::format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("svg contains one polyline per branch") {
    std::vector<std::vector<std::pair<double, double>>> branches{
        {{0.0, 0.0}, {1.0, 1.0}}, {{0.0, 1.0}, {1.0, 0.0}}};
    const auto svg = io::svg_polylines(branches);
    std::size_t count = 0, pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        ++count;
        ++pos;
    }
    CHECK(count == 2);
    CHECK(svg.find("<svg") == 0);
}
