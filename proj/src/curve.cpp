// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/curve.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace chanex {

namespace {

void print_value(std::FILE* f, double v) {
    if (std::isinf(v))
        std::fprintf(f, "inf");
    else
        std::fprintf(f, "%.17g", v);
}

double parse_value(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

}  // namespace

void write_curve_csv(const Curve& curve, const std::string& path) {
    for (double v : curve.values)
        if (std::isnan(v))
            throw std::invalid_argument("curve: refusing to serialize NaN (" + curve.kind +
                                        "); values must be finite or infinite markers");
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("curve: cannot open " + path + " for writing");
    std::fprintf(f, "f_norm,f_hz,value,kind\n");
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        std::fprintf(f, "%.17g,%.17g,", curve.f_norm[i], curve.f_hz[i]);
        print_value(f, curve.values[i]);
        std::fprintf(f, ",%s\n", curve.kind.c_str());
    }
    std::fclose(f);
}

Curve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("curve: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("curve: empty file " + path);

    Curve c;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f_norm, f_hz, value, kind;
        if (!std::getline(ss, f_norm, ',') || !std::getline(ss, f_hz, ',') ||
            !std::getline(ss, value, ',') || !std::getline(ss, kind))
            throw std::runtime_error("curve: malformed row " + std::to_string(lineno) + " in " +
                                     path);
        try {
            c.f_norm.push_back(std::stod(f_norm));
            c.f_hz.push_back(std::stod(f_hz));
            c.values.push_back(parse_value(value));
        } catch (const std::exception&) {
            throw std::runtime_error("curve: malformed row " + std::to_string(lineno) + " in " +
                                     path);
        }
        c.kind = kind;
    }
    return c;
}

void write_bound_csv(const std::string& path, const std::vector<double>& f_hz,
                     const std::vector<double>& f_norm, const std::vector<double>& lb_full,
                     const std::vector<double>& lb_simplified) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("curve: cannot open " + path + " for writing");
    std::fprintf(f, "f_hz,f_norm,lb_full,lb_simplified\n");
    for (std::size_t i = 0; i < f_hz.size(); ++i) {
        std::fprintf(f, "%.17g,%.17g,", f_hz[i], f_norm[i]);
        print_value(f, lb_full[i]);
        std::fprintf(f, ",");
        print_value(f, lb_simplified[i]);
        std::fprintf(f, "\n");
    }
    std::fclose(f);
}

double compare_curves(const Curve& a, const Curve& b, CurveMetric metric) {
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("compare_curves: grids differ in length");
    for (std::size_t i = 0; i < a.f_norm.size(); ++i)
        if (a.f_norm[i] != b.f_norm[i])
            throw std::invalid_argument("compare_curves: frequency grids do not match");

    if (metric == CurveMetric::MaxRatioDb) {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            const bool ia = std::isinf(a.values[i]);
            const bool ib = std::isinf(b.values[i]);
            if (ia && ib) continue;
            if (ia || ib) return std::numeric_limits<double>::infinity();
            worst = std::max(worst, std::abs(10.0 * std::log10(a.values[i] / b.values[i])));
        }
        return worst;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.values.size()));
}

}  // namespace chanex
