// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/path_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace chanex {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    // into (-pi, pi]
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

double azimuth_distance(double a, double b) {
    return std::abs(wrap_angle(a - b));
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// One grouping-and-collapse pass. Returns true if anything merged.
bool merge_pass(PathSet& ps, double delay_tol, double angle_tol, MergeDiagnostics& diag) {
    const int L = ps.size();
    UnionFind uf(L);
    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            const auto& a = ps.paths[i];
            const auto& b = ps.paths[j];
            if (std::abs(a.tau - b.tau) <= delay_tol &&
                azimuth_distance(a.phi, b.phi) <= angle_tol &&
                std::abs(a.theta - b.theta) <= angle_tol) {
                uf.unite(i, j);
            }
        }
    }

    std::vector<std::vector<int>> groups;
    std::vector<int> root_to_group(L, -1);
    for (int i = 0; i < L; ++i) {
        const int r = uf.find(i);
        if (root_to_group[r] < 0) {
            root_to_group[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[root_to_group[r]].push_back(i);
    }
    if (static_cast<int>(groups.size()) == L) return false;

    PathSet merged;
    merged.paths.reserve(groups.size());
    for (const auto& g : groups) {
        if (g.size() == 1) {
            merged.paths.push_back(ps.paths[g[0]]);
            continue;
        }
        ++diag.groups_merged;
        std::complex<double> alpha{0.0, 0.0};
        double wsum = 0.0, tau = 0.0, theta = 0.0, cx = 0.0, sx = 0.0;
        double magsum = 0.0;
        for (int idx : g) magsum += std::abs(ps.paths[idx].alpha);
        for (int idx : g) {
            const auto& p = ps.paths[idx];
            const double mag = std::abs(p.alpha);
            // zero-gain groups fall back to an unweighted mean position
            const double w = magsum > 0.0 ? mag : 1.0;
            alpha += p.alpha;
            wsum += w;
            tau += w * p.tau;
            theta += w * p.theta;
            cx += w * std::cos(p.phi);
            sx += w * std::sin(p.phi);
        }
        PathParams out;
        out.alpha = alpha;
        out.tau = tau / wsum;
        out.theta = theta / wsum;
        out.phi = std::atan2(sx, cx);
        merged.paths.push_back(out);
        if (magsum > 0.0 && std::abs(alpha) < 1e-9 * magsum) diag.degenerate_cancellation = true;
    }
    ps = std::move(merged);
    return true;
}

}  // namespace

double PathSet::min_delay() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : paths) m = std::min(m, p.tau);
    return m;
}

double PathSet::max_delay() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& p : paths) m = std::max(m, p.tau);
    return m;
}

double PathSet::delay_spread() const { return max_delay() - min_delay(); }

void PathSet::validate() const {
    if (paths.empty()) throw std::invalid_argument("path set: at least one path required");
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto& p = paths[i];
        if (!(p.tau >= 0.0) || !std::isfinite(p.tau))
            throw std::invalid_argument("path set: delay must be finite and >= 0");
        if (!(p.theta >= 0.0 && p.theta <= kPi))
            throw std::invalid_argument("path set: elevation must lie in [0, pi]");
        if (!(p.phi > -kPi && p.phi <= kPi))
            throw std::invalid_argument("path set: azimuth must lie in (-pi, pi]");
        if (!std::isfinite(std::abs(p.alpha)))
            throw std::invalid_argument("path set: gain must be finite");
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
            const auto& q = paths[j];
            if (p.tau == q.tau && p.phi == q.phi && p.theta == q.theta)
                throw std::invalid_argument(
                    "path set: duplicate (delay, azimuth, elevation) tuple");
        }
    }
}

MergeResult merge_close_paths(const PathSet& paths, double delay_tol, double angle_tol) {
    if (delay_tol <= 0.0 || angle_tol <= 0.0)
        throw std::invalid_argument("merge_close_paths: tolerances must be positive");
    MergeResult r;
    r.paths = paths;
    while (merge_pass(r.paths, delay_tol, angle_tol, r.diagnostics)) {
    }
    return r;
}

}  // namespace chanex
