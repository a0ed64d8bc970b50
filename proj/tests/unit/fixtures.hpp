#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "pcr3bp/curvegeom.hpp"
#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/reference_examples.hpp"
#include "pcr3bp/periodicity.hpp"

namespace fixtures {

using namespace pcr3bp;

inline const MassParameter &example_mu()
{
    static const MassParameter mu(kExampleMu);
    return mu;
}

/// Detected once per process.
inline const ClosedOrbit &example_orbit(int id)
{
    static std::map<int, ClosedOrbit> cache;
    auto it = cache.find(id);
    if (it == cache.end()) {
        const auto &ex = reference_example(id);
        it = cache.emplace(id, detect_period(ex.initial, example_mu(), ex.window)).first;
    }
    return it->second;
}

inline std::vector<Vec2> circle(Vec2 c, double r, int n, bool ccw = true, int turns = 1)
{
    std::vector<Vec2> v;
    for (int i = 0; i < n; ++i) {
        const double a = (ccw ? 1.0 : -1.0) * 2.0 * std::numbers::pi * turns * i / n;
        v.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
    }
    return v;
}

/// Axis-aligned square [x0, x0 + s] x [y0, y0 + s] with 4 vertices per side, counterclockwise.
inline std::vector<Vec2> square(double x0, double y0, double s, int per_side = 4)
{
    std::vector<Vec2> v;
    const Vec2 corners[4] = {{x0, y0}, {x0 + s, y0}, {x0 + s, y0 + s}, {x0, y0 + s}};
    for (int k = 0; k < 4; ++k) {
        const Vec2 a = corners[k], b = corners[(k + 1) % 4];
        for (int i = 0; i < per_side; ++i) {
            const double t = static_cast<double>(i) / per_side;
            v.push_back(a + (b - a) * t);
        }
    }
    return v;
}

inline std::vector<Vec2> reversed(std::vector<Vec2> v)
{
    std::reverse(v.begin(), v.end());
    return v;
}

/// Random point at least min_dist from both primaries inside [-box, box]^2.
inline Vec2 random_point(std::mt19937_64 &rng, const MassParameter &mu, double box = 1.5, double min_dist = 0.05)
{
    std::uniform_real_distribution<double> u(-box, box);
    for (;;) {
        const Vec2 p{u(rng), u(rng)};
        const auto d = primary_distances(p, mu);
        if (d.r1 > min_dist && d.r2 > min_dist) {
            return p;
        }
    }
}

} // namespace fixtures
