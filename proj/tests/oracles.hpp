#pragma once
// Brute-force reference implementations shared by the unit tests and the acceptance
// suite. They are deliberately written differently from the library code.

#include "hapticguide/world.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace hapticguide::oracle {

// Winding number with an explicit on-edge check, written independently of the library.
inline bool winding_contains(const std::vector<Vec2>& poly, const Vec2& p) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i], b = poly[(i + 1) % n];
        const double cr = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (cr == 0.0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
            p.y <= std::max(a.y, b.y))
            return true;
    }
    int wn = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i], b = poly[(i + 1) % n];
        const double side = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (a.y <= p.y) {
            if (b.y > p.y && side > 0) ++wn;
        } else if (b.y <= p.y && side < 0) {
            --wn;
        }
    }
    return wn != 0;
}

// Every edge solved by Cramer's rule; the smallest segment parameter wins.
inline std::optional<double> cramer_first_hit(const Vec2& a, const Vec2& b, const std::vector<PolygonObstacle>& obs) {
    std::optional<double> best;
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    for (const auto& o : obs) {
        for (std::size_t i = 0; i < o.size(); ++i) {
            const auto [p, q] = o.edge(i);
            // a + s (b - a) = p + u (q - p)
            const double a11 = b.x - a.x, a12 = -(q.x - p.x);
            const double a21 = b.y - a.y, a22 = -(q.y - p.y);
            const double det = a11 * a22 - a12 * a21;
            if (det == 0.0) continue;
            const double rx = p.x - a.x, ry = p.y - a.y;
            const double s = (rx * a22 - a12 * ry) / det;
            const double u = (a11 * ry - rx * a21) / det;
            if (s < 0.0 || s > 1.0 || u < 0.0 || u > 1.0) continue;
            if (!best || s * len < *best) best = s * len;
        }
    }
    return best;
}

inline std::vector<Vec2> random_star(std::mt19937_64& gen, Vec2 c, int n) {
    std::uniform_real_distribution<double> r(0.3, 2.0), jitter(-0.3, 0.3);
    std::vector<Vec2> v;
    for (int i = 0; i < n; ++i) {
        const double a = kTwoPi * (i + 0.5 + jitter(gen)) / n;
        v.push_back(c + unit_from_angle(a) * r(gen));
    }
    return v;
}

}  // namespace hapticguide::oracle
