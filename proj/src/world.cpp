#include "hapticguide/world.hpp"

#include "hapticguide/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <stdexcept>

namespace hapticguide {

namespace {

bool on_segment(const Vec2& p, const Vec2& q, const Vec2& pt) {
    if ((q - p).cross(pt - p) != 0.0) return false;
    return std::min(p.x, q.x) <= pt.x && pt.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= pt.y &&
           pt.y <= std::max(p.y, q.y);
}

// Closed segment-segment intersection test (touching counts).
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double d1 = (b - a).cross(c - a);
    const double d2 = (b - a).cross(d - a);
    const double d3 = (d - c).cross(a - c);
    const double d4 = (d - c).cross(b - c);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b);
}

// Parameter t along a->b of the first contact with edge p->q, if any.
std::optional<double> first_contact(const Vec2& a, const Vec2& b, const Vec2& p, const Vec2& q) {
    const Vec2 d = b - a;
    const Vec2 e = q - p;
    const Vec2 ap = p - a;
    const double denom = d.cross(e);
    if (denom != 0.0) {
        const double t = ap.cross(e) / denom;
        const double u = ap.cross(d) / denom;
        if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
        return t;
    }
    if (ap.cross(d) != 0.0) return std::nullopt;  // parallel, not collinear
    const double dd = d.squared_norm();
    const double tp = ap.dot(d) / dd;
    const double tq = (q - a).dot(d) / dd;
    const double lo = std::max(0.0, std::min(tp, tq));
    const double hi = std::min(1.0, std::max(tp, tq));
    if (lo > hi) return std::nullopt;
    return lo;
}

}  // namespace

double signed_area(std::span<const Vec2> vertices) {
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        twice += vertices[i].cross(vertices[(i + 1) % vertices.size()]);
    }
    return 0.5 * twice;
}

PolygonObstacle::PolygonObstacle(std::string id, std::vector<Vec2> vertices)
    : id_(std::move(id)), vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) throw std::invalid_argument("polygon '" + id_ + "' needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(vertices_[i].x) || !std::isfinite(vertices_[i].y)) {
            throw std::invalid_argument("polygon '" + id_ + "' has a non-finite vertex");
        }
        if (vertices_[i] == vertices_[(i + 1) % n]) {
            throw std::invalid_argument("polygon '" + id_ + "' repeats a vertex");
        }
    }
    const double area = signed_area(vertices_);
    if (area == 0.0) throw std::invalid_argument("polygon '" + id_ + "' has zero area");
    if (area < 0.0) std::reverse(vertices_.begin(), vertices_.end());

    for (std::size_t i = 0; i < n; ++i) {
        const auto [a, b] = edge(i);
        // adjacent edge folding back onto this one
        const Vec2 c = vertices_[(i + 2) % n];
        if ((b - a).cross(c - b) == 0.0 && (b - a).dot(c - b) < 0.0) {
            throw std::invalid_argument("polygon '" + id_ + "' is self-intersecting");
        }
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent through the wrap-around
            const auto [c0, c1] = edge(j);
            if (segments_intersect(a, b, c0, c1)) {
                throw std::invalid_argument("polygon '" + id_ + "' is self-intersecting");
            }
        }
    }
}

TrackedSpace::TrackedSpace(Vec2 center, Vec2 half_extents) : center_(center), half_extents_(half_extents) {
    if (!(half_extents.x > 0.0) || !(half_extents.y > 0.0)) {
        throw std::invalid_argument("tracked space half extents must be strictly positive");
    }
}

bool TrackedSpace::contains(const Vec2& p) const {
    return std::abs(p.x - center_.x) <= half_extents_.x && std::abs(p.y - center_.y) <= half_extents_.y;
}

void validate_environments(const Environment& physical, const Environment& virtual_env,
                           std::span<const std::string> entity_ids) {
    if (physical.users.size() != virtual_env.users.size()) {
        throw std::invalid_argument("physical and virtual environments must hold the same users");
    }
    for (const auto& name : virtual_env.objects_of_interest) {
        const bool is_obstacle = std::any_of(virtual_env.obstacles.begin(), virtual_env.obstacles.end(),
                                             [&](const PolygonObstacle& o) { return o.id() == name; });
        const bool is_entity = std::find(entity_ids.begin(), entity_ids.end(), name) != entity_ids.end();
        if (!is_obstacle && !is_entity) {
            throw std::invalid_argument("object of interest '" + name + "' is not a known obstacle or entity");
        }
    }
}

bool point_in_polygon(const PolygonObstacle& poly, const Vec2& p) {
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if (on_segment(v[j], v[i], p)) return true;
        // half-open rule on y so vertices are counted once
        if ((v[i].y > p.y) != (v[j].y > p.y)) {
            const double x_cross = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

std::optional<SegmentHit> segment_first_hit(const Vec2& a, const Vec2& b,
                                            std::span<const PolygonObstacle> obstacles) {
    if (a == b) throw std::invalid_argument("segment_first_hit: degenerate segment");
    std::optional<double> best;
    for (const auto& poly : obstacles) {
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const auto [p, q] = poly.edge(i);
            if (auto t = first_contact(a, b, p, q); t && (!best || *t < *best)) best = t;
        }
    }
    if (!best) return std::nullopt;
    const Vec2 d = b - a;
    return SegmentHit{a + d * *best, *best * d.norm()};
}

WallDistance boundary_distance(const TrackedSpace& space, const Vec2& p) {
    const Vec2& c = space.center();
    const Vec2& h = space.half_extents();
    const std::array<WallDistance, 4> walls{{
        {c.x + h.x - p.x, {1.0, 0.0}},
        {p.x - (c.x - h.x), {-1.0, 0.0}},
        {c.y + h.y - p.y, {0.0, 1.0}},
        {p.y - (c.y - h.y), {0.0, -1.0}},
    }};
    const WallDistance* best = &walls[0];
    for (const auto& w : walls) {
        if (w.distance < 0.0) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "user left the tracked space at (%.6f, %.6f)", p.x, p.y);
            throw SimulationFault(buf);
        }
        if (w.distance < best->distance) best = &w;
    }
    return *best;
}

}  // namespace hapticguide
