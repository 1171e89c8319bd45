#pragma once
/**
 * @file world.hpp
 * @brief Physical and virtual environment containers plus the geometric
 *        queries the controllers need: point-in-polygon, first hit of a
 *        segment against obstacle edges, and distance to the tracked-space walls.
 *
 * Everything here is a value type; queries are pure functions.
 */

#include "hapticguide/geometry.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hapticguide {

/// Simple polygon stored counter-clockwise. Clockwise input is reversed on construction.
class PolygonObstacle {
public:
    /// @throws std::invalid_argument for fewer than 3 vertices, zero area,
    ///         repeated consecutive vertices or self-intersection.
    PolygonObstacle(std::string id, std::vector<Vec2> vertices);

    [[nodiscard]] const std::string& id() const { return id_; }
    [[nodiscard]] const std::vector<Vec2>& vertices() const { return vertices_; }
    [[nodiscard]] std::size_t size() const { return vertices_.size(); }
    /// Edge i runs from vertex i to vertex (i + 1) mod n.
    [[nodiscard]] std::pair<Vec2, Vec2> edge(std::size_t i) const {
        return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
    }

private:
    std::string id_;
    std::vector<Vec2> vertices_;
};

/// Signed area (positive for counter-clockwise winding).
[[nodiscard]] double signed_area(std::span<const Vec2> vertices);

/// Axis-aligned rectangular tracked space.
class TrackedSpace {
public:
    /// 4 m x 4 m centered on the origin.
    TrackedSpace() = default;
    TrackedSpace(Vec2 center, Vec2 half_extents);

    [[nodiscard]] const Vec2& center() const { return center_; }
    [[nodiscard]] const Vec2& half_extents() const { return half_extents_; }
    /// Closed-set containment.
    [[nodiscard]] bool contains(const Vec2& p) const;

private:
    Vec2 center_{0.0, 0.0};
    Vec2 half_extents_{2.0, 2.0};
};

/// One side of E = {O, A}: obstacles and agents, plus the virtual-only annotations.
struct Environment {
    std::vector<PolygonObstacle> obstacles;
    std::vector<Pose> users;
    std::vector<Pose> robots;
    std::vector<Vec2> potential_goals;
    std::vector<std::string> objects_of_interest;
};

/// @throws std::invalid_argument if an object of interest names no obstacle or entity id
///         in @p entity_ids, or the user counts of the two environments differ.
void validate_environments(const Environment& physical, const Environment& virtual_env,
                           std::span<const std::string> entity_ids);

/// True iff @p p is inside or on the boundary of @p poly.
[[nodiscard]] bool point_in_polygon(const PolygonObstacle& poly, const Vec2& p);

struct SegmentHit {
    Vec2 point;
    double distance;  // from the segment start
};

/// Nearest intersection of segment ab with any obstacle edge, measured from @p a.
/// @throws std::invalid_argument if a == b.
[[nodiscard]] std::optional<SegmentHit> segment_first_hit(const Vec2& a, const Vec2& b,
                                                          std::span<const PolygonObstacle> obstacles);

struct WallDistance {
    double distance;
    Vec2 outward_normal;
};

/// Distance to the nearest wall with that wall's outward normal. Ties resolve in the
/// order +x, -x, +y, -y.
/// @throws SimulationFault if @p p is strictly outside the space.
[[nodiscard]] WallDistance boundary_distance(const TrackedSpace& space, const Vec2& p);

}  // namespace hapticguide
