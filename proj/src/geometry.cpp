#include "hapticguide/geometry.hpp"

#include <stdexcept>

namespace hapticguide {

double normalize_angle(double theta) {
    double a = std::fmod(theta, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2pi
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

double wrap_pi(double theta) {
    double a = std::remainder(theta, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    return a;
}

Pose::Pose(Vec2 position, double heading) : position_(position), heading_(normalize_angle(heading)) {
    if (!std::isfinite(position.x) || !std::isfinite(position.y) || !std::isfinite(heading)) {
        throw std::invalid_argument("Pose: non-finite component");
    }
}

}  // namespace hapticguide
