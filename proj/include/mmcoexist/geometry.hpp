// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace mmcoexist {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(b.x - a.x, b.y - a.y); }

// Angle of the ray from `from` towards `to`, in (-pi, pi].
inline double angle_of(Vec2 from, Vec2 to) { return std::atan2(to.y - from.y, to.x - from.x); }

}  // namespace mmcoexist
