// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>

#include "irtps/vec3.hpp"

namespace irtps {

// Branchless orthonormal basis around a unit vector (Duff et al. style).
inline void orthonormal_basis(const Vec3& n, Vec3* t, Vec3* b) {
    double sign = std::copysign(1.0, n.z);
    double a = -1.0 / (sign + n.z);
    double xy = n.x * n.y * a;
    *t = {1.0 + sign * n.x * n.x * a, sign * xy, -sign * n.x};
    *b = {xy, sign + n.y * n.y * a, -n.y};
}

struct HemisphereSample {
    Vec3 direction;  // unit, in the hemisphere of the normal
    double pdf;      // cos(theta) / pi
};

// Cosine-weighted hemisphere sample via the polar map; (u1, u2) = (0, 0)
// returns the normal itself.
inline HemisphereSample sample_cosine_hemisphere(const Vec3& normal, double u1, double u2) {
    double sin_t = std::sqrt(u1);
    double cos_t = std::sqrt(std::max(0.0, 1.0 - u1));
    double phi = 2.0 * std::numbers::pi * u2;
    Vec3 t, b;
    orthonormal_basis(normal, &t, &b);
    Vec3 d = normalized(t * (sin_t * std::cos(phi)) + b * (sin_t * std::sin(phi)) +
                        normal * cos_t);
    double c = std::max(0.0, dot(d, normal));
    return {d, c / std::numbers::pi};
}

}  // namespace irtps
