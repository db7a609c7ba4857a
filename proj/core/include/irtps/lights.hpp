// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "irtps/vec3.hpp"

namespace irtps {

/// Q >= 3 unit illumination directions (surface-to-light, camera frame)
/// with per-light scalar intensity. The stacked Q x 3 matrix must have
/// rank 3 for the photometric solve.
struct LightSet {
    std::vector<Vec3> directions;
    std::vector<double> intensities;

    size_t size() const { return directions.size(); }
    int count() const { return static_cast<int>(directions.size()); }

    void add(const Vec3& dir, double intensity = 1.0) {
        directions.push_back(dir);
        intensities.push_back(intensity);
    }

    /// Throws io_error unless Q >= 3, all |l| = 1 within 1e-9 and rank(L) = 3.
    void validate() const;

    /// True when the direction matrix has rank 3 (smallest singular value
    /// above rel_tol times the largest).
    bool has_full_rank(double rel_tol = 1e-10) const;

    /// Ring of q directions at the given zenith angle from +z, azimuths
    /// evenly spaced starting at 0.
    static LightSet ring(int q, double zenith_deg, double intensity = 1.0);
};

}  // namespace irtps
