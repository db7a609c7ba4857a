// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/lights.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "irtps/errors.hpp"

namespace irtps {

bool LightSet::has_full_rank(double rel_tol) const {
    if (directions.size() < 3) return false;
    Eigen::MatrixXd L(static_cast<Eigen::Index>(directions.size()), 3);
    for (size_t k = 0; k < directions.size(); ++k) {
        L(static_cast<Eigen::Index>(k), 0) = directions[k].x;
        L(static_cast<Eigen::Index>(k), 1) = directions[k].y;
        L(static_cast<Eigen::Index>(k), 2) = directions[k].z;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(L);
    return svd.singularValues()(2) > rel_tol * svd.singularValues()(0);
}

void LightSet::validate() const {
    if (directions.size() < 3) {
        throw io_error("light set: need at least 3 lights, got " +
                       std::to_string(directions.size()));
    }
    if (intensities.size() != directions.size()) {
        throw io_error("light set: intensity count does not match direction count");
    }
    for (size_t k = 0; k < directions.size(); ++k) {
        double n = norm(directions[k]);
        if (std::abs(n - 1.0) > 1e-9) {
            throw io_error("light set: direction " + std::to_string(k) + " is not unit (norm " +
                           std::to_string(n) + ")");
        }
    }
    if (!has_full_rank()) {
        throw io_error("light set: direction matrix is rank deficient");
    }
}

LightSet LightSet::ring(int q, double zenith_deg, double intensity) {
    LightSet out;
    double zen = zenith_deg * std::numbers::pi / 180.0;
    for (int k = 0; k < q; ++k) {
        double az = 2.0 * std::numbers::pi * k / q;
        out.add(normalized(Vec3{std::sin(zen) * std::cos(az), std::sin(zen) * std::sin(az),
                                std::cos(zen)}),
                intensity);
    }
    return out;
}

}  // namespace irtps
