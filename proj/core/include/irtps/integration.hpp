// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "irtps/image.hpp"
#include "irtps/maps.hpp"

namespace irtps {

// Per-pixel surface slopes (p, q) = (dH/dx, dH/dy) in pixel-pitch units,
// derived from normals as (-n_x/n_z, -n_y/n_z).
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> p, q;
    PixelMask mask;

    GradientField() = default;
    GradientField(int w, int h)
        : width(w), height(h), p(static_cast<size_t>(w) * h, 0.0),
          q(static_cast<size_t>(w) * h, 0.0), mask(w, h) {}

    size_t index(int r, int c) const { return static_cast<size_t>(r) * width + c; }
};

// Pixels with n_z < min_nz (grazing normals) are masked out.
GradientField normals_to_gradients(const NormalMap& normals, double min_nz = 1e-3);

struct IntegrationConfig {
    // Huber threshold. Negative selects the automatic scale
    // 1.345 * MAD of the initial least-squares residuals; +infinity gives
    // plain least squares.
    double huber_delta = -1.0;
    int max_irls_iterations = 50;
    double cg_tolerance = 1e-8;
    // IRLS stops when the mean absolute height update drops below this.
    double irls_tolerance = 1e-9;
};

struct IntegrationResult {
    HeightField height;   // mean over valid pixels is 0
    bool converged = true;
    int irls_iterations = 0;
};

// Height field minimizing sum of Huber penalties on forward-difference
// residuals (H_x - p) and (H_y - q) over the valid mask, solved by
// iteratively reweighted least squares on the masked Poisson system.
IntegrationResult integrate(const GradientField& g, const IntegrationConfig& cfg = {});

}  // namespace irtps
