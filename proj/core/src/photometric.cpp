// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/photometric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "irtps/parallel.hpp"

namespace irtps {

namespace {

// Effective rank-3 test on singular values, relative to the largest.
bool full_rank3(const Eigen::Vector3d& sv) { return sv(2) > 1e-10 * sv(0) && sv(0) > 0.0; }

}  // namespace

PixelSolution solve_pixel(const std::vector<double>& a, const LightSet& lights,
                          double shadow_threshold_abs) {
    PixelSolution out;
    const int q = lights.count();
    if (static_cast<int>(a.size()) != q || q < 3) return out;

    bool any_signal = false;
    for (double v : a) {
        if (v != 0.0) {
            any_signal = true;
            break;
        }
    }
    if (!any_signal) return out;  // rho = 0, n = +z, invalid

    std::vector<int> rows;
    rows.reserve(q);
    for (int k = 0; k < q; ++k) {
        if (a[k] > shadow_threshold_abs) rows.push_back(k);
    }
    if (static_cast<int>(rows.size()) < 3) {
        rows.resize(q);
        for (int k = 0; k < q; ++k) rows[k] = k;
    }

    const int m = static_cast<int>(rows.size());
    Eigen::MatrixXd L(m, 3);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
        const Vec3& l = lights.directions[rows[i]];
        const double s = lights.intensities[rows[i]];
        L(i, 0) = s * l.x;
        L(i, 1) = s * l.y;
        L(i, 2) = s * l.z;
        rhs(i) = a[rows[i]];
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (!full_rank3(svd.singularValues())) return out;

    Eigen::Vector3d g = svd.solve(rhs);
    double rho = g.norm();
    if (!(rho > 0.0) || !std::isfinite(rho)) return out;

    out.rho = rho;
    out.n = Vec3{g(0), g(1), g(2)} / rho;
    out.valid = true;
    out.rows_used = std::move(rows);
    return out;
}

PsMaps solve_maps(const Dataset& stack, double shadow_threshold) {
    const int q = stack.count();
    if (q < 3 || q != stack.lights.count()) {
        throw std::invalid_argument("solve_maps: need >= 3 images matched to lights");
    }
    const Image& first = stack.images[0];
    const int w = first.width, h = first.height, ch = first.channels;

    std::vector<Image> lum;
    lum.reserve(q);
    double max_lum = 0.0;
    for (const Image& img : stack.images) {
        lum.push_back(luminance(img));
        for (float v : lum.back().data) max_lum = std::max(max_lum, static_cast<double>(v));
    }
    const double abs_thresh = shadow_threshold * max_lum;

    PsMaps maps{AlbedoMap(w, h, ch), NormalMap(w, h), PixelMask(w, h)};

    parallel_for(0, h, [&](int r) {
        std::vector<double> a(q);
        for (int c = 0; c < w; ++c) {
            for (int k = 0; k < q; ++k) a[k] = lum[k].at(r, c);
            PixelSolution sol = solve_pixel(a, stack.lights, abs_thresh);
            maps.normals.set(r, c, sol.n);
            maps.normals.mask.set(r, c, sol.valid);
            maps.valid.set(r, c, sol.valid);
            maps.albedo.mask.set(r, c, sol.valid);
            if (!sol.valid) continue;
            for (int cc = 0; cc < ch; ++cc) {
                double num = 0.0, den = 0.0;
                for (int k : sol.rows_used) {
                    const double s =
                        stack.lights.intensities[k] * dot(stack.lights.directions[k], sol.n);
                    num += static_cast<double>(stack.images[k].at(r, c, cc)) * s;
                    den += s * s;
                }
                maps.albedo.at(r, c, cc) = den > 0.0 ? num / den : 0.0;
            }
        }
    });
    return maps;
}

}  // namespace irtps
