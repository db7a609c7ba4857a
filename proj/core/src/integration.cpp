// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/integration.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace irtps {

GradientField normals_to_gradients(const NormalMap& normals, double min_nz) {
    GradientField g(normals.width, normals.height);
    for (int r = 0; r < normals.height; ++r) {
        for (int c = 0; c < normals.width; ++c) {
            if (!normals.mask.at(r, c)) continue;
            Vec3 n = normals.at(r, c);
            if (n.z < min_nz) continue;
            g.p[g.index(r, c)] = -n.x / n.z;
            g.q[g.index(r, c)] = -n.y / n.z;
            g.mask.set(r, c, true);
        }
    }
    return g;
}

namespace {

// One forward-difference constraint H[to] - H[from] = target.
struct Edge {
    int from, to;  // unknown indices
    double target;
};

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        double lo = *std::max_element(v.begin(), v.begin() + static_cast<long>(mid));
        m = 0.5 * (m + lo);
    }
    return m;
}

Eigen::VectorXd solve_weighted(const std::vector<Edge>& edges, const std::vector<double>& w,
                               int n, double cg_tol, const Eigen::VectorXd& guess) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(edges.size() * 4 + static_cast<size_t>(n));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    std::vector<double> diag(static_cast<size_t>(n), 0.0);
    for (size_t e = 0; e < edges.size(); ++e) {
        const Edge& ed = edges[e];
        const double we = w[e];
        diag[static_cast<size_t>(ed.from)] += we;
        diag[static_cast<size_t>(ed.to)] += we;
        trip.emplace_back(ed.from, ed.to, -we);
        trip.emplace_back(ed.to, ed.from, -we);
        b(ed.from) -= we * ed.target;
        b(ed.to) += we * ed.target;
    }
    for (int i = 0; i < n; ++i) {
        // Unknowns with no constraint (isolated pixels) pin to 0.
        trip.emplace_back(i, i, diag[static_cast<size_t>(i)] > 0.0 ? diag[static_cast<size_t>(i)]
                                                                   : 1.0);
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(cg_tol);
    cg.setMaxIterations(10000);
    cg.compute(A);
    return cg.solveWithGuess(b, guess);
}

}  // namespace

IntegrationResult integrate(const GradientField& g, const IntegrationConfig& cfg) {
    // Map valid pixels to unknown indices.
    std::vector<int> idx(static_cast<size_t>(g.width) * g.height, -1);
    std::vector<size_t> pix;  // unknown -> flat pixel index
    for (int r = 0; r < g.height; ++r) {
        for (int c = 0; c < g.width; ++c) {
            if (g.mask.at(r, c)) {
                idx[g.index(r, c)] = static_cast<int>(pix.size());
                pix.push_back(g.index(r, c));
            }
        }
    }
    const int n = static_cast<int>(pix.size());
    if (n == 0) throw std::invalid_argument("integrate: no valid pixels");

    // x edge: H(r,c+1) - H(r,c) = p(r,c); y edge: H(r-1,c) - H(r,c) = q(r,c)
    // (row index grows downward, y grows upward).
    std::vector<Edge> edges;
    for (int r = 0; r < g.height; ++r) {
        for (int c = 0; c < g.width; ++c) {
            int a = idx[g.index(r, c)];
            if (a < 0) continue;
            if (c + 1 < g.width && idx[g.index(r, c + 1)] >= 0) {
                edges.push_back({a, idx[g.index(r, c + 1)], g.p[g.index(r, c)]});
            }
            if (r - 1 >= 0 && idx[g.index(r - 1, c)] >= 0) {
                edges.push_back({a, idx[g.index(r - 1, c)], g.q[g.index(r, c)]});
            }
        }
    }

    std::vector<double> w(edges.size(), 1.0);
    Eigen::VectorXd hvec = solve_weighted(edges, w, n, cfg.cg_tolerance,
                                          Eigen::VectorXd::Zero(n));

    double delta = cfg.huber_delta;
    if (delta < 0.0) {
        std::vector<double> absres(edges.size());
        std::vector<double> res(edges.size());
        for (size_t e = 0; e < edges.size(); ++e) {
            res[e] = hvec(edges[e].to) - hvec(edges[e].from) - edges[e].target;
        }
        double med = median_of(res);
        for (size_t e = 0; e < edges.size(); ++e) absres[e] = std::abs(res[e] - med);
        double mad = median_of(absres);
        delta = mad > 0.0 ? 1.345 * mad : std::numeric_limits<double>::infinity();
    }

    IntegrationResult out;
    out.irls_iterations = 0;
    out.converged = true;
    if (std::isfinite(delta) && !edges.empty()) {
        out.converged = false;
        for (int it = 0; it < cfg.max_irls_iterations; ++it) {
            for (size_t e = 0; e < edges.size(); ++e) {
                double res = hvec(edges[e].to) - hvec(edges[e].from) - edges[e].target;
                double a = std::abs(res);
                w[e] = a > delta ? delta / a : 1.0;
            }
            Eigen::VectorXd next = solve_weighted(edges, w, n, cfg.cg_tolerance, hvec);
            double change = (next - hvec).cwiseAbs().mean();
            hvec = std::move(next);
            ++out.irls_iterations;
            if (change < cfg.irls_tolerance) {
                out.converged = true;
                break;
            }
        }
    }

    out.height = HeightField(g.width, g.height);
    double mean = hvec.mean();
    for (int i = 0; i < n; ++i) {
        out.height.z[pix[static_cast<size_t>(i)]] = hvec(i) - mean;
        out.height.mask.bits[pix[static_cast<size_t>(i)]] = 1;
    }
    return out;
}

}  // namespace irtps
