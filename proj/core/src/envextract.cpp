// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/envextract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irtps/errors.hpp"
#include "irtps/parallel.hpp"
#include "irtps/pfm.hpp"
#include "irtps/rng.hpp"
#include "irtps/sampling.hpp"

namespace irtps {

namespace {

// Nearest of the five walls and the surface itself.
Hit trace(const Ray& ray, const EnvironmentBox& env, const HeightfieldSurface& geom) {
    Hit wall = env.intersect(ray, kRayEpsilon);
    double cap = wall.kind != HitKind::None ? wall.t : std::numeric_limits<double>::infinity();
    Hit self = geom.intersect(ray, kRayEpsilon, cap);
    return self.kind != HitKind::None ? self : wall;
}

bool light_visible(const Vec3& p, const Vec3& l, const EnvironmentBox& env,
                   const HeightfieldSurface& geom) {
    return trace(Ray{p, l}, env, geom).kind == HitKind::None;
}

}  // namespace

EnvIntensityImage extract(const ReconSurface& surface, const EnvironmentBox& env,
                          const Vec3& light_dir, double light_intensity, int depth,
                          std::uint64_t seed) {
    if (depth < 1 || depth > 3) {
        throw std::invalid_argument("extract: depth must be in {1, 2, 3}");
    }
    const HeightfieldSurface& geom = surface.geom;
    const int w = geom.width(), h = geom.height();

    EnvIntensityImage e;
    e.values = Image(w, h, 3);
    e.mask = PixelMask(w, h);
    e.silhouette = PixelMask(w, h);
    e.depth = depth;

    parallel_for(0, h, [&](int r) {
        for (int c = 0; c < w; ++c) {
            if (!geom.node_valid(r, c) || !surface.normals.mask.at(r, c)) continue;
            e.silhouette.set(r, c, true);

            const std::uint64_t pixel = static_cast<std::uint64_t>(r) * w + c;
            Vec3 p = geom.node_point(r, c);
            Vec3 n = surface.normals.at(r, c);
            Vec3 walls_product{1.0, 1.0, 1.0};
            Hit hit;
            bool ok = true;
            for (int j = 0; j < depth; ++j) {
                Pcg32 rng = stream_rng(seed, pixel, 0, static_cast<std::uint64_t>(j));
                double u1 = rng.next_double();
                double u2 = rng.next_double();
                HemisphereSample hs = sample_cosine_hemisphere(n, u1, u2);
                hit = trace(Ray{p, hs.direction}, env, geom);
                if (hit.kind != HitKind::Wall) {
                    ok = false;  // left through the open face or self-hit
                    break;
                }
                if (j + 1 < depth) walls_product = walls_product.cwise(hit.albedo);
                p = hit.point;
                n = hit.normal;
            }
            if (!ok) continue;

            double cosine = dot(light_dir, hit.normal);
            double direct = 0.0;
            if (cosine > 0.0 && light_visible(hit.point, light_dir, env, geom)) {
                direct = light_intensity * cosine;
            }
            Vec3 rho{surface.albedo.at(r, c, 0), surface.albedo.at(r, c, 1),
                     surface.albedo.at(r, c, 2)};
            Vec3 value = rho.cwise(walls_product).cwise(hit.albedo) * direct;
            e.values.at(r, c, 0) = static_cast<float>(value.x);
            e.values.at(r, c, 1) = static_cast<float>(value.y);
            e.values.at(r, c, 2) = static_cast<float>(value.z);
            e.mask.set(r, c, true);
        }
    });
    return e;
}

Image fill_sparse(const EnvIntensityImage& e) {
    constexpr int kNeighbors = 8;
    const int w = e.values.width, h = e.values.height;
    if (e.mask.count() == 0) throw pipeline_error("no samples to interpolate");

    Image out(w, h, 3);
    parallel_for(0, h, [&](int r) {
        // (squared distance, flat index) pairs; lexicographic order makes the
        // neighbor choice deterministic under ties.
        std::vector<std::pair<long, int>> best;
        for (int c = 0; c < w; ++c) {
            if (!e.silhouette.at(r, c)) continue;
            if (e.mask.at(r, c)) {
                for (int ch = 0; ch < 3; ++ch) out.at(r, c, ch) = e.values.at(r, c, ch);
                continue;
            }
            best.clear();
            auto consider = [&](int rr, int cc) {
                if (rr < 0 || rr >= h || cc < 0 || cc >= w || !e.mask.at(rr, cc)) return;
                long d2 = static_cast<long>(rr - r) * (rr - r) +
                          static_cast<long>(cc - c) * (cc - c);
                std::pair<long, int> cand{d2, rr * w + cc};
                if (static_cast<int>(best.size()) < kNeighbors) {
                    best.push_back(cand);
                    std::push_heap(best.begin(), best.end());
                } else if (cand < best.front()) {
                    std::pop_heap(best.begin(), best.end());
                    best.back() = cand;
                    std::push_heap(best.begin(), best.end());
                }
            };
            const int qmax = std::max(w, h);
            for (int q = 1; q <= qmax; ++q) {
                for (int cc = c - q; cc <= c + q; ++cc) {
                    consider(r - q, cc);
                    consider(r + q, cc);
                }
                for (int rr = r - q + 1; rr <= r + q - 1; ++rr) {
                    consider(rr, c - q);
                    consider(rr, c + q);
                }
                // Later rings start at Chebyshev distance q+1 >= their
                // Euclidean distance, so once the worst kept neighbor is
                // closer than that the set is final.
                if (static_cast<int>(best.size()) == kNeighbors &&
                    static_cast<long>(q + 1) * (q + 1) > best.front().first) {
                    break;
                }
            }
            double wsum = 0.0, acc[3] = {0.0, 0.0, 0.0};
            for (const auto& [d2, flat] : best) {
                double weight = 1.0 / static_cast<double>(d2);
                wsum += weight;
                int rr = flat / w, cc = flat % w;
                for (int ch = 0; ch < 3; ++ch) {
                    acc[ch] += weight * static_cast<double>(e.values.at(rr, cc, ch));
                }
            }
            for (int ch = 0; ch < 3; ++ch) {
                out.at(r, c, ch) = static_cast<float>(acc[ch] / wsum);
            }
        }
    });
    return out;
}

std::vector<Image> extract_all(const ReconSurface& surface, const EnvironmentBox& env,
                               const LightSet& lights, int depth, std::uint64_t seed) {
    std::vector<Image> dense;
    dense.reserve(lights.size());
    for (int k = 0; k < lights.count(); ++k) {
        std::uint64_t sub = splitmix64(seed ^ direction_key(lights.directions[k]));
        EnvIntensityImage e =
            extract(surface, env, lights.directions[k], lights.intensities[k], depth, sub);
        e.light_index = k;
        dense.push_back(fill_sparse(e));
    }
    return dense;
}

void dump_env_debug(const EnvIntensityImage& e, const Image& dense,
                    const std::filesystem::path& dir, int light_index) {
    std::string stem = "env_r" + std::to_string(e.depth) + "_light" +
                       std::to_string(light_index);
    write_pfm(e.values, dir / (stem + "_sparse.pfm"));
    write_pgm(e.mask, dir / (stem + "_mask.pgm"));
    write_pfm(dense, dir / (stem + "_dense.pfm"));
}

}  // namespace irtps
