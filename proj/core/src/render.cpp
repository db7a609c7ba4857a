// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/render.hpp"

#include <cmath>

#include "irtps/parallel.hpp"
#include "irtps/rng.hpp"
#include "irtps/sampling.hpp"

namespace irtps {

namespace {

// Directional-light radiance leaving `hit` toward the camera:
// albedo * sum_k c_k * max(0, l_k . n) * visibility.
Vec3 direct_radiance(const Hit& hit, const Scene& scene) {
    Vec3 sum{0.0, 0.0, 0.0};
    double scalar = 0.0;
    for (int k = 0; k < scene.lights.count(); ++k) {
        const Vec3& l = scene.lights.directions[k];
        double cosine = dot(l, hit.normal);
        if (cosine <= 0.0) continue;
        if (occluded(Ray{hit.point, l}, scene)) continue;
        scalar += scene.lights.intensities[k] * cosine;
    }
    sum = hit.albedo * scalar;
    return sum;
}

// Accumulates the per-bounce radiance of one pixel into out[0..nb).
void render_pixel_into(const Scene& scene, const SamplerConfig& cfg, int r, int c, Vec3* out) {
    const int nb = cfg.max_bounces;
    for (int k = 0; k < nb; ++k) out[k] = Vec3{0.0, 0.0, 0.0};

    Hit primary = scene.primary_hit(r, c);
    if (!primary) return;
    out[0] = direct_radiance(primary, scene);
    if (nb < 2) return;

    const std::uint64_t pixel = scene.pixel_id(r, c);
    std::vector<Vec3> accum(static_cast<size_t>(nb), Vec3{0.0, 0.0, 0.0});
    for (int s = 0; s < cfg.spp; ++s) {
        Vec3 throughput = primary.albedo;
        Vec3 p = primary.point;
        Vec3 n = primary.normal;
        for (int j = 2; j <= nb; ++j) {
            Pcg32 rng = stream_rng(cfg.seed, pixel, static_cast<std::uint64_t>(s),
                                   static_cast<std::uint64_t>(j));
            double u1 = rng.next_double();
            double u2 = rng.next_double();
            HemisphereSample hs = sample_cosine_hemisphere(n, u1, u2);
            Hit hit = intersect(Ray{p, hs.direction}, scene);
            if (!hit) break;
            // Cosine pdf cancels the BRDF and geometry term, leaving the
            // plain albedo product as path throughput.
            accum[static_cast<size_t>(j - 1)] += throughput.cwise(direct_radiance(hit, scene));
            throughput = throughput.cwise(hit.albedo);
            p = hit.point;
            n = hit.normal;
        }
    }
    const double inv = 1.0 / cfg.spp;
    for (int k = 1; k < nb; ++k) out[k] = accum[static_cast<size_t>(k)] * inv;
}

}  // namespace

RenderResult render(const Scene& scene, const SamplerConfig& cfg) {
    const int w = scene.width, h = scene.height;
    const int nb = std::max(1, cfg.max_bounces);
    RenderResult out;
    out.bounces.assign(static_cast<size_t>(nb), Image(w, h, 3));
    out.total = Image(w, h, 3);

    parallel_for(0, h, [&](int r) {
        std::vector<Vec3> px(static_cast<size_t>(nb));
        for (int c = 0; c < w; ++c) {
            render_pixel_into(scene, cfg, r, c, px.data());
            for (int k = 0; k < nb; ++k) {
                out.bounces[static_cast<size_t>(k)].at(r, c, 0) = static_cast<float>(px[k].x);
                out.bounces[static_cast<size_t>(k)].at(r, c, 1) = static_cast<float>(px[k].y);
                out.bounces[static_cast<size_t>(k)].at(r, c, 2) = static_cast<float>(px[k].z);
            }
        }
    });
    // Total as the ascending float sum so it equals sum(I^k) bit-exactly.
    for (size_t i = 0; i < out.total.data.size(); ++i) {
        float sum = 0.0f;
        for (int k = 0; k < nb; ++k) sum += out.bounces[static_cast<size_t>(k)].data[i];
        out.total.data[i] = sum;
    }
    return out;
}

std::vector<Vec3> render_pixel(const Scene& scene, const SamplerConfig& cfg, int r, int c) {
    std::vector<Vec3> px(static_cast<size_t>(std::max(1, cfg.max_bounces)));
    render_pixel_into(scene, cfg, r, c, px.data());
    return px;
}

Dataset render_dataset(const SceneConfig& cfg, const LightSet& lights,
                       const std::filesystem::path& base_dir) {
    lights.validate();
    BuiltScene built = build_scene(cfg, base_dir);

    Dataset d;
    d.lights = lights;
    for (int k = 0; k < lights.count(); ++k) {
        Scene single = built.scene;
        single.lights = LightSet();
        single.lights.add(lights.directions[k], lights.intensities[k]);
        SamplerConfig rc;
        rc.spp = cfg.spp;
        rc.max_bounces = cfg.max_bounces;
        rc.seed = splitmix64(cfg.seed ^ direction_key(lights.directions[k]));
        d.images.push_back(render(single, rc).total);
    }
    d.gt_height = built.gt.height;
    d.gt_normals = built.gt.normals;
    d.gt_albedo = built.gt.albedo;
    SceneConfig stored = cfg;
    stored.surface_anchor = built.gt.anchor;
    stored.has_surface_anchor = true;
    d.scene = stored;
    return d;
}

}  // namespace irtps
