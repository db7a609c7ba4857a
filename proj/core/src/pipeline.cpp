// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/pipeline.hpp"

#include <cmath>
#include <fstream>

#include "irtps/errors.hpp"
#include "irtps/pfm.hpp"
#include "irtps/rng.hpp"

namespace irtps {

Image subtract_env(const Image& a, const Image& e) {
    if (!a.same_shape(e)) throw std::invalid_argument("subtract_env: dimension mismatch");
    Image out = a;
    for (size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] = std::max(a.data[i] - e.data[i], 0.0f);
    }
    return out;
}

namespace {

double mean_abs_height_diff(const HeightField& h_prev, const HeightField& h_next) {
    if (h_prev.width != h_next.width || h_prev.height != h_next.height) {
        throw std::invalid_argument("height fields: dimension mismatch");
    }
    double sum = 0.0;
    size_t n = 0;
    for (size_t i = 0; i < h_prev.z.size(); ++i) {
        if (!h_prev.mask.bits[i] || !h_next.mask.bits[i]) continue;
        sum += std::abs(h_next.z[i] - h_prev.z[i]);
        ++n;
    }
    if (n == 0) throw pipeline_error("height convergence check: disjoint masks");
    return sum / static_cast<double>(n);
}

void dump_iteration(const IterationRecord& rec, const std::filesystem::path& dir) {
    std::filesystem::path it_dir = dir / ("iter_" + std::to_string(rec.iteration));
    std::filesystem::create_directories(it_dir);
    write_pfm(to_image(rec.height), it_dir / "height.pfm");
    write_pfm(to_image(rec.normals), it_dir / "normals.pfm");
    write_pfm(to_image(rec.albedo), it_dir / "albedo.pfm");
    std::ofstream dh(it_dir / "dh.txt", std::ios::trunc);
    dh.precision(17);
    dh << rec.dh << "\n";
}

}  // namespace

bool converged(const HeightField& h_prev, const HeightField& h_next, double tau) {
    return mean_abs_height_diff(h_prev, h_next) < tau;
}

ReconStep reconstruct(const std::vector<Image>& images, const LightSet& lights,
                      double shadow_threshold, const IntegrationConfig& icfg,
                      const PixelMask* silhouette) {
    Dataset work;
    work.images = images;
    work.lights = lights;
    ReconStep step;
    step.maps = solve_maps(work, shadow_threshold);
    if (silhouette) {
        step.maps.valid = mask_and(step.maps.valid, *silhouette);
        step.maps.normals.mask = step.maps.valid;
        step.maps.albedo.mask = step.maps.valid;
    }
    if (step.maps.valid.count() == 0) {
        throw pipeline_error("photometric solve produced no valid pixels");
    }
    GradientField g = normals_to_gradients(step.maps.normals);
    step.height = integrate(g, icfg).height;
    return step;
}

std::optional<PixelMask> dataset_silhouette(const Dataset& d) {
    if (!d.gt_normals) return std::nullopt;
    const Image& gn = *d.gt_normals;
    PixelMask sil(gn.width, gn.height);
    for (size_t i = 0; i < gn.pixel_count(); ++i) {
        if (gn.data[i * 3] != 0.0f || gn.data[i * 3 + 1] != 0.0f ||
            gn.data[i * 3 + 2] != 0.0f) {
            sil.bits[i] = 1;
        }
    }
    return sil;
}

PipelineResult run(const Dataset& dataset, const EnvironmentBox& env,
                   const PipelineConfig& cfg) {
    if (cfg.rays < 1 || cfg.rays > 3) {
        throw std::invalid_argument("pipeline: rays must be in {1, 2, 3}");
    }
    if (cfg.max_iterations < 1 || cfg.convergence_tolerance <= 0.0) {
        throw std::invalid_argument("pipeline: bad iteration/tolerance config");
    }
    const int w = dataset.images.at(0).width;
    const int h = dataset.images.at(0).height;
    const double pitch = env.size.x / w;
    const double anchor =
        dataset.scene && dataset.scene->has_surface_anchor ? dataset.scene->surface_anchor : 0.0;

    std::optional<PixelMask> sil = dataset_silhouette(dataset);
    const size_t domain = sil ? sil->count() : static_cast<size_t>(w) * h;

    auto step_to_record = [](int t, ReconStep&& s, double dh) {
        IterationRecord rec;
        rec.iteration = t;
        rec.height = std::move(s.height);
        rec.albedo = std::move(s.maps.albedo);
        rec.normals = std::move(s.maps.normals);
        rec.dh = dh;
        return rec;
    };
    auto check_coverage = [&](const ReconStep& s, int t) {
        size_t valid = s.maps.valid.count();
        if (valid * 10 < domain) {
            throw pipeline_error("photometric solve failed on more than 90% of pixels at "
                                 "iteration " +
                                 std::to_string(t));
        }
    };

    PipelineResult out;
    ReconStep step = reconstruct(dataset.images, dataset.lights, cfg.shadow_threshold,
                                 cfg.integration, sil ? &*sil : nullptr);
    check_coverage(step, 0);
    out.history.push_back(step_to_record(0, std::move(step), 0.0));
    if (!cfg.dump_dir.empty()) dump_iteration(out.history.back(), cfg.dump_dir);

    for (int t = 1; t <= cfg.max_iterations; ++t) {
        const IterationRecord& prev = out.history.back();
        ReconSurface surface{make_surface(prev.height, anchor, pitch), prev.normals,
                             prev.albedo};

        // Accumulated environment estimate: one chain family per iteration
        // seed; depths d <= rays share chain prefixes, matching a single
        // sampled chain read out at every depth.
        const std::uint64_t iter_seed = splitmix64(cfg.seed ^ static_cast<std::uint64_t>(t));
        std::vector<Image> env_sum(dataset.images.size(), Image(w, h, 3));
        for (int d = 1; d <= cfg.rays; ++d) {
            for (int k = 0; k < dataset.lights.count(); ++k) {
                std::uint64_t sub =
                    splitmix64(iter_seed ^ direction_key(dataset.lights.directions[k]));
                EnvIntensityImage e = extract(surface, env, dataset.lights.directions[k],
                                              dataset.lights.intensities[k], d, sub);
                e.light_index = k;
                Image dense = fill_sparse(e);
                if (!cfg.dump_dir.empty() && cfg.dump_env) {
                    std::filesystem::path it_dir =
                        cfg.dump_dir / ("iter_" + std::to_string(t));
                    std::filesystem::create_directories(it_dir);
                    dump_env_debug(e, dense, it_dir, k);
                }
                Image& acc = env_sum[static_cast<size_t>(k)];
                for (size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += dense.data[i];
            }
        }

        std::vector<Image> next_images;
        next_images.reserve(dataset.images.size());
        for (size_t k = 0; k < dataset.images.size(); ++k) {
            next_images.push_back(subtract_env(dataset.images[k], env_sum[k]));
        }

        ReconStep next = reconstruct(next_images, dataset.lights, cfg.shadow_threshold,
                                     cfg.integration, sil ? &*sil : nullptr);
        check_coverage(next, t);
        double dh = mean_abs_height_diff(prev.height, next.height);
        out.history.push_back(step_to_record(t, std::move(next), dh));
        if (!cfg.dump_dir.empty()) dump_iteration(out.history.back(), cfg.dump_dir);
        if (dh < cfg.convergence_tolerance) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace irtps
