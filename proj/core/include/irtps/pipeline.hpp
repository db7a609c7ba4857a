// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

#include "irtps/dataset.hpp"
#include "irtps/envextract.hpp"
#include "irtps/integration.hpp"
#include "irtps/photometric.hpp"

namespace irtps {

struct PipelineConfig {
    int rays = 3;  // reflection depth r in {1, 2, 3}
    int max_iterations = 10;
    double convergence_tolerance = 1e-3;  // mean-abs height units
    double shadow_threshold = kDefaultShadowThreshold;
    std::uint64_t seed = 0;
    IntegrationConfig integration;
    std::filesystem::path dump_dir;  // non-empty: write iter_{t}/ artifacts
    bool dump_env = false;           // also dump sparse/dense env estimates
};

struct IterationRecord {
    int iteration = 0;
    HeightField height;
    AlbedoMap albedo;
    NormalMap normals;
    double dh = 0.0;  // mean |H_t - H_{t-1}|; 0 for the initial record
};

struct PipelineResult {
    std::vector<IterationRecord> history;  // t = 0 .. final
    bool converged = false;

    const IterationRecord& final() const { return history.back(); }
};

// Elementwise max(A - E, 0); negative excursions are clamped because they
// only arise from estimator noise.
Image subtract_env(const Image& a, const Image& e);

// True iff the mean absolute difference over the shared mask is below tau.
bool converged(const HeightField& h_prev, const HeightField& h_next, double tau);

// One photometric + integration pass, restricted to `silhouette` when given.
// This exact routine backs both the classic baseline and iteration 0, so a
// zero environment reproduces the baseline bit-for-bit.
struct ReconStep {
    PsMaps maps;
    HeightField height;
};
ReconStep reconstruct(const std::vector<Image>& images, const LightSet& lights,
                      double shadow_threshold, const IntegrationConfig& icfg,
                      const PixelMask* silhouette);

// Iterative inter-reflection removal: photometric solve + integration on the
// current images, reverted trace of the reconstruction to estimate the
// accumulated environment image sum of E^1..E^rays, subtraction from the
// ORIGINAL images, repeat until converged(tau) or max_iterations.
PipelineResult run(const Dataset& dataset, const EnvironmentBox& env,
                   const PipelineConfig& cfg);

// Silhouette used by `run`: ground-truth normal footprint when the dataset
// carries one (zero normal = off object), otherwise none.
std::optional<PixelMask> dataset_silhouette(const Dataset& d);

}  // namespace irtps
