// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "irtps/maps.hpp"
#include "irtps/vec3.hpp"

namespace irtps {

// Mean absolute height difference over the mask intersection after aligning
// the second field's mean to the first's (the integration constant is
// unobservable). Set align = false for the raw difference.
double height_error(const HeightField& gt, const HeightField& h, bool align = true);

// Per-channel mean absolute albedo difference; first = mean of the three
// channel means.
std::pair<double, Vec3> albedo_error(const AlbedoMap& gt, const AlbedoMap& a);

// Per-axis mean absolute normal-component difference; first = mean of the
// three axis means. Inputs must be unit-normalized on their masks.
std::pair<double, Vec3> normal_error(const NormalMap& gt, const NormalMap& n);

struct ErrorReport {
    double height_err = 0.0;
    double albedo_err = 0.0;
    Vec3 albedo_err_rgb;
    double normal_err = 0.0;
    Vec3 normal_err_xyz;
    std::size_t n_valid_pixels = 0;
};

// All three metrics over one common mask (the intersection of every input
// mask), so the report describes a single pixel population.
ErrorReport evaluate(const HeightField& gt_h, const NormalMap& gt_n, const AlbedoMap& gt_a,
                     const HeightField& h, const NormalMap& n, const AlbedoMap& a,
                     bool align_height = true);

using NamedReports = std::vector<std::pair<std::string, ErrorReport>>;

// CSV: "method,height_err,albedo_err,normal_err,n_pixels" + one row each.
std::string metrics_csv(const NamedReports& reports);
// Plain-text table: method columns, Height/Albedo/Normal rows.
std::string metrics_table(const NamedReports& reports);

}  // namespace irtps
