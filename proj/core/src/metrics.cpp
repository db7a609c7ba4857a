// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <tuple>

#include "irtps/errors.hpp"

namespace irtps {

namespace {

PixelMask require_intersection(const PixelMask& a, const PixelMask& b, const char* what) {
    if (!a.same_shape(b)) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    PixelMask m = mask_and(a, b);
    if (m.count() == 0) throw pipeline_error(std::string(what) + ": empty mask intersection");
    return m;
}

}  // namespace

double height_error(const HeightField& gt, const HeightField& h, bool align) {
    PixelMask m = require_intersection(gt.mask, h.mask, "height_error");
    double offset = 0.0;
    const size_t npx = m.bits.size();
    size_t n = 0;
    if (align) {
        double mg = 0.0, mh = 0.0;
        for (size_t i = 0; i < npx; ++i) {
            if (!m.bits[i]) continue;
            mg += gt.z[i];
            mh += h.z[i];
            ++n;
        }
        offset = (mg - mh) / static_cast<double>(n);
    }
    double sum = 0.0;
    n = 0;
    for (size_t i = 0; i < npx; ++i) {
        if (!m.bits[i]) continue;
        sum += std::abs(gt.z[i] - (h.z[i] + offset));
        ++n;
    }
    return sum / static_cast<double>(n);
}

std::pair<double, Vec3> albedo_error(const AlbedoMap& gt, const AlbedoMap& a) {
    if (gt.channels != 3 || a.channels != 3) {
        throw std::invalid_argument("albedo_error: maps must have 3 channels");
    }
    PixelMask m = require_intersection(gt.mask, a.mask, "albedo_error");
    double sum[3] = {0.0, 0.0, 0.0};
    size_t n = 0;
    for (size_t i = 0; i < m.bits.size(); ++i) {
        if (!m.bits[i]) continue;
        for (int ch = 0; ch < 3; ++ch) sum[ch] += std::abs(gt.rho[i * 3 + ch] - a.rho[i * 3 + ch]);
        ++n;
    }
    Vec3 per{sum[0] / n, sum[1] / n, sum[2] / n};
    return {(per.x + per.y + per.z) / 3.0, per};
}

std::pair<double, Vec3> normal_error(const NormalMap& gt, const NormalMap& n) {
    PixelMask m = require_intersection(gt.mask, n.mask, "normal_error");
    double sum[3] = {0.0, 0.0, 0.0};
    size_t cnt = 0;
    for (size_t i = 0; i < m.bits.size(); ++i) {
        if (!m.bits[i]) continue;
        for (int ax = 0; ax < 3; ++ax) sum[ax] += std::abs(gt.n[i * 3 + ax] - n.n[i * 3 + ax]);
        ++cnt;
    }
    Vec3 per{sum[0] / cnt, sum[1] / cnt, sum[2] / cnt};
    return {(per.x + per.y + per.z) / 3.0, per};
}

ErrorReport evaluate(const HeightField& gt_h, const NormalMap& gt_n, const AlbedoMap& gt_a,
                     const HeightField& h, const NormalMap& n, const AlbedoMap& a,
                     bool align_height) {
    PixelMask m = mask_and(mask_and(mask_and(gt_h.mask, gt_n.mask), gt_a.mask),
                           mask_and(mask_and(h.mask, n.mask), a.mask));
    if (m.count() == 0) throw pipeline_error("evaluate: empty mask intersection");

    HeightField gh = gt_h, hh = h;
    NormalMap gn = gt_n, nn = n;
    AlbedoMap ga = gt_a, aa = a;
    gh.mask = hh.mask = gn.mask = nn.mask = ga.mask = aa.mask = m;

    ErrorReport rep;
    rep.height_err = height_error(gh, hh, align_height);
    std::tie(rep.albedo_err, rep.albedo_err_rgb) = albedo_error(ga, aa);
    std::tie(rep.normal_err, rep.normal_err_xyz) = normal_error(gn, nn);
    rep.n_valid_pixels = m.count();
    return rep;
}

std::string metrics_csv(const NamedReports& reports) {
    std::string out = "method,height_err,albedo_err,normal_err,n_pixels\n";
    char buf[256];
    for (const auto& [name, r] : reports) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%zu\n", name.c_str(),
                      r.height_err, r.albedo_err, r.normal_err, r.n_valid_pixels);
        out += buf;
    }
    return out;
}

std::string metrics_table(const NamedReports& reports) {
    char buf[128];
    std::string out = "Metric  ";
    for (const auto& [name, r] : reports) {
        std::snprintf(buf, sizeof(buf), " %12s", name.c_str());
        out += buf;
    }
    out += "\n";
    const char* rows[3] = {"Height ", "Albedo ", "Normal "};
    for (int row = 0; row < 3; ++row) {
        out += rows[row];
        out += " ";
        for (const auto& [name, r] : reports) {
            double v = row == 0 ? r.height_err : (row == 1 ? r.albedo_err : r.normal_err);
            std::snprintf(buf, sizeof(buf), " %12.6f", v);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace irtps
