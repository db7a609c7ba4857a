// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irtps/errors.hpp"
#include "irtps/pfm.hpp"

namespace irtps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Slab clip of [t0, t1] against lo <= x0 + t*dx <= hi.
bool clip_axis(double x0, double dx, double lo, double hi, double* t0, double* t1) {
    if (std::abs(dx) < 1e-15) return x0 >= lo - 1e-12 && x0 <= hi + 1e-12;
    double ta = (lo - x0) / dx;
    double tb = (hi - x0) / dx;
    if (ta > tb) std::swap(ta, tb);
    *t0 = std::max(*t0, ta);
    *t1 = std::min(*t1, tb);
    return *t0 <= *t1;
}

bool moller_trumbore(const Ray& ray, const Vec3& a, const Vec3& b, const Vec3& c, double tmin,
                     double tmax, double* t_out, Vec3* n_out) {
    constexpr double kBaryEps = 1e-9;
    Vec3 e1 = b - a;
    Vec3 e2 = c - a;
    Vec3 pvec = cross(ray.d, e2);
    double det = dot(e1, pvec);
    if (std::abs(det) < 1e-14) return false;
    double inv = 1.0 / det;
    Vec3 tvec = ray.o - a;
    double u = dot(tvec, pvec) * inv;
    if (u < -kBaryEps || u > 1.0 + kBaryEps) return false;
    Vec3 qvec = cross(tvec, e1);
    double v = dot(ray.d, qvec) * inv;
    if (v < -kBaryEps || u + v > 1.0 + kBaryEps) return false;
    double t = dot(e2, qvec) * inv;
    if (t <= tmin || t >= tmax) return false;
    Vec3 n = normalized(cross(e1, e2));
    if (dot(n, ray.d) > 0.0) n = -n;
    *t_out = t;
    *n_out = n;
    return true;
}

}  // namespace

Hit EnvironmentBox::intersect(const Ray& ray, double tmin) const {
    const Vec3 h = half();
    // axis, plane position, inward normal per wall
    struct Plane {
        int axis;
        double pos;
        Vec3 normal;
    };
    const Plane planes[kWallCount] = {
        {0, -h.x, {1.0, 0.0, 0.0}},   // left
        {0, +h.x, {-1.0, 0.0, 0.0}},  // right
        {2, -h.z, {0.0, 0.0, 1.0}},   // back
        {1, -h.y, {0.0, 1.0, 0.0}},   // floor
        {1, +h.y, {0.0, -1.0, 0.0}},  // ceiling
    };
    const Wall ids[kWallCount] = {Wall::Left, Wall::Right, Wall::Back, Wall::Floor,
                                  Wall::Ceiling};
    const double o[3] = {ray.o.x, ray.o.y, ray.o.z};
    const double d[3] = {ray.d.x, ray.d.y, ray.d.z};
    const double lim[3] = {h.x, h.y, h.z};

    Hit best;
    double best_t = kInf;
    for (int wi = 0; wi < kWallCount; ++wi) {
        const Plane& pl = planes[wi];
        if (std::abs(d[pl.axis]) < 1e-15) continue;
        double t = (pl.pos - o[pl.axis]) / d[pl.axis];
        if (t <= tmin || t >= best_t) continue;
        int a1 = (pl.axis + 1) % 3, a2 = (pl.axis + 2) % 3;
        double c1 = o[a1] + t * d[a1];
        double c2 = o[a2] + t * d[a2];
        if (std::abs(c1) > lim[a1] + 1e-12 || std::abs(c2) > lim[a2] + 1e-12) continue;
        best_t = t;
        best.t = t;
        best.point = ray.o + ray.d * t;
        best.normal = dot(pl.normal, ray.d) > 0.0 ? -pl.normal : pl.normal;
        best.albedo = albedo[wi];
        best.kind = HitKind::Wall;
        best.wall = ids[wi];
    }
    return best;
}

EnvironmentBox EnvironmentBox::from_config(const SceneConfig& cfg) {
    EnvironmentBox env;
    env.size = cfg.box_size;
    for (int w = 0; w < kWallCount; ++w) env.albedo[w] = cfg.wall_albedo[w];
    return env;
}

HeightfieldSurface::HeightfieldSurface(int width, int height, double pitch,
                                       std::vector<double> zw, PixelMask mask, Vec3 albedo,
                                       std::vector<Vec3> node_normals)
    : w_(width), h_(height), pitch_(pitch), z_(std::move(zw)), mask_(std::move(mask)),
      albedo_(albedo), normals_(std::move(node_normals)) {
    const int ch = std::max(0, h_ - 1), cw = std::max(0, w_ - 1);
    cell_zmin_.assign(static_cast<size_t>(ch) * cw, 0.0f);
    cell_zmax_.assign(static_cast<size_t>(ch) * cw, 0.0f);
    cell_ok_.assign(static_cast<size_t>(ch) * cw, 0);
    for (int i = 0; i < ch; ++i) {
        for (int j = 0; j < cw; ++j) {
            if (!(mask_.at(i, j) && mask_.at(i, j + 1) && mask_.at(i + 1, j) &&
                  mask_.at(i + 1, j + 1))) {
                continue;
            }
            double z00 = node_z(i, j), z01 = node_z(i, j + 1);
            double z10 = node_z(i + 1, j), z11 = node_z(i + 1, j + 1);
            size_t ci = static_cast<size_t>(i) * cw + j;
            cell_zmin_[ci] = static_cast<float>(std::min({z00, z01, z10, z11}));
            cell_zmax_[ci] = static_cast<float>(std::max({z00, z01, z10, z11}));
            cell_ok_[ci] = 1;
        }
    }
}

Vec3 HeightfieldSurface::node_point(int r, int c) const {
    return {(c + 0.5 - 0.5 * w_) * pitch_, (0.5 * h_ - r - 0.5) * pitch_, node_z(r, c)};
}

Vec3 HeightfieldSurface::node_normal(int r, int c) const {
    if (normals_.empty()) return {0.0, 0.0, 1.0};
    return normals_[static_cast<size_t>(r) * w_ + c];
}

bool HeightfieldSurface::test_cell(int i, int j, const Ray& ray, double tmin, double tmax,
                                   Hit* best) const {
    size_t ci = static_cast<size_t>(i) * (w_ - 1) + j;
    if (!cell_ok_[ci]) return false;
    Vec3 a = node_point(i, j);
    Vec3 b = node_point(i, j + 1);
    Vec3 c = node_point(i + 1, j);
    Vec3 d = node_point(i + 1, j + 1);
    bool found = false;
    double t;
    Vec3 n;
    double cap = best->kind != HitKind::None ? best->t : tmax;
    if (moller_trumbore(ray, a, b, d, tmin, cap, &t, &n)) {
        best->t = t;
        best->normal = n;
        found = true;
        cap = t;
    }
    if (moller_trumbore(ray, a, d, c, tmin, cap, &t, &n)) {
        best->t = t;
        best->normal = n;
        found = true;
    }
    if (found) {
        best->point = ray.o + ray.d * best->t;
        best->albedo = albedo_;
        best->kind = HitKind::Object;
    }
    return found;
}

Hit HeightfieldSurface::intersect(const Ray& ray, double tmin, double tmax) const {
    Hit best;
    if (w_ < 2 || h_ < 2) return best;
    const double inv_pitch = 1.0 / pitch_;
    // Grid coordinates: node (r, c) sits at (u, v) = (c, r).
    const double u0 = ray.o.x * inv_pitch + 0.5 * w_ - 0.5;
    const double v0 = 0.5 * h_ - 0.5 - ray.o.y * inv_pitch;
    const double du = ray.d.x * inv_pitch;
    const double dv = -ray.d.y * inv_pitch;

    double t0 = tmin, t1 = tmax;
    if (!clip_axis(u0, du, 0.0, w_ - 1.0, &t0, &t1)) return best;
    if (!clip_axis(v0, dv, 0.0, h_ - 1.0, &t0, &t1)) return best;
    if (t0 > t1) return best;

    double uc = u0 + t0 * du;
    double vc = v0 + t0 * dv;
    int j = std::clamp(static_cast<int>(std::floor(uc)), 0, w_ - 2);
    int i = std::clamp(static_cast<int>(std::floor(vc)), 0, h_ - 2);

    const int stepj = du > 0.0 ? 1 : -1;
    const int stepi = dv > 0.0 ? 1 : -1;
    double tmax_u = kInf, tmax_v = kInf, tdelta_u = kInf, tdelta_v = kInf;
    if (std::abs(du) > 1e-15) {
        tmax_u = ((du > 0.0 ? j + 1 : j) - u0) / du;
        tdelta_u = std::abs(1.0 / du);
    }
    if (std::abs(dv) > 1e-15) {
        tmax_v = ((dv > 0.0 ? i + 1 : i) - v0) / dv;
        tdelta_v = std::abs(1.0 / dv);
    }

    double tcur = t0;
    const int max_steps = 2 * (w_ + h_) + 4;
    for (int step = 0; step < max_steps; ++step) {
        double tnext = std::min({tmax_u, tmax_v, t1});
        // Prune cells whose z slab the ray never enters.
        size_t ci = static_cast<size_t>(i) * (w_ - 1) + j;
        if (cell_ok_[ci]) {
            double za = ray.o.z + tcur * ray.d.z;
            double zb = ray.o.z + tnext * ray.d.z;
            if (za > zb) std::swap(za, zb);
            if (zb >= cell_zmin_[ci] - 1e-9 && za <= cell_zmax_[ci] + 1e-9) {
                test_cell(i, j, ray, tmin, tmax, &best);
                if (best.kind != HitKind::None && best.t <= tnext + 1e-12) break;
            }
        }
        if (tnext >= t1) break;
        if (tmax_u <= tmax_v) {
            j += stepj;
            tcur = tmax_u;
            tmax_u += tdelta_u;
            if (j < 0 || j > w_ - 2) break;
        } else {
            i += stepi;
            tcur = tmax_v;
            tmax_v += tdelta_v;
            if (i < 0 || i > h_ - 2) break;
        }
    }
    return best;
}

std::optional<double> sphere_hit_t(const Ray& ray, const SphereGeom& s, double tmin) {
    Vec3 oc = ray.o - s.center;
    double b = dot(oc, ray.d);
    double c = dot(oc, oc) - s.radius * s.radius;
    double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    double sq = std::sqrt(disc);
    double t = -b - sq;
    if (t <= tmin) t = -b + sq;
    if (t <= tmin) return std::nullopt;
    return t;
}

Hit Scene::primary_hit(int r, int c) const {
    Ray ray{pixel_point(r, c), {0.0, 0.0, -1.0}};
    if (sphere) {
        double dx = ray.o.x - sphere->center.x;
        double dy = ray.o.y - sphere->center.y;
        double rho2 = dx * dx + dy * dy;
        double r2 = sphere->radius * sphere->radius;
        if (rho2 <= r2) {
            double z = sphere->center.z + std::sqrt(r2 - rho2);
            Hit hit;
            hit.t = ray.o.z - z;
            hit.point = {ray.o.x, ray.o.y, z};
            hit.normal = (hit.point - sphere->center) / sphere->radius;
            hit.albedo = object_albedo;
            hit.kind = HitKind::Object;
            return hit;
        }
    } else if (field && field->node_valid(r, c)) {
        Hit hit;
        hit.point = field->node_point(r, c);
        hit.t = ray.o.z - hit.point.z;
        hit.normal = field->node_normal(r, c);
        hit.albedo = field->albedo();
        hit.kind = HitKind::Object;
        return hit;
    }
    return env.intersect(ray, kRayEpsilon);
}

Hit intersect(const Ray& ray, const Scene& scene, double tmin) {
    Hit best = scene.env.intersect(ray, tmin);
    double cap = best.kind != HitKind::None ? best.t : kInf;
    if (scene.sphere) {
        if (auto t = sphere_hit_t(ray, *scene.sphere, tmin); t && *t < cap) {
            best.t = *t;
            best.point = ray.o + ray.d * *t;
            Vec3 n = (best.point - scene.sphere->center) / scene.sphere->radius;
            best.normal = dot(n, ray.d) > 0.0 ? -n : n;
            best.albedo = scene.object_albedo;
            best.kind = HitKind::Object;
            cap = *t;
        }
    }
    if (scene.field) {
        Hit fh = scene.field->intersect(ray, tmin, cap);
        if (fh.kind != HitKind::None && (best.kind == HitKind::None || fh.t < best.t)) best = fh;
    }
    return best;
}

bool occluded(const Ray& ray, const Scene& scene, double tmin) {
    return intersect(ray, scene, tmin).kind != HitKind::None;
}

HeightfieldSurface make_surface(const HeightField& h, double anchor, double pitch, Vec3 albedo) {
    std::vector<double> zw(h.z.size(), 0.0);
    for (size_t i = 0; i < h.z.size(); ++i) zw[i] = anchor + h.z[i] * pitch;
    return HeightfieldSurface(h.width, h.height, pitch, std::move(zw), h.mask, albedo);
}

namespace {

// Central-difference node normals for a generic height grid (world units).
std::vector<Vec3> grid_normals(int w, int h, double pitch, const std::vector<double>& z,
                               const PixelMask& mask) {
    std::vector<Vec3> n(static_cast<size_t>(w) * h, Vec3{0.0, 0.0, 1.0});
    auto zat = [&](int r, int c) { return z[static_cast<size_t>(r) * w + c]; };
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!mask.at(r, c)) continue;
            int cl = c > 0 && mask.at(r, c - 1) ? c - 1 : c;
            int cr = c + 1 < w && mask.at(r, c + 1) ? c + 1 : c;
            int ru = r > 0 && mask.at(r - 1, c) ? r - 1 : r;
            int rd = r + 1 < h && mask.at(r + 1, c) ? r + 1 : r;
            double zx = cr > cl ? (zat(r, cr) - zat(r, cl)) / ((cr - cl) * pitch) : 0.0;
            // y grows upward while rows grow downward
            double zy = rd > ru ? (zat(ru, c) - zat(rd, c)) / ((rd - ru) * pitch) : 0.0;
            n[static_cast<size_t>(r) * w + c] = normalized(Vec3{-zx, -zy, 1.0});
        }
    }
    return n;
}

}  // namespace

BuiltScene build_scene(const SceneConfig& cfg, const std::filesystem::path& base_dir) {
    BuiltScene out;
    Scene& scene = out.scene;
    scene.env = EnvironmentBox::from_config(cfg);
    scene.width = cfg.resolution;
    scene.height = cfg.resolution;
    scene.pitch = scene.env.size.x / scene.width;
    scene.object_albedo = cfg.object_albedo;

    const int w = scene.width, h = scene.height;
    const double pitch = scene.pitch;
    const Vec3 half = scene.env.half();

    std::vector<double> zw(static_cast<size_t>(w) * h, 0.0);
    std::vector<Vec3> normals(static_cast<size_t>(w) * h, Vec3{0.0, 0.0, 0.0});
    PixelMask sil(w, h);
    auto node_xy = [&](int r, int c) {
        return std::pair<double, double>{(c + 0.5 - 0.5 * w) * pitch,
                                         (0.5 * h - r - 0.5) * pitch};
    };

    if (cfg.object_type == "sphere") {
        double radius = cfg.object_radius;
        if (radius >= std::min({half.x, half.y, half.z})) {
            throw config_error("object.radius " + std::to_string(radius) +
                               " does not fit inside the box");
        }
        scene.sphere = SphereGeom{{0.0, 0.0, 0.0}, radius};
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                auto [x, y] = node_xy(r, c);
                double rho2 = x * x + y * y;
                if (rho2 > radius * radius) continue;
                double z = std::sqrt(radius * radius - rho2);
                size_t i = static_cast<size_t>(r) * w + c;
                zw[i] = z;
                normals[i] = Vec3{x, y, z} / radius;
                sil.set(r, c, true);
            }
        }
    } else if (cfg.object_type == "concave-bowl") {
        double radius = cfg.object_radius;
        double depth = cfg.object_depth;
        if (radius >= std::min(half.x, half.y) || depth >= half.z) {
            throw config_error("concave-bowl does not fit inside the box");
        }
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                auto [x, y] = node_xy(r, c);
                double rho2 = x * x + y * y;
                if (rho2 > radius * radius) continue;
                size_t i = static_cast<size_t>(r) * w + c;
                // Paraboloid depression, rim at z = 0, center at -depth.
                zw[i] = -depth * (1.0 - rho2 / (radius * radius));
                double k = 2.0 * depth / (radius * radius);
                normals[i] = normalized(Vec3{-k * x, -k * y, 1.0});
                sil.set(r, c, true);
            }
        }
        scene.field = HeightfieldSurface(w, h, pitch, zw, sil, cfg.object_albedo,
                                         normals);
    } else if (cfg.object_type == "heightfield") {
        if (cfg.object_height_map.empty()) {
            throw config_error("object.type heightfield requires object.height_map");
        }
        Image src = read_pfm(base_dir / cfg.object_height_map);
        if (src.channels != 1 || src.width != w || src.height != h) {
            throw config_error("object.height_map must be a 1-channel PFM matching resolution " +
                               std::to_string(w));
        }
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                size_t i = static_cast<size_t>(r) * w + c;
                zw[i] = static_cast<double>(src.at(r, c)) * pitch;
                sil.set(r, c, true);
            }
        }
        normals = grid_normals(w, h, pitch, zw, sil);
        scene.field = HeightfieldSurface(w, h, pitch, zw, sil, cfg.object_albedo, normals);
    } else {
        throw config_error("unknown object.type \"" + cfg.object_type + "\"");
    }

    // Ground truth shares the node arrays.
    SceneGroundTruth& gt = out.gt;
    gt.height = Image(w, h, 1);
    gt.normals = Image(w, h, 3);
    gt.albedo = Image(w, h, 3);
    gt.silhouette = sil;
    double zsum = 0.0;
    size_t nsil = 0;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!sil.at(r, c)) continue;
            size_t i = static_cast<size_t>(r) * w + c;
            gt.height.at(r, c) = static_cast<float>(zw[i] / pitch);
            gt.normals.at(r, c, 0) = static_cast<float>(normals[i].x);
            gt.normals.at(r, c, 1) = static_cast<float>(normals[i].y);
            gt.normals.at(r, c, 2) = static_cast<float>(normals[i].z);
            gt.albedo.at(r, c, 0) = static_cast<float>(cfg.object_albedo.x);
            gt.albedo.at(r, c, 1) = static_cast<float>(cfg.object_albedo.y);
            gt.albedo.at(r, c, 2) = static_cast<float>(cfg.object_albedo.z);
            zsum += zw[i];
            ++nsil;
        }
    }
    gt.anchor = nsil > 0 ? zsum / static_cast<double>(nsil) : 0.0;
    return out;
}

}  // namespace irtps
