// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "irtps/image.hpp"
#include "irtps/lights.hpp"
#include "irtps/maps.hpp"
#include "irtps/scene_config.hpp"
#include "irtps/vec3.hpp"

namespace irtps {

// Minimum ray parameter accepted by intersection tests (self-hit guard).
inline constexpr double kRayEpsilon = 1e-6;

struct Ray {
    Vec3 o;
    Vec3 d;  // unit length
};

enum class HitKind { None, Wall, Object };

struct Hit {
    double t = 0.0;
    Vec3 point;
    Vec3 normal;  // unit, faces the incoming ray
    Vec3 albedo;
    HitKind kind = HitKind::None;
    Wall wall = Wall::Back;  // meaningful when kind == Wall

    explicit operator bool() const { return kind != HitKind::None; }
};

// Five-wall enclosure centered at the origin, open toward +z (the camera).
// Wall normals point into the interior.
struct EnvironmentBox {
    Vec3 size{2.4, 2.4, 2.4};
    Vec3 albedo[kWallCount] = {
        {0.75, 0.1, 0.1},  {0.1, 0.75, 0.1},   {0.75, 0.75, 0.75},
        {0.75, 0.75, 0.75}, {0.75, 0.75, 0.75},
    };

    Vec3 half() const { return size * 0.5; }
    // Nearest wall hit with t > tmin, or a miss.
    Hit intersect(const Ray& ray, double tmin) const;

    static EnvironmentBox from_config(const SceneConfig& cfg);
};

// Triangulated height grid sampled at pixel centers (two triangles per cell
// of four valid nodes), walked with a 2-D DDA for ray queries. Heights and
// hit points are in world units; the grid shares the camera's pixel mapping.
class HeightfieldSurface {
public:
    HeightfieldSurface() = default;
    // zw holds one world-space z per node, row-major; nodes outside `mask`
    // carry no geometry. Optional per-node normals serve primary-ray lookups.
    HeightfieldSurface(int width, int height, double pitch, std::vector<double> zw,
                       PixelMask mask, Vec3 albedo, std::vector<Vec3> node_normals = {});

    int width() const { return w_; }
    int height() const { return h_; }
    double pitch() const { return pitch_; }
    const PixelMask& mask() const { return mask_; }
    Vec3 albedo() const { return albedo_; }

    bool node_valid(int r, int c) const { return mask_.at(r, c); }
    Vec3 node_point(int r, int c) const;
    Vec3 node_normal(int r, int c) const;
    double node_z(int r, int c) const { return z_[static_cast<size_t>(r) * w_ + c]; }

    // Nearest triangle hit with t in (tmin, tmax), or a miss.
    Hit intersect(const Ray& ray, double tmin, double tmax) const;

private:
    bool test_cell(int i, int j, const Ray& ray, double tmin, double tmax, Hit* best) const;

    int w_ = 0, h_ = 0;
    double pitch_ = 1.0;
    std::vector<double> z_;
    PixelMask mask_;
    Vec3 albedo_{1.0, 1.0, 1.0};
    std::vector<Vec3> normals_;
    std::vector<float> cell_zmin_, cell_zmax_;
    std::vector<std::uint8_t> cell_ok_;
};

struct SphereGeom {
    Vec3 center{0.0, 0.0, 0.0};
    double radius = 0.5;
};

// Full render scene: enclosure, one Lambertian object, directional lights,
// orthographic camera on the open face looking down -z.
struct Scene {
    EnvironmentBox env;
    int width = 0;
    int height = 0;
    double pitch = 0.0;  // world units per pixel: env.size.x / width
    LightSet lights;
    Vec3 object_albedo{0.6, 0.6, 0.6};
    std::optional<SphereGeom> sphere;
    std::optional<HeightfieldSurface> field;

    // Center of pixel (r, c) on the open-face plane: x right, y up.
    Vec3 pixel_point(int r, int c) const {
        return {(c + 0.5 - 0.5 * width) * pitch, (0.5 * height - r - 0.5) * pitch,
                0.5 * env.size.z};
    }
    std::uint64_t pixel_id(int r, int c) const {
        return static_cast<std::uint64_t>(r) * width + c;
    }
    // Deterministic first surface point seen by pixel (r, c): analytic for
    // the sphere, node lookup for height grids, wall/miss otherwise.
    Hit primary_hit(int r, int c) const;
};

// Nearest hit among walls and object with t > tmin.
Hit intersect(const Ray& ray, const Scene& scene, double tmin = kRayEpsilon);
// True when anything blocks the ray (directional-light shadow test).
bool occluded(const Ray& ray, const Scene& scene, double tmin = kRayEpsilon);

// Analytic sphere hit helper (nearest root with t > tmin).
std::optional<double> sphere_hit_t(const Ray& ray, const SphereGeom& s, double tmin);

struct SceneGroundTruth {
    Image height;        // 1-ch, world z / pitch (pixel units)
    Image normals;       // 3-ch raw components; all-zero marks off-object
    Image albedo;        // 3-ch
    PixelMask silhouette;
    double anchor = 0.0;  // mean world z over the silhouette
};

struct BuiltScene {
    Scene scene;
    SceneGroundTruth gt;
};

// Instantiates the configured object at cfg.resolution and derives its
// ground-truth maps. Heightfield sources are loaded relative to `base_dir`.
BuiltScene build_scene(const SceneConfig& cfg, const std::filesystem::path& base_dir = {});

// Places a mean-zero reconstructed height field (pixel units) back into the
// box at world depth `anchor` for occlusion queries.
HeightfieldSurface make_surface(const HeightField& h, double anchor, double pitch,
                                Vec3 albedo = {1.0, 1.0, 1.0});

}  // namespace irtps
