// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "irtps/dataset.hpp"
#include "irtps/errors.hpp"
#include "irtps/lights.hpp"
#include "irtps/scene_config.hpp"
#include "test_util.hpp"

using namespace irtps;
using test::TempDir;

TEST_SUITE("config") {

TEST_CASE("parses every key, tolerates comments and blank lines") {
    const char* text =
        "# a scene\n"
        "box.size = 2 2.5 3\n"
        "\n"
        "wall.left.albedo = 0.9 0.1 0.2\n"
        "wall.right.albedo = 0.3\n"
        "wall.back.albedo = 0.4 0.4 0.4\n"
        "wall.floor.albedo = 0.5 0.5 0.5\n"
        "wall.ceiling.albedo = 0.6 0.6 0.6\n"
        "object.type = sphere   # trailing comment\n"
        "object.albedo = 0.7 0.6 0.5\n"
        "object.radius = 0.4\n"
        "spp = 64\n"
        "max_bounces = 3\n"
        "seed = 12345\n"
        "resolution = 48\n";
    SceneConfig cfg = parse_scene_config_text(text, "t");
    CHECK(cfg.box_size.x == 2.0);
    CHECK(cfg.box_size.y == 2.5);
    CHECK(cfg.box_size.z == 3.0);
    CHECK(cfg.wall_albedo[0].x == 0.9);
    CHECK(cfg.wall_albedo[1].x == 0.3);  // scalar broadcasts to rgb
    CHECK(cfg.wall_albedo[1].z == 0.3);
    CHECK(cfg.object_type == "sphere");
    CHECK(cfg.object_albedo.x == 0.7);
    CHECK(cfg.object_radius == 0.4);
    CHECK(cfg.spp == 64);
    CHECK(cfg.max_bounces == 3);
    CHECK(cfg.seed == 12345u);
    CHECK(cfg.resolution == 48);
}

TEST_CASE("rejects unknown keys, bad syntax, and missing object.type") {
    CHECK_THROWS_WITH_AS(parse_scene_config_text("object.type = sphere\nbogus = 1\n", "t"),
                         doctest::Contains("unknown key bogus"), config_error);
    CHECK_THROWS_WITH_AS(parse_scene_config_text("object.type sphere\n", "t"),
                         doctest::Contains("line 1"), config_error);
    CHECK_THROWS_WITH_AS(parse_scene_config_text("spp = 16\n", "t"),
                         doctest::Contains("missing key object.type"), config_error);
    CHECK_THROWS_WITH_AS(
        parse_scene_config_text("object.type = sphere\nwall.left.albedo = 1.5\n", "t"),
        doctest::Contains("wall.left"), config_error);
    CHECK_THROWS_WITH_AS(parse_scene_config_text("object.type = cube\n", "t"),
                         doctest::Contains("unknown type"), config_error);
    CHECK_THROWS_AS(parse_scene_config_text("object.type = sphere\nspp = nope\n", "t"),
                    config_error);
}

TEST_CASE("write/read round trip is value-exact") {
    TempDir tmp("irtps_config_test");
    SceneConfig cfg;
    cfg.object_type = "concave-bowl";
    cfg.box_size = {2.0, 2.0, 1.0 / 3.0};  // not exactly representable in text unless %.17g
    cfg.object_albedo = {0.123456789012345, 0.5, 0.25};
    cfg.object_radius = std::sqrt(2.0) / 2.0;
    cfg.object_depth = 0.3;
    cfg.spp = 7;
    cfg.seed = 0xDEADBEEFCAFEull;
    cfg.resolution = 33;
    cfg.surface_anchor = -0.0123456789;
    cfg.has_surface_anchor = true;

    write_scene_config(cfg, tmp.path / "s.cfg");
    SceneConfig back = read_scene_config(tmp.path / "s.cfg");
    CHECK(back.object_type == cfg.object_type);
    CHECK(back.box_size.z == cfg.box_size.z);
    CHECK(back.object_albedo.x == cfg.object_albedo.x);
    CHECK(back.object_radius == cfg.object_radius);
    CHECK(back.spp == cfg.spp);
    CHECK(back.seed == cfg.seed);
    CHECK(back.resolution == cfg.resolution);
    CHECK(back.has_surface_anchor);
    CHECK(back.surface_anchor == cfg.surface_anchor);
}

TEST_CASE("light rings are unit, well-conditioned, and validate") {
    LightSet ring = LightSet::ring(8, 30.0);
    REQUIRE(ring.count() == 8);
    for (const Vec3& l : ring.directions) {
        CHECK(std::abs(norm(l) - 1.0) < 1e-12);
        CHECK(l.z == doctest::Approx(std::cos(30.0 * std::numbers::pi / 180.0)).epsilon(1e-12));
    }
    CHECK_NOTHROW(ring.validate());
    CHECK(ring.has_full_rank());
}

TEST_CASE("light validation rejects degenerate sets") {
    LightSet two;
    two.add({0.0, 0.0, 1.0});
    two.add({1.0, 0.0, 0.0});
    CHECK_THROWS_WITH_AS(two.validate(), doctest::Contains("at least 3"), io_error);

    LightSet non_unit;
    non_unit.add({0.0, 0.0, 1.0});
    non_unit.add({1.0, 0.0, 0.0});
    non_unit.add({0.0, 0.5, 0.0});
    CHECK_THROWS_WITH_AS(non_unit.validate(), doctest::Contains("not unit"), io_error);

    LightSet rank2;  // all in the x-z plane
    rank2.add({0.0, 0.0, 1.0});
    rank2.add({1.0, 0.0, 0.0});
    rank2.add({std::sqrt(0.5), 0.0, std::sqrt(0.5)});
    CHECK(!rank2.has_full_rank());
    CHECK_THROWS_WITH_AS(rank2.validate(), doctest::Contains("rank deficient"), io_error);
}

TEST_CASE("lights.txt round trip, renormalization, and rejection") {
    TempDir tmp("irtps_lights_test");
    LightSet ring = LightSet::ring(5, 25.0);
    save_lights(ring, tmp.path / "lights.txt");
    LightSet back = load_lights(tmp.path / "lights.txt");
    REQUIRE(back.count() == 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(back.directions[k].x == ring.directions[k].x);
        CHECK(back.directions[k].z == ring.directions[k].z);
    }

    {
        std::ofstream f(tmp.path / "near.txt");
        f << "0 0 1.000005\n0.9999 0 0\n0 1 0\n";
    }
    LightSet near = load_lights(tmp.path / "near.txt");
    CHECK(std::abs(norm(near.directions[0]) - 1.0) < 1e-12);

    {
        std::ofstream f(tmp.path / "far.txt");
        f << "0 0 1.2\n";
    }
    CHECK_THROWS_WITH_AS(load_lights(tmp.path / "far.txt"),
                         doctest::Contains("deviates"), io_error);

    {
        std::ofstream f(tmp.path / "short.txt");
        f << "0 0\n";
    }
    CHECK_THROWS_WITH_AS(load_lights(tmp.path / "short.txt"),
                         doctest::Contains("expected three numbers"), io_error);
}

TEST_CASE("dataset save/load round trip carries images, lights, GT, scene") {
    TempDir tmp("irtps_dataset_test");
    Dataset d;
    d.lights = LightSet::ring(3, 40.0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<float> u(0.0f, 2.0f);
    for (int k = 0; k < 3; ++k) {
        Image img(4, 3, 3);
        for (float& v : img.data) v = u(rng);
        d.images.push_back(img);
    }
    d.gt_height = Image(4, 3, 1, 0.5f);
    d.gt_normals = Image(4, 3, 3, 0.0f);
    d.gt_normals->at(1, 1, 2) = 1.0f;
    d.gt_albedo = Image(4, 3, 3, 0.25f);
    SceneConfig cfg;
    cfg.object_type = "sphere";
    d.scene = cfg;

    save_dataset(d, tmp.path / "ds");
    Dataset back = load_dataset(tmp.path / "ds");
    REQUIRE(back.count() == 3);
    CHECK(test::max_abs_diff(back.images[2], d.images[2]) == 0.0f);
    CHECK(back.has_ground_truth());
    CHECK(back.gt_height->at(0, 0) == 0.5f);
    CHECK(back.gt_normals->at(1, 1, 2) == 1.0f);
    REQUIRE(back.scene.has_value());
    CHECK(back.scene->object_type == "sphere");
    CHECK(std::abs(back.lights.directions[1].x - d.lights.directions[1].x) < 1e-15);
}

TEST_CASE("dataset loader rejects count and shape mismatches") {
    TempDir tmp("irtps_dataset_bad");
    Dataset d;
    d.lights = LightSet::ring(3, 40.0);
    for (int k = 0; k < 3; ++k) d.images.push_back(Image(4, 3, 3, 0.5f));
    save_dataset(d, tmp.path / "ds");

    std::filesystem::remove(tmp.path / "ds" / "image_002.pfm");
    CHECK_THROWS_WITH_AS(load_dataset(tmp.path / "ds"),
                         doctest::Contains("count mismatch"), io_error);

    CHECK_THROWS_WITH_AS(load_dataset(tmp.path / "nowhere"),
                         doctest::Contains("not a dataset directory"), io_error);
}

}  // TEST_SUITE
