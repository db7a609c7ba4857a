// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/scene_config.hpp"

#include <fstream>
#include <sstream>

#include "irtps/errors.hpp"

namespace irtps {

const char* wall_name(Wall w) {
    switch (w) {
        case Wall::Left: return "left";
        case Wall::Right: return "right";
        case Wall::Back: return "back";
        case Wall::Floor: return "floor";
        case Wall::Ceiling: return "ceiling";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& where) {
    size_t used = 0;
    double d;
    try {
        d = std::stod(v, &used);
    } catch (const std::logic_error&) {
        throw config_error(where + ": cannot parse number \"" + v + "\"");
    }
    if (used != v.size()) throw config_error(where + ": trailing junk in number \"" + v + "\"");
    return d;
}

long long parse_int(const std::string& v, const std::string& where) {
    size_t used = 0;
    long long i;
    try {
        i = std::stoll(v, &used);
    } catch (const std::logic_error&) {
        throw config_error(where + ": cannot parse integer \"" + v + "\"");
    }
    if (used != v.size()) throw config_error(where + ": trailing junk in integer \"" + v + "\"");
    return i;
}

// Accepts "x y z" or a single scalar replicated to all three components.
Vec3 parse_vec3(const std::string& v, const std::string& where) {
    std::istringstream ss(v);
    std::vector<double> parts;
    std::string tok;
    while (ss >> tok) parts.push_back(parse_double(tok, where));
    if (parts.size() == 1) return {parts[0], parts[0], parts[0]};
    if (parts.size() == 3) return {parts[0], parts[1], parts[2]};
    throw config_error(where + ": expected 1 or 3 numbers, got " + std::to_string(parts.size()));
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text,
                                                                  const std::string& name) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error(name + " line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw config_error(name + " line " + std::to_string(lineno) + ": empty key");
        }
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

SceneConfig parse_scene_config_text(const std::string& text, const std::string& name) {
    SceneConfig cfg;
    bool have_type = false;
    for (const auto& [key, value] : parse_key_values(text, name)) {
        const std::string where = name + " key " + key;
        if (key == "box.size") {
            cfg.box_size = parse_vec3(value, where);
            if (cfg.box_size.x <= 0 || cfg.box_size.y <= 0 || cfg.box_size.z <= 0) {
                throw config_error(where + ": dimensions must be positive");
            }
        } else if (key == "wall.left.albedo") {
            cfg.wall_albedo[0] = parse_vec3(value, where);
        } else if (key == "wall.right.albedo") {
            cfg.wall_albedo[1] = parse_vec3(value, where);
        } else if (key == "wall.back.albedo") {
            cfg.wall_albedo[2] = parse_vec3(value, where);
        } else if (key == "wall.floor.albedo") {
            cfg.wall_albedo[3] = parse_vec3(value, where);
        } else if (key == "wall.ceiling.albedo") {
            cfg.wall_albedo[4] = parse_vec3(value, where);
        } else if (key == "object.type") {
            if (value != "sphere" && value != "heightfield" && value != "concave-bowl") {
                throw config_error(where + ": unknown type \"" + value + "\"");
            }
            cfg.object_type = value;
            have_type = true;
        } else if (key == "object.albedo") {
            cfg.object_albedo = parse_vec3(value, where);
        } else if (key == "object.radius") {
            cfg.object_radius = parse_double(value, where);
            if (cfg.object_radius <= 0) throw config_error(where + ": radius must be positive");
        } else if (key == "object.depth") {
            cfg.object_depth = parse_double(value, where);
            if (cfg.object_depth <= 0) throw config_error(where + ": depth must be positive");
        } else if (key == "object.height_map") {
            cfg.object_height_map = value;
        } else if (key == "spp") {
            cfg.spp = static_cast<int>(parse_int(value, where));
            if (cfg.spp < 1) throw config_error(where + ": spp must be >= 1");
        } else if (key == "max_bounces") {
            cfg.max_bounces = static_cast<int>(parse_int(value, where));
            if (cfg.max_bounces < 1) throw config_error(where + ": max_bounces must be >= 1");
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(value, where));
        } else if (key == "resolution") {
            cfg.resolution = static_cast<int>(parse_int(value, where));
            if (cfg.resolution < 1) throw config_error(where + ": resolution must be >= 1");
        } else if (key == "surface.anchor") {
            cfg.surface_anchor = parse_double(value, where);
            cfg.has_surface_anchor = true;
        } else {
            throw config_error(name + ": unknown key " + key);
        }
    }
    if (!have_type) throw config_error(name + ": missing key object.type");
    for (int w = 0; w < kWallCount; ++w) {
        const Vec3& a = cfg.wall_albedo[w];
        for (double ch : {a.x, a.y, a.z}) {
            if (ch < 0.0 || ch > 1.0) {
                throw config_error(name + ": wall." + wall_name(static_cast<Wall>(w)) +
                                   ".albedo outside [0,1]");
            }
        }
    }
    return cfg;
}

SceneConfig read_scene_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scene_config_text(buf.str(), path.filename().string());
}

void write_scene_config(const SceneConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    auto v3 = [](const Vec3& v) {
        std::ostringstream s;
        s.precision(17);
        s << v.x << " " << v.y << " " << v.z;
        return s.str();
    };
    out.precision(17);
    out << "box.size = " << v3(cfg.box_size) << "\n";
    for (int w = 0; w < kWallCount; ++w) {
        out << "wall." << wall_name(static_cast<Wall>(w)) << ".albedo = "
            << v3(cfg.wall_albedo[w]) << "\n";
    }
    out << "object.type = " << cfg.object_type << "\n";
    out << "object.albedo = " << v3(cfg.object_albedo) << "\n";
    if (cfg.object_type == "sphere" || cfg.object_type == "concave-bowl") {
        out << "object.radius = " << cfg.object_radius << "\n";
    }
    if (cfg.object_type == "concave-bowl") out << "object.depth = " << cfg.object_depth << "\n";
    if (!cfg.object_height_map.empty()) {
        out << "object.height_map = " << cfg.object_height_map << "\n";
    }
    out << "spp = " << cfg.spp << "\n";
    out << "max_bounces = " << cfg.max_bounces << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "resolution = " << cfg.resolution << "\n";
    if (cfg.has_surface_anchor) out << "surface.anchor = " << cfg.surface_anchor << "\n";
    if (!out) throw io_error("write failed: " + path.string());
}

}  // namespace irtps
