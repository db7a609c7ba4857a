// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "irtps/dataset.hpp"
#include "irtps/errors.hpp"
#include "irtps/image.hpp"
#include "irtps/lights.hpp"
#include "irtps/maps.hpp"
#include "irtps/metrics.hpp"
#include "irtps/parallel.hpp"
#include "irtps/pfm.hpp"
#include "irtps/pipeline.hpp"
#include "irtps/render.hpp"
#include "irtps/scene.hpp"
#include "irtps/scene_config.hpp"
#include "irtps/version.hpp"
#include "png_io.hpp"

namespace fs = std::filesystem;
using namespace irtps;

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// manifest.txt holds enough "key = value" lines to replay the command
// exactly. Values are the effective ones (after defaults and overrides), so
// a replay does not depend on defaults staying put.
class Manifest {
  public:
    void add(const std::string& key, const std::string& value) {
        lines_.emplace_back(key, value);
    }
    void add(const std::string& key, const char* value) { add(key, std::string(value)); }
    void add(const std::string& key, const fs::path& value) { add(key, value.string()); }
    void add(const std::string& key, bool value) {
        add(key, std::string(value ? "true" : "false"));
    }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, double value) { add(key, fmt_double(value)); }

    void write(const fs::path& dir, double duration_seconds) const {
        fs::path path = dir / "manifest.txt";
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw io_error("cannot write " + path.string());
        for (const auto& [k, v] : lines_) out << k << " = " << v << "\n";
        out << "duration_seconds = " << fmt_double(duration_seconds) << "\n";
        if (!out) throw io_error("write failed: " + path.string());
    }

  private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

  private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void write_maps(const fs::path& dir, const HeightField& h, const NormalMap& n,
                const AlbedoMap& a) {
    fs::create_directories(dir);
    write_pfm(to_image(h), dir / "height.pfm");
    write_pfm(to_image(n), dir / "normals.pfm");
    write_pfm(to_image(a), dir / "albedo.pfm");
}

struct GtMaps {
    HeightField height;
    NormalMap normals;
    AlbedoMap albedo;
};

GtMaps ground_truth_maps(const Dataset& d) {
    if (!d.has_ground_truth()) {
        throw io_error("dataset has no ground truth (gt_height/gt_normals/gt_albedo.pfm)");
    }
    GtMaps gt;
    gt.normals = normals_from_image(*d.gt_normals);
    gt.height = height_from_image(*d.gt_height, gt.normals.mask);
    gt.albedo = albedo_from_image(*d.gt_albedo, gt.normals.mask);
    return gt;
}

struct ResultMaps {
    HeightField height;
    NormalMap normals;
    AlbedoMap albedo;
};

ResultMaps load_result_maps(const fs::path& dir) {
    Image n_img = read_pfm(dir / "normals.pfm");
    if (n_img.channels != 3) {
        throw io_error((dir / "normals.pfm").string() + ": expected 3 channels");
    }
    Image h_img = read_pfm(dir / "height.pfm");
    if (h_img.channels != 1) {
        throw io_error((dir / "height.pfm").string() + ": expected 1 channel");
    }
    Image a_img = read_pfm(dir / "albedo.pfm");
    if (a_img.channels != 3) {
        throw io_error((dir / "albedo.pfm").string() + ": expected 3 channels");
    }
    if (h_img.width != n_img.width || h_img.height != n_img.height ||
        a_img.width != n_img.width || a_img.height != n_img.height) {
        throw io_error("result maps in " + dir.string() + " have mismatched shapes");
    }
    ResultMaps m;
    m.normals = normals_from_image(n_img);
    m.height = height_from_image(h_img, m.normals.mask);
    m.albedo = albedo_from_image(a_img, m.normals.mask);
    return m;
}

// |aligned difference| per pixel on the mask intersection, zero elsewhere.
Image height_error_map(const HeightField& gt, const HeightField& h) {
    Image err(gt.width, gt.height, 1);
    double sum = 0.0;
    size_t count = 0;
    for (size_t i = 0; i < gt.z.size(); ++i) {
        if (!gt.mask.bits[i] || !h.mask.bits[i]) continue;
        sum += gt.z[i] - h.z[i];
        ++count;
    }
    if (count == 0) return err;
    double offset = sum / static_cast<double>(count);
    for (size_t i = 0; i < gt.z.size(); ++i) {
        if (!gt.mask.bits[i] || !h.mask.bits[i]) continue;
        err.data[i] = static_cast<float>(std::abs(h.z[i] + offset - gt.z[i]));
    }
    return err;
}

struct RenderOpts {
    std::string scene_path;
    std::string out_dir;
    std::string lights_path;  // empty = builtin ring
    int spp = 0;              // 0 = take scene.cfg value
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int cmd_render(const RenderOpts& o) {
    Stopwatch timer;
    SceneConfig cfg = read_scene_config(o.scene_path);
    if (o.spp > 0) cfg.spp = o.spp;
    if (o.seed_set) cfg.seed = o.seed;
    LightSet lights =
        o.lights_path.empty() ? LightSet::ring(8, 30.0) : load_lights(o.lights_path);

    Dataset d = render_dataset(cfg, lights, fs::path(o.scene_path).parent_path());
    fs::create_directories(o.out_dir);
    save_dataset(d, o.out_dir);

    Manifest m;
    m.add("command", "render");
    m.add("version", kVersion);
    m.add("scene", o.scene_path);
    m.add("out", o.out_dir);
    m.add("lights", o.lights_path.empty() ? std::string("builtin") : o.lights_path);
    m.add("spp", cfg.spp);
    m.add("seed", cfg.seed);
    m.add("threads", max_threads());
    m.write(o.out_dir, timer.seconds());
    return 0;
}

int cmd_ps(const std::string& dataset_dir, const std::string& out_dir) {
    Stopwatch timer;
    Dataset d = load_dataset(dataset_dir);
    auto sil = dataset_silhouette(d);
    ReconStep step = reconstruct(d.images, d.lights, kDefaultShadowThreshold,
                                 IntegrationConfig{}, sil ? &*sil : nullptr);
    write_maps(out_dir, step.height, step.maps.normals, step.maps.albedo);

    Manifest m;
    m.add("command", "ps");
    m.add("version", kVersion);
    m.add("dataset", dataset_dir);
    m.add("out", out_dir);
    m.add("threads", max_threads());
    m.write(out_dir, timer.seconds());
    return 0;
}

struct IrtpsOpts {
    std::string dataset_dir;
    std::string out_dir;
    int rays = 3;
    int iters = 10;
    double tol = 1e-3;
    std::uint64_t seed = 0;
    bool dump_iters = false;
    bool dump_env = false;
};

int cmd_irtps(const IrtpsOpts& o) {
    Stopwatch timer;
    Dataset d = load_dataset(o.dataset_dir);
    if (!d.scene) {
        throw io_error(o.dataset_dir +
                       ": no scene.cfg; the reverted trace needs the environment geometry");
    }
    EnvironmentBox env = EnvironmentBox::from_config(*d.scene);

    PipelineConfig pc;
    pc.rays = o.rays;
    pc.max_iterations = o.iters;
    pc.convergence_tolerance = o.tol;
    pc.seed = o.seed;
    fs::create_directories(o.out_dir);
    if (o.dump_iters) {
        pc.dump_dir = o.out_dir;
        pc.dump_env = o.dump_env;
    }

    PipelineResult res = run(d, env, pc);
    const IterationRecord& fin = res.final();
    write_maps(o.out_dir, fin.height, fin.normals, fin.albedo);

    fs::path log_path = fs::path(o.out_dir) / "convergence.txt";
    std::ofstream log(log_path, std::ios::trunc);
    if (!log) throw io_error("cannot write " + log_path.string());
    log << "# iteration mean_abs_dh\n";
    for (const auto& rec : res.history) {
        log << rec.iteration << " " << fmt_double(rec.dh) << "\n";
    }

    Manifest m;
    m.add("command", "irtps");
    m.add("version", kVersion);
    m.add("dataset", o.dataset_dir);
    m.add("out", o.out_dir);
    m.add("rays", o.rays);
    m.add("iters", o.iters);
    m.add("tol", o.tol);
    m.add("seed", o.seed);
    m.add("dump_iters", o.dump_iters);
    m.add("dump_env", o.dump_env);
    m.add("iterations_run", static_cast<int>(res.history.size()) - 1);
    m.add("converged", res.converged);
    m.add("threads", max_threads());
    m.write(o.out_dir, timer.seconds());
    return 0;
}

int cmd_eval(const std::string& result_dir, const std::string& dataset_dir, bool no_align) {
    Dataset d = load_dataset(dataset_dir);
    GtMaps gt = ground_truth_maps(d);
    ResultMaps r = load_result_maps(result_dir);
    if (r.height.width != gt.height.width || r.height.height != gt.height.height) {
        throw io_error("result maps are " + std::to_string(r.height.width) + "x" +
                       std::to_string(r.height.height) + " but ground truth is " +
                       std::to_string(gt.height.width) + "x" +
                       std::to_string(gt.height.height));
    }

    std::string name = fs::path(result_dir).filename().string();
    if (name.empty()) name = fs::path(result_dir).parent_path().filename().string();
    if (name.empty()) name = "result";

    NamedReports reports;
    reports.emplace_back(
        name, evaluate(gt.height, gt.normals, gt.albedo, r.height, r.normals, r.albedo));
    if (no_align) {
        reports.emplace_back(name + "_raw",
                             evaluate(gt.height, gt.normals, gt.albedo, r.height, r.normals,
                                      r.albedo, /*align_height=*/false));
    }
    std::cout << metrics_csv(reports) << "\n" << metrics_table(reports);
    return 0;
}

struct CompareOpts {
    std::string dataset_dir;
    std::string out_dir;
    std::uint64_t seed = 0;
};

int cmd_compare(const CompareOpts& o) {
    Stopwatch timer;
    Dataset d = load_dataset(o.dataset_dir);
    GtMaps gt = ground_truth_maps(d);
    if (!d.scene) {
        throw io_error(o.dataset_dir +
                       ": no scene.cfg; the reverted trace needs the environment geometry");
    }
    EnvironmentBox env = EnvironmentBox::from_config(*d.scene);
    fs::create_directories(o.out_dir);

    struct MethodRun {
        std::string name;
        fs::path subdir;
        HeightField h;
        NormalMap n;
        AlbedoMap a;
    };
    std::vector<MethodRun> runs;

    auto sil = dataset_silhouette(d);
    ReconStep ps = reconstruct(d.images, d.lights, kDefaultShadowThreshold,
                               IntegrationConfig{}, sil ? &*sil : nullptr);
    runs.push_back({"PS", fs::path(o.out_dir) / "ps", ps.height, ps.maps.normals,
                    ps.maps.albedo});

    for (int r = 1; r <= 3; ++r) {
        PipelineConfig pc;
        pc.rays = r;
        pc.seed = o.seed;
        PipelineResult res = run(d, env, pc);
        const IterationRecord& fin = res.final();
        runs.push_back({"IRTPSr" + std::to_string(r),
                        fs::path(o.out_dir) / ("irtps_r" + std::to_string(r)), fin.height,
                        fin.normals, fin.albedo});
    }

    NamedReports reports;
    for (const auto& mr : runs) {
        write_maps(mr.subdir, mr.h, mr.n, mr.a);
        reports.emplace_back(mr.name,
                             evaluate(gt.height, gt.normals, gt.albedo, mr.h, mr.n, mr.a));
    }

    std::string csv = metrics_csv(reports);
    std::string table = metrics_table(reports);
    {
        std::ofstream f(fs::path(o.out_dir) / "metrics.csv", std::ios::trunc);
        f << csv;
    }
    {
        std::ofstream f(fs::path(o.out_dir) / "table.txt", std::ios::trunc);
        f << table;
    }
    std::cout << table;

    // Per-method height-error visualizations, normalized by the worst error
    // across all methods so brightness is comparable between PNGs.
    std::vector<Image> err_maps;
    float err_max = 0.0f;
    for (const auto& mr : runs) {
        err_maps.push_back(height_error_map(gt.height, mr.h));
        for (float v : err_maps.back().data) err_max = std::max(err_max, v);
    }
    for (size_t i = 0; i < runs.size(); ++i) {
        if (err_max > 0.0f) {
            for (float& v : err_maps[i].data) v /= err_max;
        }
        write_png_srgb(err_maps[i], fs::path(o.out_dir) / ("error_" + runs[i].name + ".png"));
    }

    Manifest m;
    m.add("command", "compare");
    m.add("version", kVersion);
    m.add("dataset", o.dataset_dir);
    m.add("out", o.out_dir);
    m.add("seed", o.seed);
    m.add("threads", max_threads());
    m.write(o.out_dir, timer.seconds());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"photometric stereo with iterative inter-reflection removal"};
    app.require_subcommand(1);
    app.fallthrough();  // lets the global --threads follow the subcommand
    app.set_version_flag("--version", std::string(kVersion));

    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0 = all cores)")
        ->envname("IRTPS_THREADS");

    RenderOpts render_opts;
    IrtpsOpts irtps_opts;
    CompareOpts compare_opts;
    std::string ps_dataset, ps_out, eval_result, eval_dataset;
    bool eval_no_align = false;

    CLI::App* c_render = app.add_subcommand("render", "render a synthetic multi-light dataset");
    c_render->add_option("scene", render_opts.scene_path, "scene .cfg file")->required();
    c_render->add_option("out", render_opts.out_dir, "output dataset directory")->required();
    c_render->add_option("--lights", render_opts.lights_path,
                         "lights.txt (default: builtin 8-light ring, 30 deg zenith)");
    c_render->add_option("--spp", render_opts.spp, "override samples per pixel")
        ->check(CLI::PositiveNumber);
    CLI::Option* render_seed =
        c_render->add_option("--seed", render_opts.seed, "override sampler seed");

    CLI::App* c_ps = app.add_subcommand("ps", "classic photometric-stereo baseline");
    c_ps->add_option("dataset", ps_dataset, "dataset directory")->required();
    c_ps->add_option("out", ps_out, "output directory")->required();

    CLI::App* c_irtps = app.add_subcommand("irtps", "iterative inter-reflection removal");
    c_irtps->add_option("dataset", irtps_opts.dataset_dir, "dataset directory")->required();
    c_irtps->add_option("out", irtps_opts.out_dir, "output directory")->required();
    c_irtps->add_option("--rays", irtps_opts.rays, "reverted-trace reflection depth")
        ->check(CLI::IsMember({1, 2, 3}));
    c_irtps->add_option("--iters", irtps_opts.iters, "max refinement iterations")
        ->check(CLI::PositiveNumber);
    c_irtps->add_option("--tol", irtps_opts.tol, "height convergence tolerance");
    c_irtps->add_option("--seed", irtps_opts.seed, "extraction sampler seed");
    c_irtps->add_flag("--dump-iters", irtps_opts.dump_iters, "write per-iteration maps");
    c_irtps->add_flag("--dump-env", irtps_opts.dump_env,
                      "with --dump-iters: also dump environment-estimate images");

    CLI::App* c_eval = app.add_subcommand("eval", "evaluate results against ground truth");
    c_eval->add_option("result", eval_result, "result directory (height/normals/albedo.pfm)")
        ->required();
    c_eval->add_option("dataset", eval_dataset, "dataset directory with ground truth")
        ->required();
    c_eval->add_flag("--no-align", eval_no_align,
                     "also report the raw (unaligned) height error");

    CLI::App* c_compare =
        app.add_subcommand("compare", "run PS and IRTPSr1..r3, tabulate all metrics");
    c_compare->add_option("dataset", compare_opts.dataset_dir, "dataset directory")->required();
    c_compare->add_option("out", compare_opts.out_dir, "output directory")->required();
    c_compare->add_option("--seed", compare_opts.seed, "extraction sampler seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    set_max_threads(threads);
    render_opts.seed_set = render_seed->count() > 0;

    try {
        if (c_render->parsed()) return cmd_render(render_opts);
        if (c_ps->parsed()) return cmd_ps(ps_dataset, ps_out);
        if (c_irtps->parsed()) return cmd_irtps(irtps_opts);
        if (c_eval->parsed()) return cmd_eval(eval_result, eval_dataset, eval_no_align);
        if (c_compare->parsed()) return cmd_compare(compare_opts);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const pipeline_error& e) {
        std::cerr << "pipeline error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
