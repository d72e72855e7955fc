// Batch front end over the sketchvec C API.
//
// Exit codes: 0 success, 1 I/O error, 2 configuration error.

#include <sketchvec.h>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct ConfigDeleter {
    void operator()(svx_config *c) const { svx_config_free(c); }
};
struct ImageDeleter {
    void operator()(svx_image *i) const { svx_image_free(i); }
};
struct ResultDeleter {
    void operator()(svx_result *r) const { svx_result_free(r); }
};
using ConfigPtr = std::unique_ptr<svx_config, ConfigDeleter>;
using ImagePtr = std::unique_ptr<svx_image, ImageDeleter>;
using ResultPtr = std::unique_ptr<svx_result, ResultDeleter>;

int status_to_exit(svx_status s) {
    switch (s) {
    case SVX_OK: return 0;
    case SVX_ERROR_CONFIG: return 2;
    default: return 1;
    }
}

int report(svx_status s, const std::string &context) {
    std::cerr << "sketchvec: " << context << ": " << svx_status_name(s);
    const char *detail = svx_last_error();
    if (detail && *detail) std::cerr << " (" << detail << ")";
    std::cerr << "\n";
    return status_to_exit(s);
}

// Flag values set on the command line, applied over defaults/--config.
struct Overrides {
    std::map<std::string, std::string> values;

    void add_option(CLI::App *app, const std::string &flag, const std::string &key,
                    const std::string &desc) {
        app->add_option_function<std::string>(
            flag, [this, key](const std::string &v) { values[key] = v; }, desc);
    }
};

void add_pipeline_flags(CLI::App *app, Overrides &ov) {
    ov.add_option(app, "--wmin", "wmin", "Minimum detectable stroke width (px)");
    ov.add_option(app, "--wmax", "wmax", "Maximum detectable stroke width (px)");
    ov.add_option(app, "--scale-base", "scale_base", "Kernel pyramid scale base (> 1)");
    ov.add_option(app, "--pcc-threshold", "pcc_threshold", "Line-evidence threshold in (0, 1)");
    ov.add_option(app, "--min-component", "min_component", "Minimum mask component size (px)");
    ov.add_option(app, "--median-window", "median_window",
                  "High-pass median window (odd, > 2*wmax; 0 = auto)");
    ov.add_option(app, "--cord-length", "cord_length", "Curvature cord length (points)");
    ov.add_option(app, "--prune-len", "prune_len", "Prune branches shorter than this (points)");
    ov.add_option(app, "--prune-iterative", "prune_iterative", "Iterative pruning (bool)");
    ov.add_option(app, "--junction-radius", "junction_radius", "Junction merge radius (px)");
    ov.add_option(app, "--parallel-gap", "parallel_gap", "Parallel path merge gap (px)");
    ov.add_option(app, "--link-dist", "link_dist", "Endpoint linking distance (px)");
    ov.add_option(app, "--link-angle", "link_angle", "Endpoint linking angle (degrees)");
    ov.add_option(app, "--fit-err", "fit_err", "Maximum fitting error (px)");
    ov.add_option(app, "--iters-per-pixel", "iters_per_pixel", "Fitting iteration budget per point");
    ov.add_option(app, "--early-stop-fraction", "early_stop_fraction",
                  "Early-stop fraction in (0, 1)");
    ov.add_option(app, "--psi-skip", "psi_skip", "Legacy split-without-refinement fitter (bool)");
    ov.add_option(app, "--seed", "seed", "Random seed for corruption");
    ov.add_option(app, "--tolerance", "eval_tolerance", "Match tolerance for precision/recall (px)");
    ov.add_option(app, "--corrupt-width-min", "corrupt_width_min", "Corruption stroke width min");
    ov.add_option(app, "--corrupt-width-max", "corrupt_width_max", "Corruption stroke width max");
    ov.add_option(app, "--corrupt-intensity-min", "corrupt_intensity_min",
                  "Corruption stroke intensity min");
    ov.add_option(app, "--corrupt-intensity-max", "corrupt_intensity_max",
                  "Corruption stroke intensity max");
    ov.add_option(app, "--corrupt-overdraw-min", "corrupt_overdraw_min", "Overdraw passes min");
    ov.add_option(app, "--corrupt-overdraw-max", "corrupt_overdraw_max", "Overdraw passes max");
    ov.add_option(app, "--corrupt-break-prob", "corrupt_break_prob", "Stroke break probability");
    ov.add_option(app, "--corrupt-break-fraction", "corrupt_break_fraction",
                  "Fraction of a stroke removed per break");
    ov.add_option(app, "--corrupt-jitter", "corrupt_jitter", "Positional jitter amplitude (px)");
    ov.add_option(app, "--corrupt-noise-sigma", "corrupt_noise_sigma", "Background noise sigma");
    ov.add_option(app, "--corrupt-texture", "corrupt_texture", "Paper texture amplitude");
    ov.add_option(app, "--corrupt-target-mp", "corrupt_target_mp",
                  "Corruption output scale (megapixels; <= 0 keeps input scale)");
}

int build_config(const std::string &config_path, const Overrides &ov, ConfigPtr &cfg,
                 bool no_unbias) {
    cfg.reset(svx_config_create());
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "sketchvec: cannot read config " << config_path << "\n";
            return 1;
        }
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        svx_status s = svx_config_load_json(cfg.get(), text.c_str());
        if (s != SVX_OK) return report(s, "loading " + config_path);
    }
    for (const auto &[k, v] : ov.values) {
        svx_status s = svx_config_set(cfg.get(), k.c_str(), v.c_str());
        if (s != SVX_OK) return report(s, "setting --" + k);
    }
    if (no_unbias) {
        svx_status s = svx_config_set(cfg.get(), "unbias", "false");
        if (s != SVX_OK) return report(s, "setting --no-unbias");
    }
    return 0;
}

int write_text(const std::string &path, const char *text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "sketchvec: cannot write " << path << "\n";
        return 1;
    }
    out << text;
    return 0;
}

int write_config_echo(const svx_config *cfg, const std::string &path) {
    char *text = nullptr;
    svx_status s = svx_config_to_json(cfg, &text);
    if (s != SVX_OK) return report(s, "serializing config");
    int rc = write_text(path, text);
    svx_text_free(text);
    return rc;
}

std::string stem_path(const std::string &input, const std::string &out_dir) {
    fs::path p(input);
    fs::path base = out_dir.empty() ? p.parent_path() : fs::path(out_dir);
    return (base / p.stem()).string();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"sketchvec - hand-drawn sketch vectorization"};
    app.require_subcommand(1);

    std::string input, out_dir, config_path;
    std::vector<std::string> emit = {"svg"};
    bool no_unbias = false;
    Overrides ov;

    auto *vec = app.add_subcommand("vectorize", "Convert a raster sketch to SVG");
    vec->add_option("input", input, "Input raster (PNG, BMP or PGM)")->required();
    vec->add_option("--out-dir", out_dir, "Output directory (default: alongside the input)");
    vec->add_option("--config", config_path, "Load configuration JSON");
    vec->add_option("--emit", emit, "Artifacts to write")
        ->check(CLI::IsMember({"svg", "json", "mask", "skeleton", "metrics"}))
        ->delimiter(',');
    vec->add_flag("--no-unbias", no_unbias, "Plain thinning without bias correction");
    add_pipeline_flags(vec, ov);

    auto *ev = app.add_subcommand("eval", "Corrupt, vectorize and score a clean-drawing corpus");
    ev->add_option("input", input, "Directory of ground-truth line drawings")->required();
    ev->add_option("--out-dir", out_dir, "Output directory (default: the corpus directory)");
    ev->add_option("--config", config_path, "Load configuration JSON");
    ev->add_flag("--no-unbias", no_unbias, "Plain thinning without bias correction");
    add_pipeline_flags(ev, ov);

    auto *cor = app.add_subcommand("corrupt", "Render a simulated pencil version of a drawing");
    cor->add_option("input", input, "Clean line drawing raster")->required();
    cor->add_option("--out-dir", out_dir, "Output directory");
    cor->add_option("--config", config_path, "Load configuration JSON");
    add_pipeline_flags(cor, ov);

    auto *th = app.add_subcommand("thin", "Thin a mask raster to a skeleton (stage debugging)");
    th->add_option("input", input, "Mask raster (dark foreground)")->required();
    th->add_option("--out-dir", out_dir, "Output directory");
    th->add_option("--config", config_path, "Load configuration JSON");
    th->add_flag("--no-unbias", no_unbias, "Plain thinning without bias correction");
    add_pipeline_flags(th, ov);

    CLI11_PARSE(app, argc, argv);

    ConfigPtr cfg;
    if (int rc = build_config(config_path, ov, cfg, no_unbias); rc != 0) return rc;

    if (!out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
    }

    if (vec->parsed()) {
        svx_image *raw = nullptr;
        svx_status s = svx_image_load(input.c_str(), &raw);
        if (s != SVX_OK) return report(s, input);
        ImagePtr img(raw);

        svx_result *rraw = nullptr;
        s = svx_vectorize(img.get(), cfg.get(), &rraw);
        if (s != SVX_OK) return report(s, "vectorizing " + input);
        ResultPtr res(rraw);
        for (size_t i = 0; i < svx_result_warning_count(res.get()); ++i)
            std::cerr << "sketchvec: warning: " << svx_result_warning(res.get(), i) << "\n";

        std::string stem = stem_path(input, out_dir);
        auto wants = [&](const char *a) {
            return std::find(emit.begin(), emit.end(), a) != emit.end();
        };
        const char *text = nullptr;
        if (wants("svg")) {
            svx_result_svg(res.get(), &text);
            if (write_text(stem + ".vector.svg", text) != 0) return 1;
        }
        if (wants("json")) {
            svx_result_graph_json(res.get(), &text);
            if (write_text(stem + ".graph.json", text) != 0) return 1;
        }
        if (wants("metrics")) {
            svx_result_metrics_json(res.get(), &text);
            if (write_text(stem + ".metrics.json", text) != 0) return 1;
        }
        const svx_image *stage = nullptr;
        if (wants("mask")) {
            svx_result_mask(res.get(), &stage);
            s = svx_image_save(stage, (stem + ".mask.png").c_str());
            if (s != SVX_OK) return report(s, "writing mask");
        }
        if (wants("skeleton")) {
            svx_result_skeleton(res.get(), &stage);
            s = svx_image_save(stage, (stem + ".skeleton.png").c_str());
            if (s != SVX_OK) return report(s, "writing skeleton");
        }
        return write_config_echo(cfg.get(), stem + ".config.json");
    }

    if (ev->parsed()) {
        std::vector<fs::path> files;
        std::error_code ec;
        for (const auto &entry : fs::directory_iterator(input, ec)) {
            if (!entry.is_regular_file()) continue;
            std::string ext = entry.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
            if (ext == ".png" || ext == ".bmp" || ext == ".pgm") files.push_back(entry.path());
        }
        if (ec) {
            std::cerr << "sketchvec: cannot read directory " << input << "\n";
            return 1;
        }
        if (files.empty()) {
            std::cerr << "sketchvec: no raster files in " << input << "\n";
            return 1;
        }
        std::sort(files.begin(), files.end());

        char *cfg_json = nullptr;
        svx_config_to_json(cfg.get(), &cfg_json);
        uint64_t base_seed = 0;
        {
            // Pull the seed back out of the echoed config for per-image seeds.
            std::string text = cfg_json;
            auto pos = text.find("\"seed\":");
            if (pos != std::string::npos) base_seed = std::strtoull(text.c_str() + pos + 7, nullptr, 10);
        }
        svx_text_free(cfg_json);

        std::string csv = "image,precision,recall,f_measure,centerline_distance\n";
        double sums[4] = {0, 0, 0, 0};
        for (size_t i = 0; i < files.size(); ++i) {
            svx_image *raw = nullptr;
            svx_status s = svx_image_load(files[i].string().c_str(), &raw);
            if (s != SVX_OK) return report(s, files[i].string());
            ImagePtr img(raw);
            double m[4] = {0, 0, 0, 0};
            s = svx_eval_image(img.get(), cfg.get(), base_seed + i, m);
            if (s != SVX_OK) return report(s, "evaluating " + files[i].string());
            char row[256];
            std::snprintf(row, sizeof row, "%s,%.6f,%.6f,%.6f,%.6f\n",
                          files[i].filename().string().c_str(), m[0], m[1], m[2], m[3]);
            csv += row;
            for (int k = 0; k < 4; ++k) sums[k] += m[k];
        }
        std::string base = out_dir.empty() ? input : out_dir;
        if (write_text((fs::path(base) / "eval.csv").string(), csv.c_str()) != 0) return 1;
        char summary[512];
        double n = double(files.size());
        std::snprintf(summary, sizeof summary,
                      "{\n  \"images\": %zu,\n  \"mean_precision\": %.6f,\n  \"mean_recall\": "
                      "%.6f,\n  \"mean_f_measure\": %.6f,\n  \"mean_centerline_distance\": %.6f\n}\n",
                      files.size(), sums[0] / n, sums[1] / n, sums[2] / n, sums[3] / n);
        if (write_text((fs::path(base) / "eval_summary.json").string(), summary) != 0) return 1;
        return write_config_echo(cfg.get(), (fs::path(base) / "eval.config.json").string());
    }

    if (cor->parsed()) {
        svx_image *raw = nullptr;
        svx_status s = svx_image_load(input.c_str(), &raw);
        if (s != SVX_OK) return report(s, input);
        ImagePtr img(raw);

        char *cfg_json = nullptr;
        svx_config_to_json(cfg.get(), &cfg_json);
        uint64_t seed = 0;
        {
            std::string text = cfg_json;
            auto pos = text.find("\"seed\":");
            if (pos != std::string::npos) seed = std::strtoull(text.c_str() + pos + 7, nullptr, 10);
        }
        svx_text_free(cfg_json);

        svx_image *corr = nullptr, *gt = nullptr;
        s = svx_corrupt(img.get(), cfg.get(), seed, &corr, &gt);
        if (s != SVX_OK) return report(s, "corrupting " + input);
        ImagePtr corrp(corr), gtp(gt);
        std::string stem = stem_path(input, out_dir);
        s = svx_image_save(corrp.get(), (stem + ".corrupted.png").c_str());
        if (s != SVX_OK) return report(s, "writing corrupted image");
        s = svx_image_save(gtp.get(), (stem + ".gt.png").c_str());
        if (s != SVX_OK) return report(s, "writing ground truth");
        return write_config_echo(cfg.get(), stem + ".config.json");
    }

    if (th->parsed()) {
        svx_image *raw = nullptr;
        svx_status s = svx_image_load(input.c_str(), &raw);
        if (s != SVX_OK) return report(s, input);
        ImagePtr img(raw);
        svx_image *skel = nullptr;
        s = svx_thin_mask(img.get(), cfg.get(), &skel);
        if (s != SVX_OK) return report(s, "thinning " + input);
        ImagePtr skelp(skel);
        std::string stem = stem_path(input, out_dir);
        s = svx_image_save(skelp.get(), (stem + ".skeleton.png").c_str());
        if (s != SVX_OK) return report(s, "writing skeleton");
        return 0;
    }

    return 0;
}
