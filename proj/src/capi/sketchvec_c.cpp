#include "sketchvec.h"

#include <cstring>
#include <string>

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/imageio.hpp"
#include "core/pipeline.hpp"

struct svx_image {
    svx::GrayImage gray;
    std::vector<uint8_t> bytes; // 8-bit view, rebuilt on demand
};

struct svx_config {
    svx::PipelineConfig cfg;
};

struct svx_result {
    svx::VectorizeResult res;
    svx_image mask_img;
    svx_image skel_img;
};

namespace {

thread_local std::string g_last_error;

svx_status fail(svx_status code, const char *what) {
    g_last_error = what ? what : "";
    return code;
}

template <typename Fn> svx_status guarded(Fn &&fn) {
    try {
        fn();
        return SVX_OK;
    } catch (const svx::IoError &e) {
        return fail(SVX_ERROR_IO, e.what());
    } catch (const svx::ConfigError &e) {
        return fail(SVX_ERROR_CONFIG, e.what());
    } catch (const std::invalid_argument &e) {
        return fail(SVX_ERROR_ARGUMENT, e.what());
    } catch (const std::exception &e) {
        return fail(SVX_ERROR_INTERNAL, e.what());
    } catch (...) {
        return fail(SVX_ERROR_INTERNAL, "unknown error");
    }
}

void refresh_bytes(svx_image &img) {
    img.bytes.resize(img.gray.samples.size());
    for (size_t i = 0; i < img.gray.samples.size(); ++i) {
        double v = std::min(std::max(img.gray.samples[i], 0.0), 1.0);
        img.bytes[i] = uint8_t(v * 255.0 + 0.5);
    }
}

svx_image *wrap(svx::GrayImage g) {
    auto *img = new svx_image{std::move(g), {}};
    refresh_bytes(*img);
    return img;
}

} // namespace

extern "C" {

const char *svx_status_name(svx_status status) {
    switch (status) {
    case SVX_OK: return "ok";
    case SVX_ERROR_IO: return "io error";
    case SVX_ERROR_CONFIG: return "config error";
    case SVX_ERROR_ARGUMENT: return "invalid argument";
    case SVX_ERROR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char *svx_last_error(void) { return g_last_error.c_str(); }

svx_status svx_image_load(const char *path, svx_image **out) {
    if (!path || !out) return fail(SVX_ERROR_ARGUMENT, "null argument");
    return guarded([&] { *out = wrap(svx::load_gray(path)); });
}

svx_status svx_image_create(int width, int height, const uint8_t *pixels, svx_image **out) {
    if (!pixels || !out || width <= 0 || height <= 0)
        return fail(SVX_ERROR_ARGUMENT, "bad image dimensions or null argument");
    return guarded([&] {
        svx::GrayImage g(width, height);
        for (size_t i = 0; i < g.samples.size(); ++i) g.samples[i] = pixels[i] / 255.0;
        *out = wrap(std::move(g));
    });
}

svx_status svx_image_save(const svx_image *img, const char *path) {
    if (!img || !path) return fail(SVX_ERROR_ARGUMENT, "null argument");
    return guarded([&] { svx::save_gray(img->gray, path); });
}

int svx_image_width(const svx_image *img) { return img ? img->gray.width : 0; }
int svx_image_height(const svx_image *img) { return img ? img->gray.height : 0; }
const uint8_t *svx_image_pixels(const svx_image *img) { return img ? img->bytes.data() : nullptr; }
void svx_image_free(svx_image *img) { delete img; }

svx_config *svx_config_create(void) { return new svx_config{}; }

svx_status svx_config_set(svx_config *cfg, const char *key, const char *value) {
    if (!cfg || !key || !value) return fail(SVX_ERROR_ARGUMENT, "null argument");
    return guarded([&] { cfg->cfg.set(key, value); });
}

svx_status svx_config_load_json(svx_config *cfg, const char *json_text) {
    if (!cfg || !json_text) return fail(SVX_ERROR_ARGUMENT, "null argument");
    return guarded([&] { cfg->cfg = svx::PipelineConfig::from_json(json_text); });
}

svx_status svx_config_to_json(const svx_config *cfg, char **out_text) {
    if (!cfg || !out_text) return fail(SVX_ERROR_ARGUMENT, "null argument");
    return guarded([&] {
        std::string json = cfg->cfg.to_json();
        char *buf = new char[json.size() + 1];
        std::memcpy(buf, json.c_str(), json.size() + 1);
        *out_text = buf;
    });
}

void svx_config_free(svx_config *cfg) { delete cfg; }
void svx_text_free(char *text) { delete[] text; }

svx_status svx_vectorize(const svx_image *input, const svx_config *cfg, svx_result **out) {
    if (!input || !cfg || !out) return fail(SVX_ERROR_ARGUMENT, "null argument");
    return guarded([&] {
        auto *res = new svx_result{};
        try {
            res->res = svx::run_vectorize(input->gray, cfg->cfg);
        } catch (...) {
            delete res;
            throw;
        }
        res->mask_img.gray = svx::gray_from_mask(res->res.mask);
        refresh_bytes(res->mask_img);
        res->skel_img.gray = svx::gray_from_mask(res->res.skeleton);
        refresh_bytes(res->skel_img);
        *out = res;
    });
}

svx_status svx_result_svg(const svx_result *res, const char **text) {
    if (!res || !text) return fail(SVX_ERROR_ARGUMENT, "null argument");
    *text = res->res.svg.c_str();
    return SVX_OK;
}

svx_status svx_result_graph_json(const svx_result *res, const char **text) {
    if (!res || !text) return fail(SVX_ERROR_ARGUMENT, "null argument");
    *text = res->res.graph_json.c_str();
    return SVX_OK;
}

svx_status svx_result_metrics_json(const svx_result *res, const char **text) {
    if (!res || !text) return fail(SVX_ERROR_ARGUMENT, "null argument");
    *text = res->res.metrics_json.c_str();
    return SVX_OK;
}

svx_status svx_result_mask(const svx_result *res, const svx_image **out) {
    if (!res || !out) return fail(SVX_ERROR_ARGUMENT, "null argument");
    *out = &res->mask_img;
    return SVX_OK;
}

svx_status svx_result_skeleton(const svx_result *res, const svx_image **out) {
    if (!res || !out) return fail(SVX_ERROR_ARGUMENT, "null argument");
    *out = &res->skel_img;
    return SVX_OK;
}

size_t svx_result_warning_count(const svx_result *res) {
    return res ? res->res.warnings.size() : 0;
}

const char *svx_result_warning(const svx_result *res, size_t index) {
    if (!res || index >= res->res.warnings.size()) return nullptr;
    return res->res.warnings[index].c_str();
}

void svx_result_free(svx_result *res) { delete res; }

svx_status svx_extract_mask(const svx_image *input, const svx_config *cfg, svx_image **out) {
    if (!input || !cfg || !out) return fail(SVX_ERROR_ARGUMENT, "null argument");
    return guarded([&] {
        svx::BinaryImage mask = svx::extract_lines_region(input->gray, cfg->cfg.linex);
        *out = wrap(svx::gray_from_mask(mask));
    });
}

svx_status svx_thin_mask(const svx_image *mask, const svx_config *cfg, svx_image **out) {
    if (!mask || !cfg || !out) return fail(SVX_ERROR_ARGUMENT, "null argument");
    return guarded([&] {
        svx::BinaryImage bin = svx::mask_from_gray(mask->gray);
        svx::BinaryImage skel = svx::run_thin(bin, cfg->cfg);
        *out = wrap(svx::gray_from_mask(skel));
    });
}

svx_status svx_corrupt(const svx_image *clean, const svx_config *cfg, uint64_t seed,
                       svx_image **corrupted, svx_image **ground_truth) {
    if (!clean || !cfg || !corrupted || !ground_truth)
        return fail(SVX_ERROR_ARGUMENT, "null argument");
    return guarded([&] {
        svx::CorruptionConfig ccfg = cfg->cfg.corruption;
        ccfg.seed = seed;
        auto [gray, gt] = svx::corrupt(svx::mask_from_gray(clean->gray), ccfg);
        *corrupted = wrap(std::move(gray));
        *ground_truth = wrap(svx::gray_from_mask(gt));
    });
}

svx_status svx_eval_image(const svx_image *clean, const svx_config *cfg, uint64_t seed,
                          double out_metrics[4]) {
    if (!clean || !cfg || !out_metrics) return fail(SVX_ERROR_ARGUMENT, "null argument");
    return guarded([&] {
        svx::EvalRow row =
            svx::run_eval_single("", svx::mask_from_gray(clean->gray), cfg->cfg, seed);
        out_metrics[0] = row.precision;
        out_metrics[1] = row.recall;
        out_metrics[2] = row.f_measure;
        out_metrics[3] = row.centerline_distance;
    });
}

} // extern "C"
