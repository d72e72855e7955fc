/* sketchvec - raster sketch to cubic-Bezier SVG vectorization.
 *
 * C interface over the native core: opaque handles, integer status codes,
 * UTF-8 paths. Every object returned through an out-parameter is owned by
 * the caller and released with the matching *_free function; pointers
 * documented as borrowed stay valid until their owner is freed.
 */
#ifndef SKETCHVEC_H
#define SKETCHVEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SVX_API __declspec(dllexport)
#else
#define SVX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum svx_status {
    SVX_OK = 0,
    SVX_ERROR_IO = 1,
    SVX_ERROR_CONFIG = 2,
    SVX_ERROR_ARGUMENT = 3,
    SVX_ERROR_INTERNAL = 4
} svx_status;

typedef struct svx_image svx_image;   /* 8-bit grayscale raster */
typedef struct svx_config svx_config; /* pipeline configuration */
typedef struct svx_result svx_result; /* vectorization artifacts */

SVX_API const char *svx_status_name(svx_status status);

/* Detail message for the most recent failure on this thread. */
SVX_API const char *svx_last_error(void);

/* ---- images ---- */

SVX_API svx_status svx_image_load(const char *path, svx_image **out);
SVX_API svx_status svx_image_create(int width, int height, const uint8_t *pixels,
                                    svx_image **out);
SVX_API svx_status svx_image_save(const svx_image *img, const char *path);
SVX_API int svx_image_width(const svx_image *img);
SVX_API int svx_image_height(const svx_image *img);
SVX_API const uint8_t *svx_image_pixels(const svx_image *img); /* borrowed, row-major */
SVX_API void svx_image_free(svx_image *img);

/* ---- configuration ---- */

SVX_API svx_config *svx_config_create(void); /* defaults */
SVX_API svx_status svx_config_set(svx_config *cfg, const char *key, const char *value);
SVX_API svx_status svx_config_load_json(svx_config *cfg, const char *json_text);
SVX_API svx_status svx_config_to_json(const svx_config *cfg, char **out_text);
SVX_API void svx_config_free(svx_config *cfg);
SVX_API void svx_text_free(char *text);

/* ---- pipeline ---- */

SVX_API svx_status svx_vectorize(const svx_image *input, const svx_config *cfg,
                                 svx_result **out);
SVX_API svx_status svx_result_svg(const svx_result *res, const char **text);          /* borrowed */
SVX_API svx_status svx_result_graph_json(const svx_result *res, const char **text);   /* borrowed */
SVX_API svx_status svx_result_metrics_json(const svx_result *res, const char **text); /* borrowed */
SVX_API svx_status svx_result_mask(const svx_result *res, const svx_image **out);     /* borrowed */
SVX_API svx_status svx_result_skeleton(const svx_result *res, const svx_image **out); /* borrowed */
SVX_API size_t svx_result_warning_count(const svx_result *res);
SVX_API const char *svx_result_warning(const svx_result *res, size_t index); /* borrowed */
SVX_API void svx_result_free(svx_result *res);

/* ---- stage and evaluation entry points ---- */

/* Line-region extraction only; output is a black-on-white mask image. */
SVX_API svx_status svx_extract_mask(const svx_image *input, const svx_config *cfg,
                                    svx_image **out);

/* Thin a black-on-white mask image to a skeleton. */
SVX_API svx_status svx_thin_mask(const svx_image *mask, const svx_config *cfg, svx_image **out);

/* Corrupt a clean drawing (dark strokes on light ground). `corrupted`
 * receives the simulated pencil rendering, `ground_truth` the (possibly
 * rescaled) clean mask. Deterministic for a given seed. */
SVX_API svx_status svx_corrupt(const svx_image *clean, const svx_config *cfg, uint64_t seed,
                               svx_image **corrupted, svx_image **ground_truth);

/* Corrupt + vectorize + score one image. out_metrics receives
 * {precision, recall, f_measure, centerline_distance}. */
SVX_API svx_status svx_eval_image(const svx_image *clean, const svx_config *cfg, uint64_t seed,
                                  double out_metrics[4]);

#ifdef __cplusplus
}
#endif

#endif /* SKETCHVEC_H */
