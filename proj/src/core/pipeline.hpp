#pragma once

#include <string>
#include <vector>

#include "core/bezfit.hpp"
#include "core/config.hpp"
#include "core/image.hpp"
#include "core/pathgraph.hpp"

namespace svx {

struct VectorizeResult {
    BinaryImage mask;
    BinaryImage skeleton;
    PathGraph graph;
    std::vector<BezierSpline> splines;
    std::string svg;
    std::string graph_json;
    std::string metrics_json;
    std::vector<std::string> warnings;
};

/// Full pipeline: extraction, thinning, path graph with post-processing,
/// Bezier fitting and SVG emission.
VectorizeResult run_vectorize(const GrayImage &input, const PipelineConfig &cfg);

/// Extraction + thinning only (stage debugging).
BinaryImage run_thin(const BinaryImage &mask, const PipelineConfig &cfg);

struct EvalRow {
    std::string name;
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    double centerline_distance = 0.0;
};

/// Corrupt a clean drawing with the config's corruption parameters and seed,
/// vectorize it and score the extraction against the ground truth.
EvalRow run_eval_single(const std::string &name, const BinaryImage &gt, const PipelineConfig &cfg,
                        uint64_t seed);

std::string eval_csv(const std::vector<EvalRow> &rows);
std::string eval_summary_json(const std::vector<EvalRow> &rows);

} // namespace svx
