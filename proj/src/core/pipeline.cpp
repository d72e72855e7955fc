#include "core/pipeline.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "core/evalgen.hpp"
#include "core/svgout.hpp"
#include "core/thin.hpp"

namespace svx {

VectorizeResult run_vectorize(const GrayImage &input, const PipelineConfig &cfg) {
    cfg.validate();
    VectorizeResult r;

    r.mask = extract_lines_region(input, cfg.linex);

    ThinningOptions topt;
    topt.cord_length = cfg.cord_length;
    ThinningReport report;
    r.skeleton = cfg.unbias ? unbiased_thin(r.mask, topt, &report)
                            : zhang_suen_thin(r.mask, &report);
    if (report.iteration_cap_hit)
        r.warnings.push_back("thinning hit its iteration cap before converging");

    BinaryImage strict = to_strict8(r.skeleton);
    PathGraph g = build_graph(strict);
    g = prune(g, cfg.prune_len, cfg.prune_iterative);
    g = merge(g, cfg.junction_radius, cfg.parallel_gap);
    g = link_endpoints(g, cfg.link_dist, cfg.link_angle_deg * M_PI / 180.0);
    r.graph = std::move(g);

    int control_points = 0;
    for (const auto &p : r.graph.paths) {
        if (p.points.size() < 2) continue;
        BezierSpline s;
        if (p.category == PathCategory::CLOSED && p.points.size() >= 4)
            s = fit_closed_path(p.points, cfg.fit);
        else
            s = fit_path(p.points, cfg.fit);
        control_points += count_control_points(s);
        r.splines.push_back(std::move(s));
    }

    r.svg = splines_to_svg(r.splines, input.width, input.height);
    r.graph_json = graph_to_json(r.graph);

    nlohmann::ordered_json metrics;
    metrics["width"] = input.width;
    metrics["height"] = input.height;
    metrics["mask_pixels"] = r.mask.foreground_count();
    metrics["skeleton_pixels"] = r.skeleton.foreground_count();
    metrics["paths"] = r.graph.paths.size();
    metrics["junctions"] = r.graph.junctions.size();
    metrics["endpoints"] = r.graph.endpoints.size();
    size_t segments = 0;
    for (const auto &s : r.splines) segments += s.segments.size();
    metrics["segments"] = segments;
    metrics["control_points"] = control_points;
    metrics["thinning_iterations"] = report.iterations;
    metrics["thinning_cap_hit"] = report.iteration_cap_hit;
    metrics["eroding_points"] = report.eroding_points;
    r.metrics_json = metrics.dump(2);
    return r;
}

BinaryImage run_thin(const BinaryImage &mask, const PipelineConfig &cfg) {
    ThinningOptions topt;
    topt.cord_length = cfg.cord_length;
    return cfg.unbias ? unbiased_thin(mask, topt) : zhang_suen_thin(mask);
}

EvalRow run_eval_single(const std::string &name, const BinaryImage &gt, const PipelineConfig &cfg,
                        uint64_t seed) {
    CorruptionConfig ccfg = cfg.corruption;
    ccfg.seed = seed;
    auto [corrupted, gt_scaled] = corrupt(gt, ccfg);

    VectorizeResult vec = run_vectorize(corrupted, cfg);

    EvalRow row;
    row.name = name;
    auto [p, rec] = precision_recall(vec.mask, gt_scaled, cfg.eval_tolerance);
    row.precision = p;
    row.recall = rec;
    row.f_measure = p + rec > 0.0 ? 2.0 * p * rec / (p + rec) : 0.0;
    BinaryImage gt_skel = zhang_suen_thin(gt_scaled);
    if (vec.skeleton.foreground_count() > 0 && gt_skel.foreground_count() > 0)
        row.centerline_distance = centerline_distance(vec.skeleton, gt_skel);
    else
        row.centerline_distance = std::hypot(double(gt.width), double(gt.height));
    return row;
}

std::string eval_csv(const std::vector<EvalRow> &rows) {
    std::string out = "image,precision,recall,f_measure,centerline_distance\n";
    char buf[256];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.6f,%.6f\n", r.name.c_str(), r.precision,
                      r.recall, r.f_measure, r.centerline_distance);
        out += buf;
    }
    return out;
}

std::string eval_summary_json(const std::vector<EvalRow> &rows) {
    double p = 0, r = 0, f = 0, cd = 0;
    for (const auto &row : rows) {
        p += row.precision;
        r += row.recall;
        f += row.f_measure;
        cd += row.centerline_distance;
    }
    double n = rows.empty() ? 1.0 : double(rows.size());
    nlohmann::ordered_json doc;
    doc["images"] = rows.size();
    doc["mean_precision"] = p / n;
    doc["mean_recall"] = r / n;
    doc["mean_f_measure"] = f / n;
    doc["mean_centerline_distance"] = cd / n;
    return doc.dump(2);
}

} // namespace svx
