#include "core/config.hpp"

#include <cmath>
#include <map>

#include <json.hpp>

#include "core/errors.hpp"

namespace svx {

void PipelineConfig::validate() const {
    linex.validate();
    fit.validate();
    corruption.validate();
    if (cord_length < 3) throw ConfigError("cord length must be at least 3");
    if (prune_len < 0) throw ConfigError("prune length must be non-negative");
    if (junction_radius < 0.0 || parallel_gap < 0.0 || link_dist < 0.0)
        throw ConfigError("pathgraph thresholds must be non-negative");
    if (link_angle_deg < 0.0 || link_angle_deg > 180.0)
        throw ConfigError("link angle must lie in [0, 180] degrees");
    if (eval_tolerance <= 0.0) throw ConfigError("eval tolerance must be positive");
}

namespace {

template <typename T> struct Field {
    T *ptr;
};

struct Binder {
    std::map<std::string, double *> doubles;
    std::map<std::string, int *> ints;
    std::map<std::string, bool *> bools;
    std::map<std::string, uint64_t *> u64s;
};

Binder bind(PipelineConfig &c) {
    Binder b;
    b.doubles = {
        {"wmin", &c.linex.w_min},
        {"wmax", &c.linex.w_max},
        {"scale_base", &c.linex.base},
        {"pcc_threshold", &c.linex.mpcc_threshold},
        {"junction_radius", &c.junction_radius},
        {"parallel_gap", &c.parallel_gap},
        {"link_dist", &c.link_dist},
        {"link_angle", &c.link_angle_deg},
        {"fit_err", &c.fit.desired_err},
        {"iters_per_pixel", &c.fit.iterations_per_pixel},
        {"early_stop_fraction", &c.fit.early_stop_fraction},
        {"psi_factor", &c.fit.psi_factor},
        {"eval_tolerance", &c.eval_tolerance},
        {"corrupt_width_min", &c.corruption.width_min},
        {"corrupt_width_max", &c.corruption.width_max},
        {"corrupt_intensity_min", &c.corruption.intensity_min},
        {"corrupt_intensity_max", &c.corruption.intensity_max},
        {"corrupt_break_prob", &c.corruption.break_probability},
        {"corrupt_break_fraction", &c.corruption.break_fraction},
        {"corrupt_jitter", &c.corruption.jitter_amplitude},
        {"corrupt_noise_sigma", &c.corruption.background_noise_sigma},
        {"corrupt_texture", &c.corruption.texture_amplitude},
        {"corrupt_target_mp", &c.corruption.target_megapixels},
    };
    b.ints = {
        {"min_component", &c.linex.min_component_size},
        {"median_window", &c.linex.median_window},
        {"cord_length", &c.cord_length},
        {"prune_len", &c.prune_len},
        {"corrupt_overdraw_min", &c.corruption.overdraw_min},
        {"corrupt_overdraw_max", &c.corruption.overdraw_max},
    };
    b.bools = {
        {"unbias", &c.unbias},
        {"prune_iterative", &c.prune_iterative},
        {"psi_skip", &c.fit.psi_skip},
    };
    b.u64s = {{"seed", &c.seed}};
    return b;
}

} // namespace

void PipelineConfig::set(const std::string &key, const std::string &value) {
    Binder b = bind(*this);
    try {
        if (auto it = b.doubles.find(key); it != b.doubles.end()) {
            *it->second = std::stod(value);
            return;
        }
        if (auto it = b.ints.find(key); it != b.ints.end()) {
            *it->second = std::stoi(value);
            return;
        }
        if (auto it = b.bools.find(key); it != b.bools.end()) {
            *it->second = value == "1" || value == "true" || value == "on";
            return;
        }
        if (auto it = b.u64s.find(key); it != b.u64s.end()) {
            *it->second = std::stoull(value);
            return;
        }
    } catch (const std::exception &) {
        throw ConfigError("bad value for config key '" + key + "': " + value);
    }
    throw ConfigError("unknown config key: " + key);
}

std::string PipelineConfig::to_json() const {
    PipelineConfig copy = *this;
    Binder b = bind(copy);
    nlohmann::ordered_json doc;
    for (auto &[k, v] : b.doubles) doc[k] = *v;
    for (auto &[k, v] : b.ints) doc[k] = *v;
    for (auto &[k, v] : b.bools) doc[k] = *v;
    for (auto &[k, v] : b.u64s) doc[k] = *v;
    return doc.dump(2);
}

PipelineConfig PipelineConfig::from_json(const std::string &text) {
    PipelineConfig c;
    Binder b = bind(c);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception &e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string &k = it.key();
        if (auto d = b.doubles.find(k); d != b.doubles.end())
            *d->second = it.value().get<double>();
        else if (auto i = b.ints.find(k); i != b.ints.end())
            *i->second = it.value().get<int>();
        else if (auto bo = b.bools.find(k); bo != b.bools.end())
            *bo->second = it.value().get<bool>();
        else if (auto u = b.u64s.find(k); u != b.u64s.end())
            *u->second = it.value().get<uint64_t>();
        else
            throw ConfigError("unknown config key: " + k);
    }
    c.validate();
    return c;
}

} // namespace svx
