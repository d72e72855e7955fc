#pragma once

#include <string>

#include "core/bezfit.hpp"
#include "core/evalgen.hpp"
#include "core/linex.hpp"
#include "core/thin.hpp"

namespace svx {

struct PipelineConfig {
    LinexConfig linex;
    bool unbias = true;
    int cord_length = 15;
    int prune_len = 10;
    bool prune_iterative = false;
    double junction_radius = 4.0;
    double parallel_gap = 3.0;
    double link_dist = 10.0;
    double link_angle_deg = 30.0;
    FitConfig fit;
    CorruptionConfig corruption;
    double eval_tolerance = 3.0;
    uint64_t seed = 0;

    void validate() const;

    /// Set a field by its flat key (same names as the JSON echo); throws
    /// ConfigError on unknown keys or unparsable values.
    void set(const std::string &key, const std::string &value);

    std::string to_json() const;
    static PipelineConfig from_json(const std::string &text);
};

} // namespace svx
