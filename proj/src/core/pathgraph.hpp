#pragma once

#include <string>
#include <vector>

#include "core/image.hpp"

namespace svx {

enum class PathCategory { EE, JE, JJ, CLOSED };

struct PathEnd {
    enum class Kind { None, Endpoint, Junction };
    Kind kind = Kind::None;
    int id = -1;
};

/// Ordered run of 8-connected skeleton pixels between two attachments.
struct Path {
    std::vector<Pixel> points;
    PathCategory category = PathCategory::CLOSED;
    PathEnd start;
    PathEnd end;
};

/// Cluster of mutually adjacent junction pixels treated as one node.
struct Junction {
    Pixel representative;
    std::vector<Pixel> members;
    std::vector<int> path_ids;
};

struct PathGraph {
    std::vector<Path> paths;
    std::vector<Junction> junctions;
    std::vector<Pixel> endpoints;
    int width = 0;
    int height = 0;
};

/// Remove 4-adjacent pixels not needed for topology (in-place hit-miss with
/// the elbow masks), yielding a strictly 8-connected skeleton.
BinaryImage to_strict8(const BinaryImage &skel);

/// Junction/endpoint detection and skeleton navigation into typed paths.
/// Expects a strictly 8-connected skeleton.
PathGraph build_graph(const BinaryImage &skel);

/// Delete EE/JE branches shorter than max_len points; junctions left with
/// fewer than three incident paths are dissolved into their neighbors.
PathGraph prune(const PathGraph &g, int max_len, bool iterative);

/// Collapse junction clusters closer than junction_radius and average
/// parallel twin paths whose mean separation is at most parallel_gap.
PathGraph merge(const PathGraph &g, double junction_radius, double parallel_gap);

/// Join nearby, direction-compatible endpoint pairs with straight connectors.
PathGraph link_endpoints(const PathGraph &g, double max_dist, double max_angle);

std::string graph_to_json(const PathGraph &g);

const char *category_name(PathCategory c);

} // namespace svx
