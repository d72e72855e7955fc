#include "core/pathgraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

#include "core/morph.hpp"

namespace svx {

namespace {
constexpr int kDx[8] = {0, 1, 1, 1, 0, -1, -1, -1}; // N, NE, E, SE, S, SW, W, NW
constexpr int kDy[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
} // namespace

const char *category_name(PathCategory c) {
    switch (c) {
    case PathCategory::EE: return "EE";
    case PathCategory::JE: return "JE";
    case PathCategory::JJ: return "JJ";
    case PathCategory::CLOSED: return "CLOSED";
    }
    return "?";
}

BinaryImage to_strict8(const BinaryImage &skel) {
    return hit_miss_erode_inplace(skel, strict8_masks());
}

namespace {

PathCategory categorize(const Path &p) {
    int junctions = (p.start.kind == PathEnd::Kind::Junction) +
                    (p.end.kind == PathEnd::Kind::Junction);
    int endpoints = (p.start.kind == PathEnd::Kind::Endpoint) +
                    (p.end.kind == PathEnd::Kind::Endpoint);
    if (junctions == 2) return PathCategory::JJ;
    if (junctions == 1) return PathCategory::JE;
    if (endpoints == 0 && p.points.size() >= 3) {
        const Pixel &a = p.points.front();
        const Pixel &b = p.points.back();
        if (std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)) <= 1) return PathCategory::CLOSED;
    }
    return PathCategory::EE;
}

void rebuild_junction_incidence(PathGraph &g) {
    for (auto &j : g.junctions) j.path_ids.clear();
    for (size_t i = 0; i < g.paths.size(); ++i) {
        const Path &p = g.paths[i];
        if (p.start.kind == PathEnd::Kind::Junction)
            g.junctions[size_t(p.start.id)].path_ids.push_back(int(i));
        if (p.end.kind == PathEnd::Kind::Junction &&
            !(p.start.kind == PathEnd::Kind::Junction && p.start.id == p.end.id))
            g.junctions[size_t(p.end.id)].path_ids.push_back(int(i));
    }
}

} // namespace

PathGraph build_graph(const BinaryImage &skel) {
    PathGraph g;
    g.width = skel.width;
    g.height = skel.height;

    // Junction clusters: adjacent junction pixels merge into one node.
    std::vector<Pixel> junction_pixels = hit_miss_scan(skel, junction_masks());
    std::vector<int32_t> jindex(skel.bits.size(), -1);
    BinaryImage jmask(skel.width, skel.height);
    for (const auto &p : junction_pixels) jmask.at(p.x, p.y) = 1;
    for (const auto &comp : connected_components(jmask, 8)) {
        Junction j;
        j.members = comp.pixels;
        j.representative = *std::min_element(
            j.members.begin(), j.members.end(),
            [](const Pixel &a, const Pixel &b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
        int id = int(g.junctions.size());
        for (const auto &p : j.members) jindex[size_t(p.y) * skel.width + p.x] = id;
        g.junctions.push_back(std::move(j));
    }

    g.endpoints = hit_miss_scan(skel, endpoint_masks());
    std::map<Pixel, int> endpoint_id;
    for (size_t i = 0; i < g.endpoints.size(); ++i) endpoint_id[g.endpoints[i]] = int(i);

    std::vector<uint8_t> visited(skel.bits.size(), 0);
    for (const auto &p : junction_pixels) visited[size_t(p.y) * skel.width + p.x] = 1;
    auto seen = [&](const Pixel &p) { return visited[size_t(p.y) * skel.width + p.x] != 0; };
    auto junction_at = [&](const Pixel &p) { return jindex[size_t(p.y) * skel.width + p.x]; };

    // Walk from `first` away from `prev` until another attachment is reached.
    auto walk = [&](Pixel first, Pixel prev, bool has_prev) {
        Path path;
        path.points.push_back(first);
        visited[size_t(first.y) * skel.width + first.x] = 1;
        Pixel cur = first;
        while (true) {
            int next_junction = -1;
            Pixel next{-1, -1};
            bool found = false;
            for (int d = 0; d < 8; ++d) {
                Pixel n{cur.x + kDx[d], cur.y + kDy[d]};
                if (!skel.get(n.x, n.y)) continue;
                if (has_prev && n == prev) continue;
                int j = junction_at(n);
                if (j >= 0) {
                    if (next_junction < 0) next_junction = j;
                    continue;
                }
                if (!seen(n) && !found) {
                    next = n;
                    found = true;
                }
            }
            if (found) {
                visited[size_t(next.y) * skel.width + next.x] = 1;
                path.points.push_back(next);
                prev = cur;
                has_prev = true;
                cur = next;
                continue;
            }
            if (next_junction >= 0) {
                path.end = {PathEnd::Kind::Junction, next_junction};
            } else if (auto it = endpoint_id.find(cur); it != endpoint_id.end()) {
                path.end = {PathEnd::Kind::Endpoint, it->second};
            }
            break;
        }
        return path;
    };

    // Endpoint-anchored paths first.
    for (const auto &e : g.endpoints) {
        if (seen(e)) continue;
        Path p = walk(e, e, false);
        p.start = {PathEnd::Kind::Endpoint, endpoint_id[e]};
        p.category = categorize(p);
        g.paths.push_back(std::move(p));
    }
    // Junction-anchored walks pick up JJ paths and junction-to-endpoint arms
    // not reachable from any endpoint.
    for (size_t ji = 0; ji < g.junctions.size(); ++ji) {
        for (const auto &m : g.junctions[ji].members) {
            for (int d = 0; d < 8; ++d) {
                Pixel n{m.x + kDx[d], m.y + kDy[d]};
                if (!skel.get(n.x, n.y) || seen(n) || junction_at(n) >= 0) continue;
                Path p = walk(n, m, true);
                p.start = {PathEnd::Kind::Junction, int(ji)};
                p.category = categorize(p);
                g.paths.push_back(std::move(p));
            }
        }
    }
    // Whatever remains belongs to closed loops.
    for (int y = 0; y < skel.height; ++y) {
        for (int x = 0; x < skel.width; ++x) {
            if (!skel.at(x, y) || seen({x, y})) continue;
            Path p = walk({x, y}, {x, y}, false);
            p.category = categorize(p);
            g.paths.push_back(std::move(p));
        }
    }

    rebuild_junction_incidence(g);
    return g;
}

namespace {

// Order junction member pixels into a chain from a pixel adjacent to `from`
// toward one adjacent to `to` (greedy nearest-neighbor, members are few).
std::vector<Pixel> chain_members(std::vector<Pixel> members, const Pixel &from, const Pixel &to) {
    std::vector<Pixel> chain;
    Pixel cur = from;
    while (!members.empty()) {
        auto best = members.end();
        double best_d = 1e18;
        for (auto it = members.begin(); it != members.end(); ++it) {
            double d = distance(cur, *it) + 0.001 * distance(*it, to);
            if (d < best_d) {
                best_d = d;
                best = it;
            }
        }
        chain.push_back(*best);
        cur = *best;
        members.erase(best);
    }
    return chain;
}

Path reversed(Path p) {
    std::reverse(p.points.begin(), p.points.end());
    std::swap(p.start, p.end);
    return p;
}

// Drop paths flagged for removal and remap junction attachments.
PathGraph compact(const PathGraph &g, const std::vector<uint8_t> &keep_path,
                  const std::vector<uint8_t> &keep_junction) {
    PathGraph out;
    out.width = g.width;
    out.height = g.height;
    out.endpoints = g.endpoints;
    std::vector<int> jmap(g.junctions.size(), -1);
    for (size_t i = 0; i < g.junctions.size(); ++i) {
        if (!keep_junction[i]) continue;
        jmap[i] = int(out.junctions.size());
        out.junctions.push_back(g.junctions[i]);
    }
    for (size_t i = 0; i < g.paths.size(); ++i) {
        if (!keep_path[i]) continue;
        Path p = g.paths[i];
        for (PathEnd *end : {&p.start, &p.end}) {
            if (end->kind == PathEnd::Kind::Junction) {
                int m = jmap[size_t(end->id)];
                if (m < 0)
                    *end = PathEnd{};
                else
                    end->id = m;
            }
        }
        p.category = categorize(p);
        out.paths.push_back(std::move(p));
    }
    rebuild_junction_incidence(out);
    return out;
}

// Dissolve junctions that no longer join three or more path ends; a
// self-loop contributes two ends.
PathGraph dissolve_degenerate_junctions(PathGraph g) {
    bool changed = true;
    while (changed) {
        changed = false;
        rebuild_junction_incidence(g);
        for (size_t ji = 0; ji < g.junctions.size(); ++ji) {
            Junction &j = g.junctions[ji];
            auto is_self_loop = [&](int pid) {
                const Path &p = g.paths[size_t(pid)];
                return p.start.kind == PathEnd::Kind::Junction &&
                       p.end.kind == PathEnd::Kind::Junction && p.start.id == p.end.id;
            };
            size_t degree = 0;
            for (int pid : j.path_ids) degree += is_self_loop(pid) ? 2 : 1;
            if (degree > 2) continue;

            std::vector<uint8_t> keep_path(g.paths.size(), 1), keep_junction(g.junctions.size(), 1);
            keep_junction[ji] = 0;

            if (degree == 1) {
                // Absorb members into the lone path's junction-side end.
                Path &p = g.paths[size_t(j.path_ids[0])];
                if (p.start.kind == PathEnd::Kind::Junction && p.start.id == int(ji))
                    p = reversed(p);
                auto chain = chain_members(j.members, p.points.back(), p.points.back());
                p.points.insert(p.points.end(), chain.begin(), chain.end());
                p.end = PathEnd{};
                p.category = categorize(p);
            } else if (degree == 2 && j.path_ids.size() == 1) {
                // Both ends of the same path meet here: close the loop.
                Path &p = g.paths[size_t(j.path_ids[0])];
                auto chain = chain_members(j.members, p.points.back(), p.points.front());
                p.points.insert(p.points.end(), chain.begin(), chain.end());
                p.start = PathEnd{};
                p.end = PathEnd{};
                p.category = PathCategory::CLOSED;
            } else if (degree == 2) {
                // Splice the two paths through the member chain.
                int ia = j.path_ids[0], ib = j.path_ids[1];
                Path a = g.paths[size_t(ia)];
                Path b = g.paths[size_t(ib)];
                if (a.start.kind == PathEnd::Kind::Junction && a.start.id == int(ji))
                    a = reversed(a);
                if (!(b.start.kind == PathEnd::Kind::Junction && b.start.id == int(ji)))
                    b = reversed(b);
                auto chain = chain_members(j.members, a.points.back(), b.points.front());
                Path merged;
                merged.points = a.points;
                merged.points.insert(merged.points.end(), chain.begin(), chain.end());
                merged.points.insert(merged.points.end(), b.points.begin(), b.points.end());
                merged.start = a.start;
                merged.end = b.end;
                merged.category = categorize(merged);
                keep_path[size_t(ia)] = 0;
                keep_path[size_t(ib)] = 0;
                g.paths.push_back(std::move(merged));
                keep_path.push_back(1);
            }
            g = compact(g, keep_path, keep_junction);
            changed = true;
            break;
        }
    }
    rebuild_junction_incidence(g);
    return g;
}

PathGraph prune_sweep(PathGraph g, int max_len) {
    std::vector<uint8_t> keep_path(g.paths.size(), 1);
    std::vector<uint8_t> keep_junction(g.junctions.size(), 1);
    for (size_t i = 0; i < g.paths.size(); ++i) {
        const Path &p = g.paths[i];
        bool branch = p.category == PathCategory::EE || p.category == PathCategory::JE;
        if (branch && int(p.points.size()) < max_len) keep_path[i] = 0;
    }
    g = compact(g, keep_path, keep_junction);
    return dissolve_degenerate_junctions(std::move(g));
}

} // namespace

PathGraph prune(const PathGraph &g, int max_len, bool iterative) {
    if (max_len < 0) throw std::invalid_argument("prune: negative length threshold");
    PathGraph out = g;
    if (iterative) {
        for (int t = 1; t <= max_len; ++t) out = prune_sweep(std::move(out), t);
    } else {
        out = prune_sweep(std::move(out), max_len);
    }
    return out;
}

namespace {

std::vector<Vec2> resample_by_arc_length(const std::vector<Pixel> &pts, size_t count) {
    std::vector<Vec2> out;
    if (pts.empty() || count == 0) return out;
    std::vector<double> cum(pts.size(), 0.0);
    for (size_t i = 1; i < pts.size(); ++i)
        cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
    double total = cum.back();
    for (size_t k = 0; k < count; ++k) {
        double target = count == 1 ? 0.0 : total * double(k) / double(count - 1);
        auto it = std::lower_bound(cum.begin(), cum.end(), target);
        size_t i = size_t(it - cum.begin());
        if (i == 0) {
            out.push_back(to_vec(pts[0]));
            continue;
        }
        double seg = cum[i] - cum[i - 1];
        double t = seg > 0.0 ? (target - cum[i - 1]) / seg : 0.0;
        out.push_back(to_vec(pts[i - 1]) + (to_vec(pts[i]) - to_vec(pts[i - 1])) * t);
    }
    return out;
}

// Integer points of the polyline through `pts`, gaps bridged, duplicates removed.
std::vector<Pixel> rasterize_polyline(const std::vector<Vec2> &pts) {
    std::vector<Pixel> out;
    for (size_t i = 0; i < pts.size(); ++i) {
        Pixel p{int(std::lround(pts[i].x)), int(std::lround(pts[i].y))};
        if (out.empty()) {
            out.push_back(p);
            continue;
        }
        Pixel prev = out.back();
        if (p == prev) continue;
        int steps = std::max(std::abs(p.x - prev.x), std::abs(p.y - prev.y));
        for (int s = 1; s <= steps; ++s) {
            Pixel q{prev.x + (p.x - prev.x) * s / steps, prev.y + (p.y - prev.y) * s / steps};
            if (q != out.back()) out.push_back(q);
        }
    }
    return out;
}

} // namespace

PathGraph merge(const PathGraph &g, double junction_radius, double parallel_gap) {
    if (junction_radius < 0.0 || parallel_gap < 0.0)
        throw std::invalid_argument("merge: negative radius");
    PathGraph out = g;

    // Collapse nearby junction clusters (union-find over representatives).
    std::vector<int> parent(out.junctions.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) {
        while (parent[size_t(i)] != i) i = parent[size_t(i)] = parent[size_t(parent[size_t(i)])];
        return i;
    };
    for (size_t a = 0; a < out.junctions.size(); ++a)
        for (size_t b = a + 1; b < out.junctions.size(); ++b)
            if (distance(out.junctions[a].representative, out.junctions[b].representative) <=
                junction_radius)
                parent[size_t(find(int(b)))] = find(int(a));

    std::vector<Junction> merged;
    std::vector<int> jmap(out.junctions.size(), -1);
    for (size_t i = 0; i < out.junctions.size(); ++i) {
        int root = find(int(i));
        if (jmap[size_t(root)] < 0) {
            jmap[size_t(root)] = int(merged.size());
            merged.push_back(Junction{});
        }
        Junction &m = merged[size_t(jmap[size_t(root)])];
        m.members.insert(m.members.end(), out.junctions[i].members.begin(),
                         out.junctions[i].members.end());
    }
    for (auto &j : merged)
        j.representative = *std::min_element(
            j.members.begin(), j.members.end(),
            [](const Pixel &a, const Pixel &b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
    for (auto &p : out.paths) {
        for (PathEnd *end : {&p.start, &p.end})
            if (end->kind == PathEnd::Kind::Junction)
                end->id = jmap[size_t(find(end->id))];
        p.category = categorize(p);
    }
    out.junctions = std::move(merged);
    rebuild_junction_incidence(out);

    // Average parallel twins that span the same junction pair.
    bool again = true;
    while (again) {
        again = false;
        for (size_t a = 0; a < out.paths.size() && !again; ++a) {
            const Path &pa = out.paths[a];
            if (pa.category != PathCategory::JJ || pa.start.id == pa.end.id) continue;
            for (size_t b = a + 1; b < out.paths.size() && !again; ++b) {
                const Path &pb = out.paths[b];
                if (pb.category != PathCategory::JJ || pb.start.id == pb.end.id) continue;
                bool same = pa.start.id == pb.start.id && pa.end.id == pb.end.id;
                bool swapped = pa.start.id == pb.end.id && pa.end.id == pb.start.id;
                if (!same && !swapped) continue;
                size_t count = std::min(pa.points.size(), pb.points.size());
                if (count < 2) continue;
                auto ra = resample_by_arc_length(pa.points, count);
                std::vector<Pixel> pbp = pb.points;
                if (swapped) std::reverse(pbp.begin(), pbp.end());
                auto rb = resample_by_arc_length(pbp, count);
                double mean = 0.0;
                for (size_t k = 0; k < count; ++k) mean += distance(ra[k], rb[k]);
                mean /= double(count);
                if (mean > parallel_gap) continue;

                std::vector<Vec2> avg(count);
                for (size_t k = 0; k < count; ++k) avg[k] = (ra[k] + rb[k]) * 0.5;
                Path np;
                np.points = rasterize_polyline(avg);
                np.start = pa.start;
                np.end = pa.end;
                np.category = PathCategory::JJ;
                std::vector<uint8_t> keep(out.paths.size(), 1), keepj(out.junctions.size(), 1);
                keep[a] = 0;
                keep[b] = 0;
                out.paths.push_back(std::move(np));
                keep.push_back(1);
                out = compact(out, keep, keepj);
                again = true;
            }
        }
    }
    return out;
}

namespace {

// Outward direction at a path end: least-squares line over the terminal
// points, oriented from the interior toward the tip.
Vec2 terminal_tangent(const Path &p, bool at_end, int window = 5) {
    int n = int(p.points.size());
    int k = std::min(window, n);
    Vec2 mean{0, 0};
    std::vector<Vec2> pts;
    for (int i = 0; i < k; ++i) {
        int idx = at_end ? n - k + i : k - 1 - i;
        pts.push_back(to_vec(p.points[size_t(idx)]));
        mean += pts.back();
    }
    mean = mean / double(k);
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto &q : pts) {
        Vec2 d = q - mean;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    // Dominant eigenvector of the 2x2 covariance.
    double tr = sxx + syy, det = sxx * syy - sxy * sxy;
    double lambda = tr / 2.0 + std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
    Vec2 dir = std::fabs(sxy) > 1e-12 ? Vec2{lambda - syy, sxy} : (sxx >= syy ? Vec2{1, 0} : Vec2{0, 1});
    dir = dir.normalized();
    Vec2 tip = pts.back() - pts.front(); // toward the tip by construction
    if (dir.dot(tip) < 0.0) dir = dir * -1.0;
    if (tip.norm() < 1e-9) dir = Vec2{0, 0};
    return dir;
}

std::vector<Pixel> bresenham_between(const Pixel &a, const Pixel &b) {
    std::vector<Pixel> out;
    int steps = std::max(std::abs(b.x - a.x), std::abs(b.y - a.y));
    for (int s = 1; s < steps; ++s)
        out.push_back({a.x + (b.x - a.x) * s / steps, a.y + (b.y - a.y) * s / steps});
    return out;
}

} // namespace

PathGraph link_endpoints(const PathGraph &g, double max_dist, double max_angle) {
    if (max_dist < 0.0 || max_angle < 0.0)
        throw std::invalid_argument("link_endpoints: negative threshold");
    PathGraph out = g;

    struct Tip {
        int path;
        bool at_end;
        Pixel pos;
        Vec2 dir;
    };
    std::vector<Tip> tips;
    for (size_t i = 0; i < out.paths.size(); ++i) {
        const Path &p = out.paths[i];
        if (p.points.empty()) continue;
        if (p.start.kind == PathEnd::Kind::Endpoint)
            tips.push_back({int(i), false, p.points.front(), terminal_tangent(p, false)});
        if (p.end.kind == PathEnd::Kind::Endpoint)
            tips.push_back({int(i), true, p.points.back(), terminal_tangent(p, true)});
    }

    struct Cand {
        double dist;
        size_t a, b;
    };
    std::vector<Cand> cands;
    for (size_t a = 0; a < tips.size(); ++a) {
        for (size_t b = a + 1; b < tips.size(); ++b) {
            if (tips[a].path == tips[b].path) continue;
            double d = distance(tips[a].pos, tips[b].pos);
            if (d > max_dist || d <= 0.0) continue;
            Vec2 gap_ab = (to_vec(tips[b].pos) - to_vec(tips[a].pos)).normalized();
            double ang_a = std::acos(std::clamp(tips[a].dir.dot(gap_ab), -1.0, 1.0));
            double ang_b = std::acos(std::clamp(tips[b].dir.dot(gap_ab * -1.0), -1.0, 1.0));
            if (ang_a > max_angle || ang_b > max_angle) continue;
            cands.push_back({d, a, b});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand &x, const Cand &y) {
        return std::tie(x.dist, x.a, x.b) < std::tie(y.dist, y.a, y.b);
    });

    std::vector<uint8_t> tip_used(tips.size(), 0);
    std::vector<int> remap(out.paths.size());
    std::iota(remap.begin(), remap.end(), 0);
    std::function<int(int)> find = [&](int i) {
        while (remap[size_t(i)] != i) i = remap[size_t(i)] = remap[size_t(remap[size_t(i)])];
        return i;
    };
    std::vector<uint8_t> keep(out.paths.size(), 1);

    for (const auto &c : cands) {
        if (tip_used[c.a] || tip_used[c.b]) continue;
        int pa = find(tips[c.a].path);
        int pb = find(tips[c.b].path);
        if (pa == pb) continue;
        Path a = out.paths[size_t(pa)];
        Path b = out.paths[size_t(pb)];
        // Orient a to finish at tip A and b to begin at tip B. Unused tips
        // stay at the extremes of merged paths.
        if (a.points.back() != tips[c.a].pos) {
            if (a.points.front() == tips[c.a].pos) a = reversed(a);
            else continue;
        }
        if (b.points.front() != tips[c.b].pos) {
            if (b.points.back() == tips[c.b].pos) b = reversed(b);
            else continue;
        }
        Path joined;
        joined.points = a.points;
        auto conn = bresenham_between(tips[c.a].pos, tips[c.b].pos);
        joined.points.insert(joined.points.end(), conn.begin(), conn.end());
        joined.points.insert(joined.points.end(), b.points.begin(), b.points.end());
        joined.start = a.start;
        joined.end = b.end;
        joined.category = categorize(joined);
        keep[size_t(pa)] = 0;
        keep[size_t(pb)] = 0;
        out.paths.push_back(std::move(joined));
        keep.push_back(1);
        int ni = int(out.paths.size()) - 1;
        remap.push_back(ni);
        remap[size_t(pa)] = ni;
        remap[size_t(pb)] = ni;
        tip_used[c.a] = tip_used[c.b] = 1;
    }

    std::vector<uint8_t> keepj(out.junctions.size(), 1);
    return compact(out, keep, keepj);
}

std::string graph_to_json(const PathGraph &g) {
    nlohmann::ordered_json doc;
    doc["width"] = g.width;
    doc["height"] = g.height;
    doc["paths"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < g.paths.size(); ++i) {
        const Path &p = g.paths[i];
        nlohmann::ordered_json jp;
        jp["id"] = i;
        jp["category"] = category_name(p.category);
        auto end_json = [](const PathEnd &e) {
            nlohmann::ordered_json je;
            je["type"] = e.kind == PathEnd::Kind::Endpoint   ? "endpoint"
                         : e.kind == PathEnd::Kind::Junction ? "junction"
                                                             : "none";
            if (e.kind != PathEnd::Kind::None) je["id"] = e.id;
            return je;
        };
        jp["start"] = end_json(p.start);
        jp["end"] = end_json(p.end);
        auto pts = nlohmann::ordered_json::array();
        for (const auto &q : p.points) pts.push_back({q.x, q.y});
        jp["points"] = std::move(pts);
        doc["paths"].push_back(std::move(jp));
    }
    doc["junctions"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < g.junctions.size(); ++i) {
        const Junction &j = g.junctions[i];
        nlohmann::ordered_json jj;
        jj["id"] = i;
        jj["representative"] = {j.representative.x, j.representative.y};
        auto mem = nlohmann::ordered_json::array();
        for (const auto &m : j.members) mem.push_back({m.x, m.y});
        jj["members"] = std::move(mem);
        jj["paths"] = j.path_ids;
        doc["junctions"].push_back(std::move(jj));
    }
    doc["endpoints"] = nlohmann::ordered_json::array();
    for (const auto &e : g.endpoints) doc["endpoints"].push_back({e.x, e.y});
    return doc.dump(2);
}

} // namespace svx
