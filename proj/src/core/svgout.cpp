#include "core/svgout.hpp"

#include <cstdio>

namespace svx {

namespace {

// Fixed-precision, locale-independent number formatting keeps re-runs
// byte-identical.
void append_num(std::string &out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    out += buf;
}

} // namespace

std::string splines_to_svg(const std::vector<BezierSpline> &splines, int width, int height) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    char head[160];
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n",
                  width, height, width, height);
    out += head;
    for (const auto &s : splines) {
        if (s.segments.empty()) continue;
        out += "  <path d=\"M ";
        append_num(out, s.segments.front().b0.x);
        out += ' ';
        append_num(out, s.segments.front().b0.y);
        for (const auto &seg : s.segments) {
            out += " C ";
            append_num(out, seg.b1.x);
            out += ' ';
            append_num(out, seg.b1.y);
            out += ", ";
            append_num(out, seg.b2.x);
            out += ' ';
            append_num(out, seg.b2.y);
            out += ", ";
            append_num(out, seg.b3.x);
            out += ' ';
            append_num(out, seg.b3.y);
        }
        if (s.closed) out += " Z";
        out += "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace svx
