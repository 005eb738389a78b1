#pragma once

#include <string>
#include <vector>

#include "plasti/maps.hpp"
#include "plasti/space.hpp"

namespace plasti::cli {

struct PlotSpec {
    SubspaceDescription space;
    std::vector<MapDescription> maps;
    Window window{Scalar(-10), Scalar(10)};
    int size = 800;    // square viewport, in SVG user units
    int margin = 20;
    int marker = 4;    // point marker radius
    bool product = true;   // grey A x A
    bool diagonal = true;
    bool graph = true;
    Limits limits{64};
};

/// Piece of a map graph over one interval of its domain, clipped to the window.
struct GraphSegment {
    Scalar x0;
    Scalar x1;
    Scalar slope;
    Scalar intercept;
    bool lo_closed = true;  // endpoint markers; false also when clipped
    bool hi_closed = true;
    bool lo_real = true;    // an endpoint of the piece, not a window cut
    bool hi_real = true;

    [[nodiscard]] Scalar y0() const { return slope * x0 + intercept; }
    [[nodiscard]] Scalar y1() const { return slope * x1 + intercept; }
};

struct MapGraph {
    std::vector<std::pair<Scalar, Scalar>> points;  // (x, phi x) for isolated points
    std::vector<GraphSegment> segments;             // sorted by x0
};

/// Graph of `map` over the window; images outside the window are dropped.
MapGraph map_graph(const PlotSpec& spec, const MapDescription& map);

/// Consecutive segments a, b where the image moves further than a's slope allows over the
/// gap between them: |b.y0 - a.y1| > |slope of a| * (b.x0 - a.x1).
struct Jump {
    Scalar x_from;
    Scalar x_to;
    Scalar y_from;
    Scalar y_to;
};

std::vector<Jump> find_jumps(const MapGraph& graph);

/// Deterministic SVG: grey rectangles for every pair of window members, the diagonal, then
/// one group per map. Throws EmptyWindow when the window misses the space.
std::string render_svg(const PlotSpec& spec);

}  // namespace plasti::cli
