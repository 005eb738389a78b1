#include "plasti/cli/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace plasti::cli {

namespace {

/// Domain points x with slope*x + intercept inside the window.
std::optional<Interval> preimage_of_window(const Window& w, const Scalar& slope, const Scalar& intercept)
{
    if (slope.is_zero()) {
        if (w.contains(intercept)) {
            return Interval::closed(w.lo, w.hi);
        }
        return std::nullopt;
    }
    Scalar a = (w.lo - intercept) / slope;
    Scalar b = (w.hi - intercept) / slope;
    if (b < a) {
        std::swap(a, b);
    }
    return Interval::closed(a, b);
}

class Canvas {
public:
    explicit Canvas(const PlotSpec& s)
        : lo_(s.window.lo), span_(s.window.hi - s.window.lo), size_(s.size), margin_(s.margin)
    {
    }

    [[nodiscard]] double x(const Scalar& v) const
    {
        return margin_ + ((v - lo_) / span_).to_double() * (size_ - 2 * margin_);
    }
    [[nodiscard]] double y(const Scalar& v) const { return size_ - x(v); }

private:
    Scalar lo_;
    Scalar span_;
    int size_;
    int margin_;
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    // "-0.00" and "0.00" must print alike.
    return std::string(buf) == "-0.00" ? "0.00" : buf;
}

struct Member {
    Scalar lo;
    Scalar hi;
};

std::vector<Member> members(const Materialization& m)
{
    std::vector<Member> out;
    for (const auto& p : m.points) {
        out.push_back({p, p});
    }
    for (const auto& f : m.fragments) {
        out.push_back({f.interval.lo.value, f.interval.hi.value});
    }
    std::sort(out.begin(), out.end(), [](const Member& a, const Member& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace

MapGraph map_graph(const PlotSpec& spec, const MapDescription& map)
{
    const Materialization mat = materialize(spec.space, spec.window, spec.limits);
    MapGraph g;
    for (const auto& x : mat.points) {
        const Scalar y = eval(map, spec.space, x, spec.limits);
        if (spec.window.contains(y)) {
            g.points.emplace_back(x, y);
        }
    }
    for (const auto& f : mat.fragments) {
        for (const AffinePiece& p : pieces_on(map, spec.space, f.interval, spec.limits)) {
            if (p.dom.degenerate()) {
                const Scalar y = p.at(p.dom.lo.value);
                if (spec.window.contains(y)) {
                    g.points.emplace_back(p.dom.lo.value, y);
                }
                continue;
            }
            const auto pre = preimage_of_window(spec.window, p.slope, p.intercept);
            const auto dom = pre ? intersect(p.dom, *pre) : std::nullopt;
            if (!dom || dom->degenerate()) {
                continue;
            }
            GraphSegment s{dom->lo.value, dom->hi.value, p.slope, p.intercept};
            s.lo_real = dom->lo == p.dom.lo && !(f.lo_artificial && dom->lo.value == f.interval.lo.value);
            s.hi_real = dom->hi == p.dom.hi && !(f.hi_artificial && dom->hi.value == f.interval.hi.value);
            s.lo_closed = s.lo_real && dom->lo.closed;
            s.hi_closed = s.hi_real && dom->hi.closed;
            g.segments.push_back(std::move(s));
        }
    }
    std::sort(g.points.begin(), g.points.end());
    std::sort(g.segments.begin(), g.segments.end(),
              [](const GraphSegment& a, const GraphSegment& b) { return a.x0 < b.x0; });
    return g;
}

std::vector<Jump> find_jumps(const MapGraph& graph)
{
    std::vector<Jump> out;
    for (std::size_t i = 0; i + 1 < graph.segments.size(); ++i) {
        const GraphSegment& a = graph.segments[i];
        const GraphSegment& b = graph.segments[i + 1];
        if (dist(b.y0(), a.y1()) > a.slope.abs() * (b.x0 - a.x1)) {
            out.push_back({a.x1, b.x0, a.y1(), b.y0()});
        }
    }
    return out;
}

std::string render_svg(const PlotSpec& spec)
{
    const Materialization mat = materialize(spec.space, spec.window, spec.limits);
    const Canvas c(spec);
    const double r = spec.marker;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.size << "\" height=\"" << spec.size
       << "\" viewBox=\"0 0 " << spec.size << ' ' << spec.size << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << spec.size << "\" height=\"" << spec.size << "\" fill=\"white\"/>\n"
       << "<rect x=\"" << spec.margin << "\" y=\"" << spec.margin << "\" width=\"" << spec.size - 2 * spec.margin
       << "\" height=\"" << spec.size - 2 * spec.margin << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    if (spec.product) {
        // A degenerate side of a member is drawn as wide as a point marker.
        const auto extent = [&](const Member& m, bool vertical) {
            double a = vertical ? c.y(m.hi) : c.x(m.lo);
            double b = vertical ? c.y(m.lo) : c.x(m.hi);
            if (m.lo == m.hi) {
                a -= r;
                b += r;
            }
            return std::make_pair(a, b - a);
        };
        const auto ms = members(mat);
        os << "<g id=\"product\" fill=\"#bfbfbf\" stroke=\"none\">\n";
        for (const auto& u : ms) {
            const auto [x, w] = extent(u, false);
            for (const auto& v : ms) {
                const auto [y, h] = extent(v, true);
                os << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\""
                   << num(h) << "\"/>\n";
            }
        }
        os << "</g>\n";
    }

    if (spec.diagonal) {
        os << "<line id=\"diagonal\" x1=\"" << num(c.x(spec.window.lo)) << "\" y1=\"" << num(c.y(spec.window.lo))
           << "\" x2=\"" << num(c.x(spec.window.hi)) << "\" y2=\"" << num(c.y(spec.window.hi))
           << "\" stroke=\"#808080\" stroke-width=\"1\" stroke-dasharray=\"4 4\"/>\n";
    }

    if (spec.graph) {
        for (std::size_t i = 0; i < spec.maps.size(); ++i) {
            const MapGraph g = map_graph(spec, spec.maps[i]);
            const std::string name = spec.maps[i].name.empty() ? "map-" + std::to_string(i + 1) : spec.maps[i].name;
            os << "<g id=\"graph-" << i + 1 << "\" class=\"graph\" data-map=\"" << name << "\">\n";
            for (const auto& s : g.segments) {
                os << "<line x1=\"" << num(c.x(s.x0)) << "\" y1=\"" << num(c.y(s.y0())) << "\" x2=\"" << num(c.x(s.x1))
                   << "\" y2=\"" << num(c.y(s.y1())) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
                const auto end = [&](const Scalar& x, const Scalar& y, bool real, bool closed) {
                    if (real) {
                        os << "<circle cx=\"" << num(c.x(x)) << "\" cy=\"" << num(c.y(y)) << "\" r=\"" << num(r * 3 / 4)
                           << "\" fill=\"" << (closed ? "black" : "white") << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
                    }
                };
                end(s.x0, s.y0(), s.lo_real, s.lo_closed);
                end(s.x1, s.y1(), s.hi_real, s.hi_closed);
            }
            for (const auto& [x, y] : g.points) {
                os << "<circle cx=\"" << num(c.x(x)) << "\" cy=\"" << num(c.y(y)) << "\" r=\"" << num(r)
                   << "\" fill=\"black\"/>\n";
            }
            os << "</g>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace plasti::cli
