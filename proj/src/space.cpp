#include "plasti/space.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "plasti/error.hpp"
#include "space_detail.hpp"

namespace plasti {

std::string to_string(Direction d)
{
    switch (d) {
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Both: return "both";
    }
    return "?";
}

std::string to_string(Topology t)
{
    switch (t) {
    case Topology::Open: return "open";
    case Topology::Closed: return "closed";
    case Topology::LeftClosed: return "left-closed";
    case Topology::RightClosed: return "right-closed";
    }
    return "?";
}

Topology mirrored(Topology t)
{
    if (t == Topology::LeftClosed) {
        return Topology::RightClosed;
    }
    if (t == Topology::RightClosed) {
        return Topology::LeftClosed;
    }
    return t;
}

bool lo_closed(Topology t) { return t == Topology::Closed || t == Topology::LeftClosed; }
bool hi_closed(Topology t) { return t == Topology::Closed || t == Topology::RightClosed; }

Window::Window(Scalar lo_, Scalar hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {}

Window Window::parse(std::string_view text)
{
    const auto dots = text.find("..");
    Scalar lo;
    Scalar hi;
    if (dots == std::string_view::npos || !Scalar::try_parse(text.substr(0, dots), lo) ||
        !Scalar::try_parse(text.substr(dots + 2), hi)) {
        throw Error(ErrorKind::ParseError, "window must look like lo..hi, got '" + std::string(text) + "'");
    }
    if (!(lo < hi)) {
        throw Error(ErrorKind::PreconditionFailed, "window needs lo < hi, got '" + std::string(text) + "'");
    }
    return {lo, hi};
}

bool is_discrete(const Component& c)
{
    return std::holds_alternative<FinitePoints>(c) || std::holds_alternative<ArithmeticProgression>(c) ||
           std::holds_alternative<GapSequence>(c);
}

namespace {

Direction mirrored(Direction d)
{
    if (d == Direction::Left) {
        return Direction::Right;
    }
    if (d == Direction::Right) {
        return Direction::Left;
    }
    return d;
}

std::string join_scalars(const std::vector<Scalar>& v, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i == 0 ? "" : sep) + v[i].str();
    }
    return out;
}

std::string bound_text(const BoundDeclaration& b)
{
    switch (b.kind) {
    case BoundDeclaration::Kind::Attained: return "attained(" + b.at.str() + ")";
    case BoundDeclaration::Kind::Unattained: return "unattained(" + b.at.str() + ")";
    case BoundDeclaration::Kind::Unbounded: return "unbounded";
    }
    return "?";
}

Extremum lower_of(const Extremum& a, const Extremum& b)
{
    if (a.kind == Extremum::Kind::Infinite || b.kind == Extremum::Kind::Infinite) {
        return Extremum::infinite();
    }
    if (a.value != b.value) {
        return a.value < b.value ? a : b;
    }
    return a.kind == Extremum::Kind::Attained ? a : b;
}

Extremum upper_of(const Extremum& a, const Extremum& b)
{
    if (a.kind == Extremum::Kind::Infinite || b.kind == Extremum::Kind::Infinite) {
        return Extremum::infinite();
    }
    if (a.value != b.value) {
        return a.value > b.value ? a : b;
    }
    return a.kind == Extremum::Kind::Attained ? a : b;
}

Extremum endpoint_extremum(const Endpoint& e)
{
    if (!e.is_finite()) {
        return Extremum::infinite();
    }
    return e.closed ? Extremum::attained(e.value) : Extremum::not_attained(e.value);
}

/// Extreme of a point-sequence side, in line coordinates.
Extremum point_side_extreme(const detail::PointSeq& s, int sign)
{
    const GapList& g = sign > 0 ? s.right : s.left;
    const auto total = g.sum();
    if (!total) {
        return Extremum::infinite();
    }
    const Scalar v = sign > 0 ? s.anchor + *total : s.anchor - *total;
    return g.infinite() ? Extremum::not_attained(v) : Extremum::attained(v);
}

/// Outermost and innermost edge of an interval side; nullopt when the side has no interval.
struct SideEdges {
    Extremum outer;
    Extremum inner;
};

std::optional<SideEdges> interval_side_edges(const detail::IntervalSeqView& v, int sign)
{
    detail::IntervalWalker walk(v.side(sign), Limits{});
    if (!walk.advance()) {
        return std::nullopt;
    }
    const Interval first = walk.interval();
    SideEdges e;
    e.inner = endpoint_extremum(sign > 0 ? first.lo : first.hi);
    if (walk.infinite()) {
        if (!walk.limit_u()) {
            e.outer = Extremum::infinite();
        } else {
            e.outer = Extremum::not_attained(sign > 0 ? v.anchor + *walk.limit_u() : v.anchor - *walk.limit_u());
        }
        return e;
    }
    Interval last = first;
    while (walk.advance()) {
        last = walk.interval();
    }
    e.outer = endpoint_extremum(sign > 0 ? last.hi : last.lo);
    return e;
}

std::string validate_component(const Component& c)
{
    if (const auto* f = std::get_if<FinitePoints>(&c)) {
        if (f->points.empty()) {
            return "points: needs at least one value";
        }
        for (std::size_t i = 1; i < f->points.size(); ++i) {
            if (!(f->points[i - 1] < f->points[i])) {
                return "points: values must be strictly increasing";
            }
        }
        return {};
    }
    if (const auto* a = std::get_if<ArithmeticProgression>(&c)) {
        return a->step.sign() > 0 ? std::string() : "arith: step must be positive";
    }
    if (const auto* g = std::get_if<GapSequence>(&c)) {
        if (auto why = g->right.validate(false); !why.empty()) {
            return "gapseq right: " + why;
        }
        if (auto why = g->left.validate(false); !why.empty()) {
            return "gapseq left: " + why;
        }
        return {};
    }
    if (const auto* p = std::get_if<PeriodicIntervals>(&c)) {
        if (p->length.sign() <= 0) {
            return "periodic: length must be positive";
        }
        if (p->gap.sign() < 0) {
            return "periodic: gap must not be negative";
        }
        if (p->gap.is_zero() && p->topology != Topology::Open) {
            return "periodic: gap 0 is only allowed for open intervals";
        }
        return {};
    }
    if (const auto* s = std::get_if<IntervalSequence>(&c)) {
        const bool zero_gaps = s->topology == Topology::Open;
        for (const auto* l : {&s->len_right, &s->len_left}) {
            if (auto why = l->validate(false); !why.empty()) {
                return "intervalseq length: " + why;
            }
        }
        for (const auto* l : {&s->gap_right, &s->gap_left}) {
            if (auto why = l->validate(zero_gaps); !why.empty()) {
                return "intervalseq gap: " + why;
            }
        }
        if (s->len_right.empty() && s->len_left.empty()) {
            return "intervalseq: no interval";
        }
        if (s->len_right.empty() && !s->gap_right.empty()) {
            return "intervalseq: right gaps without right lengths";
        }
        return {};
    }
    if (const auto* l = std::get_if<IntervalList>(&c)) {
        if (l->intervals.empty()) {
            return "interval: needs at least one interval";
        }
        for (std::size_t i = 0; i < l->intervals.size(); ++i) {
            if (!l->intervals[i].valid() || !l->intervals[i].bounded()) {
                return "interval: " + l->intervals[i].str() + " must be a valid bounded interval";
            }
            if (i > 0 && (overlaps(l->intervals[i - 1], l->intervals[i]) ||
                          !lower_before(l->intervals[i - 1].lo, l->intervals[i].lo))) {
                return "interval: intervals must be sorted and disjoint";
            }
        }
        return {};
    }
    const auto& h = std::get<HalfLine>(c);
    if (!h.interval.valid() || h.interval.bounded()) {
        return "halfline: " + h.interval.str() + " must have an infinite side";
    }
    return {};
}

}  // namespace

std::string describe(const Component& c)
{
    if (const auto* f = std::get_if<FinitePoints>(&c)) {
        return "points: " + join_scalars(f->points, " ");
    }
    if (const auto* a = std::get_if<ArithmeticProgression>(&c)) {
        return "arith: anchor=" + a->anchor.str() + " step=" + a->step.str() + " dir=" + to_string(a->dir);
    }
    if (const auto* g = std::get_if<GapSequence>(&c)) {
        return "gapseq: anchor=" + g->anchor.str() + " right=" + g->right.str() + " left=" + g->left.str();
    }
    if (const auto* p = std::get_if<PeriodicIntervals>(&c)) {
        return "periodic: len=" + p->length.str() + " gap=" + p->gap.str() + " anchor=" + p->anchor.str() +
               " topo=" + to_string(p->topology) + " dir=" + to_string(p->dir);
    }
    if (const auto* s = std::get_if<IntervalSequence>(&c)) {
        return "intervalseq: anchor=" + s->anchor.str() + " lenr=" + s->len_right.str() + " gapr=" +
               s->gap_right.str() + " lenl=" + s->len_left.str() + " gapl=" + s->gap_left.str() +
               " topo=" + to_string(s->topology);
    }
    if (const auto* l = std::get_if<IntervalList>(&c)) {
        std::string out = "interval:";
        for (const auto& i : l->intervals) {
            out += " " + i.str();
        }
        return out;
    }
    return "halfline: " + std::get<HalfLine>(c).interval.str();
}

std::string SubspaceDescription::validate() const
{
    if (components.empty()) {
        return "the space has no components";
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (auto why = validate_component(components[i]); !why.empty()) {
            return "component " + std::to_string(i) + ": " + why;
        }
    }
    return {};
}

std::string SubspaceDescription::str() const
{
    std::string out;
    for (const auto& c : components) {
        out += describe(c) + "\n";
    }
    if (meta.declared_no_accumulation) {
        out += "meta: no-accum\n";
    }
    for (const auto& p : meta.accumulation_points) {
        out += "meta: accum=" + p.str() + "\n";
    }
    if (meta.below) {
        out += "meta: bounded-below=" + bound_text(*meta.below) + "\n";
    }
    if (meta.above) {
        out += "meta: bounded-above=" + bound_text(*meta.above) + "\n";
    }
    return out;
}

SubspaceDescription make_space(std::vector<Component> components)
{
    SubspaceDescription s;
    s.components = std::move(components);
    return s;
}

namespace {

Component negate_component(const Component& c)
{
    if (const auto* f = std::get_if<FinitePoints>(&c)) {
        FinitePoints out;
        for (auto it = f->points.rbegin(); it != f->points.rend(); ++it) {
            out.points.push_back(-*it);
        }
        return out;
    }
    if (const auto* a = std::get_if<ArithmeticProgression>(&c)) {
        return ArithmeticProgression{-a->anchor, a->step, mirrored(a->dir)};
    }
    if (const auto* g = std::get_if<GapSequence>(&c)) {
        return GapSequence{-g->anchor, g->left, g->right};
    }
    if (const auto* p = std::get_if<PeriodicIntervals>(&c)) {
        return PeriodicIntervals{p->length, p->gap, -p->anchor - p->length, mirrored(p->topology), mirrored(p->dir)};
    }
    if (const auto* s = std::get_if<IntervalSequence>(&c)) {
        IntervalSequence out;
        out.topology = mirrored(s->topology);
        if (s->len_right.empty()) {
            out.anchor = -s->anchor + s->gap_left.at(1);
            out.len_right = s->len_left;
            out.gap_right = s->gap_left.dropped_first();
            return out;
        }
        const Scalar first = s->len_right.at(1);
        out.anchor = -s->anchor - first;
        out.len_right = s->len_left.with_front(first);
        out.gap_right = s->gap_left;
        out.len_left = s->len_right.dropped_first();
        out.gap_left = s->gap_right;
        return out;
    }
    if (const auto* l = std::get_if<IntervalList>(&c)) {
        IntervalList out;
        for (auto it = l->intervals.rbegin(); it != l->intervals.rend(); ++it) {
            out.intervals.push_back(negate(*it));
        }
        return out;
    }
    return HalfLine{negate(std::get<HalfLine>(c).interval)};
}

std::optional<BoundDeclaration> negate_bound(const std::optional<BoundDeclaration>& b)
{
    if (!b) {
        return std::nullopt;
    }
    return BoundDeclaration{b->kind, -b->at};
}

}  // namespace

SubspaceDescription negate(const SubspaceDescription& space)
{
    SubspaceDescription out;
    for (const auto& c : space.components) {
        out.components.push_back(negate_component(c));
    }
    out.meta.declared_no_accumulation = space.meta.declared_no_accumulation;
    for (const auto& p : space.meta.accumulation_points) {
        out.meta.accumulation_points.push_back(-p);
    }
    out.meta.below = negate_bound(space.meta.above);
    out.meta.above = negate_bound(space.meta.below);
    return out;
}

// ---- bounds and hull ----------------------------------------------------------------

Bounds component_bounds(const Component& c)
{
    if (const auto seq = detail::point_view(c)) {
        return {point_side_extreme(*seq, -1), point_side_extreme(*seq, 1)};
    }
    if (const auto view = detail::interval_view(c)) {
        const auto right = interval_side_edges(*view, 1);
        const auto left = interval_side_edges(*view, -1);
        Bounds b;
        b.below = left ? left->outer : right->inner;
        b.above = right ? right->outer : left->inner;
        return b;
    }
    if (const auto* l = std::get_if<IntervalList>(&c)) {
        return {endpoint_extremum(l->intervals.front().lo), endpoint_extremum(l->intervals.back().hi)};
    }
    const auto& h = std::get<HalfLine>(c).interval;
    return {endpoint_extremum(h.lo), endpoint_extremum(h.hi)};
}

Bounds is_bounded(const SubspaceDescription& space)
{
    Bounds out = component_bounds(space.components.front());
    for (std::size_t i = 1; i < space.components.size(); ++i) {
        const Bounds b = component_bounds(space.components[i]);
        out.below = lower_of(out.below, b.below);
        out.above = upper_of(out.above, b.above);
    }
    return out;
}

Interval hull(const SubspaceDescription& space)
{
    if (space.components.empty()) {
        throw Error(ErrorKind::PreconditionFailed, "hull of an empty space");
    }
    const Bounds b = is_bounded(space);
    const auto side = [](const Extremum& e, bool lower) {
        if (e.kind == Extremum::Kind::Infinite) {
            return lower ? Endpoint::neg_inf() : Endpoint::pos_inf();
        }
        return Endpoint::finite(e.value, e.kind == Extremum::Kind::Attained);
    };
    return Interval{side(b.below, true), side(b.above, false)};
}

SubspaceDescription as_space(const Interval& interval)
{
    if (interval.degenerate()) {
        return make_space({FinitePoints{{interval.lo.value}}});
    }
    if (interval.bounded()) {
        return make_space({IntervalList{{interval}}});
    }
    return make_space({HalfLine{interval}});
}

bool has_intervals(const SubspaceDescription& space)
{
    return std::any_of(space.components.begin(), space.components.end(),
                       [](const Component& c) { return !is_discrete(c); });
}

std::vector<Scalar> accumulation_points(const SubspaceDescription& space)
{
    std::vector<Scalar> out;
    for (const auto& c : space.components) {
        if (const auto seq = detail::point_view(c)) {
            for (const int sign : {1, -1}) {
                const Extremum e = point_side_extreme(*seq, sign);
                if (e.kind == Extremum::Kind::NotAttained) {
                    out.push_back(e.value);
                }
            }
        } else if (const auto view = detail::interval_view(c)) {
            for (const int sign : {1, -1}) {
                detail::IntervalWalker walk(view->side(sign), Limits{});
                if (walk.limit_u()) {
                    out.push_back(sign > 0 ? view->anchor + *walk.limit_u() : view->anchor - *walk.limit_u());
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_locally_finite(const SubspaceDescription& space)
{
    return !has_intervals(space) && accumulation_points(space).empty();
}

std::optional<GapSequence> discrete_normal_form(const SubspaceDescription& space)
{
    if (space.components.empty() || has_intervals(space)) {
        return std::nullopt;
    }
    struct Part {
        detail::PointSeq seq;
        Bounds bounds;
    };
    std::vector<Part> parts;
    for (const auto& c : space.components) {
        parts.push_back({*detail::point_view(c), component_bounds(c)});
    }
    if (parts.size() == 1) {
        return GapSequence{parts[0].seq.anchor, parts[0].seq.right, parts[0].seq.left};
    }
    for (const auto& p : parts) {
        if (!p.bounds.bounded_below() && !p.bounds.bounded_above()) {
            return std::nullopt;
        }
    }
    std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) {
        if (!a.bounds.bounded_below()) {
            return b.bounds.bounded_below();
        }
        return b.bounds.bounded_below() && a.bounds.below.value < b.bounds.below.value;
    });
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Bounds& b = parts[i].bounds;
        const bool first = i == 0;
        const bool last = i + 1 == parts.size();
        if ((!first && b.below.kind != Extremum::Kind::Attained) ||
            (!last && b.above.kind != Extremum::Kind::Attained)) {
            return std::nullopt;
        }
        if (!last && !(b.above.value < parts[i + 1].bounds.below.value)) {
            return std::nullopt;
        }
    }

    const auto& head = parts.front().seq;
    GapSequence out{head.anchor, {head.right.prefix, std::nullopt}, head.left};
    Scalar cursor = head.anchor + head.right.sum().value_or(Scalar(0));
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto& s = parts[i].seq;
        std::vector<Scalar> pts;
        Scalar p = s.anchor;
        for (std::uint64_t j = 1; s.left.has(j); ++j) {
            p -= s.left.at(j);
            pts.push_back(p);
        }
        std::reverse(pts.begin(), pts.end());
        pts.push_back(s.anchor);
        for (const Scalar& q : pts) {
            out.right.prefix.push_back(q - cursor);
            cursor = q;
        }
        out.right.prefix.insert(out.right.prefix.end(), s.right.prefix.begin(), s.right.prefix.end());
        out.right.tail = s.right.tail;
        for (const Scalar& g : s.right.prefix) {
            cursor += g;
        }
    }
    return out;
}

}  // namespace plasti
