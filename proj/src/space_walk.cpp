#include <algorithm>
#include <utility>

#include "plasti/error.hpp"
#include "space_detail.hpp"

namespace plasti {
namespace detail {

namespace {

void check_bits(const Scalar& partial, const Limits& limits)
{
    if (partial.bits() > limits.max_bits) {
        throw Error(ErrorKind::CapExceeded, "exact partial sum needs more than " + std::to_string(limits.max_bits) +
                                                " bits; narrow the window");
    }
}

/// Sum of tail terms t0+1 .. t0+k when the rule has closed-form partial sums.
std::optional<Scalar> tail_span(const GapList& g, std::uint64_t t0, std::uint64_t k)
{
    if (!g.tail) {
        return std::nullopt;
    }
    const auto a = g.tail->partial(t0);
    const auto b = g.tail->partial(t0 + k);
    if (!a || !b) {
        return std::nullopt;
    }
    return *b - *a;
}

/// Largest k with fits(k), for a predicate that holds on an initial segment including 0.
template <typename Fits>
std::uint64_t last_fitting(Fits fits)
{
    constexpr std::uint64_t ceiling = std::uint64_t{1} << 62;
    std::uint64_t lo = 0;
    std::uint64_t hi = 1;
    while (hi < ceiling && fits(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

std::optional<PointSeq> point_view(const Component& c)
{
    if (const auto* f = std::get_if<FinitePoints>(&c)) {
        PointSeq s{f->points.front(), {}, {}};
        for (std::size_t i = 1; i < f->points.size(); ++i) {
            s.right.prefix.push_back(f->points[i] - f->points[i - 1]);
        }
        return s;
    }
    if (const auto* a = std::get_if<ArithmeticProgression>(&c)) {
        PointSeq s{a->anchor, {}, {}};
        if (a->dir != Direction::Left) {
            s.right.tail = GapRule::constant(a->step);
        }
        if (a->dir != Direction::Right) {
            s.left.tail = GapRule::constant(a->step);
        }
        return s;
    }
    if (const auto* g = std::get_if<GapSequence>(&c)) {
        return PointSeq{g->anchor, g->right, g->left};
    }
    return std::nullopt;
}

std::optional<IntervalSeqView> interval_view(const Component& c)
{
    if (const auto* p = std::get_if<PeriodicIntervals>(&c)) {
        IntervalSeqView v;
        v.anchor = p->anchor;
        v.topology = p->topology;
        if (p->dir == Direction::Left) {
            v.len_right.prefix = {p->length};
        } else {
            v.len_right.tail = GapRule::constant(p->length);
            v.gap_right.tail = GapRule::constant(p->gap);
        }
        if (p->dir != Direction::Right) {
            v.len_left.tail = GapRule::constant(p->length);
            v.gap_left.tail = GapRule::constant(p->gap);
        }
        return v;
    }
    if (const auto* s = std::get_if<IntervalSequence>(&c)) {
        return IntervalSeqView{s->anchor, s->len_right, s->gap_right, s->len_left, s->gap_left, s->topology};
    }
    return std::nullopt;
}

Interval oriented_interval(const Scalar& a, const Scalar& b, Topology topology)
{
    return Interval::make(a, lo_closed(topology), b, hi_closed(topology));
}

PointWalker::PointWalker(PointSide side, const Limits& limits) : side_(std::move(side)), limits_(limits)
{
    if (side_.gaps.infinite()) {
        limit_u_ = side_.gaps.sum();
    }
}

bool PointWalker::advance()
{
    if (!side_.gaps.has(j_ + 1)) {
        return false;
    }
    if (++steps_ > limits_.max_steps) {
        throw Error(ErrorKind::RuleDivergence, "gap rule " + side_.gaps.str() + " did not reach the target within " +
                                                   std::to_string(limits_.max_steps) + " steps");
    }
    ++j_;
    u_ += side_.gaps.at(j_);
    check_bits(u_, limits_);
    return true;
}

void PointWalker::skip_below(const Scalar& target_u)
{
    if (limit_u_ && *limit_u_ <= target_u) {
        return;
    }
    const GapList& g = side_.gaps;
    while (j_ < g.prefix.size() && u_ + g.prefix[j_] < target_u) {
        u_ += g.prefix[j_];
        ++j_;
    }
    if (j_ < g.prefix.size() || !tail_span(g, 0, 1)) {
        return;
    }
    // Alternating rules may have partial sums only for some n; an undefined span does not fit.
    const std::uint64_t t0 = j_ - g.prefix.size();
    const std::uint64_t k = last_fitting([&](std::uint64_t k) {
        const auto span = tail_span(g, t0, k);
        return span && u_ + *span < target_u;
    });
    if (k == 0) {
        return;
    }
    u_ += *tail_span(g, t0, k);
    j_ += k;
}

Scalar PointWalker::position() const { return side_.sign > 0 ? side_.start + u_ : side_.start - u_; }

IntervalWalker::IntervalWalker(IntervalSide side, const Limits& limits) : side_(std::move(side)), limits_(limits)
{
    if (infinite()) {
        const auto a = side_.lens.sum();
        const auto b = side_.gaps.sum();
        if (a && b) {
            limit_u_ = *a + *b;
        }
    }
}

bool IntervalWalker::available(std::uint64_t j) const
{
    if (!side_.lens.has(j)) {
        return false;
    }
    const std::uint64_t gi = side_.gap_first ? j : j - 1;
    return gi == 0 || side_.gaps.has(gi);
}

Scalar IntervalWalker::gap_before(std::uint64_t j) const
{
    const std::uint64_t gi = side_.gap_first ? j : j - 1;
    return gi == 0 ? Scalar(0) : side_.gaps.at(gi);
}

bool IntervalWalker::advance()
{
    if (!available(j_ + 1)) {
        return false;
    }
    if (++steps_ > limits_.max_steps) {
        throw Error(ErrorKind::RuleDivergence, "interval rules did not reach the target within " +
                                                   std::to_string(limits_.max_steps) + " steps");
    }
    ++j_;
    near_ = far_ + gap_before(j_);
    far_ = near_ + side_.lens.at(j_);
    check_bits(far_, limits_);
    return true;
}

void IntervalWalker::skip_below(const Scalar& target_u)
{
    if (j_ == 0 || (limit_u_ && *limit_u_ <= target_u)) {
        return;
    }
    const GapList& lens = side_.lens;
    const GapList& gaps = side_.gaps;
    const std::uint64_t next_gap = side_.gap_first ? j_ + 1 : j_;
    if (j_ < lens.prefix.size() || next_gap <= gaps.prefix.size() || !tail_span(lens, 0, 1) ||
        !tail_span(gaps, 0, 1)) {
        return;
    }
    const std::uint64_t tl = j_ - lens.prefix.size();
    const std::uint64_t tg = next_gap - 1 - gaps.prefix.size();
    const auto span = [&](std::uint64_t k) -> std::optional<Scalar> {
        const auto a = tail_span(lens, tl, k);
        const auto b = tail_span(gaps, tg, k);
        if (!a || !b) {
            return std::nullopt;
        }
        return *a + *b;
    };
    const std::uint64_t k = last_fitting([&](std::uint64_t k) {
        const auto s = span(k);
        return s && far_ + *s < target_u;
    });
    if (k == 0) {
        return;
    }
    far_ += *span(k);
    j_ += k;
    near_ = far_ - lens.at(j_);
}

Interval IntervalWalker::interval() const
{
    if (side_.sign > 0) {
        return oriented_interval(side_.start + near_, side_.start + far_, side_.topology);
    }
    return oriented_interval(side_.start - far_, side_.start - near_, side_.topology);
}

}  // namespace detail

using detail::IntervalWalker;
using detail::PointWalker;

namespace {

struct WalkRange {
    Scalar near;
    Scalar far;
};

WalkRange walk_range(const Scalar& start, int sign, const Window& w)
{
    if (sign > 0) {
        return {w.lo - start, w.hi - start};
    }
    return {start - w.hi, start - w.lo};
}

std::optional<Fragment> clip(const Interval& full, const Window& w, PointTag tag)
{
    const auto part = intersect(full, w.as_interval());
    if (!part) {
        return std::nullopt;
    }
    Fragment f{*part, false, false, tag};
    const Endpoint wlo = Endpoint::finite(w.lo, true);
    const Endpoint whi = Endpoint::finite(w.hi, true);
    f.lo_artificial = lower_before(full.lo, wlo);
    f.hi_artificial = upper_before(whi, full.hi);
    return f;
}

void enumerate_points(const detail::PointSeq& seq, std::size_t ci, const Window& w, const Limits& limits,
                      std::vector<std::pair<Scalar, PointTag>>& out, std::vector<Truncation>& truncs)
{
    if (w.contains(seq.anchor)) {
        out.emplace_back(seq.anchor, PointTag{ci, 0});
    }
    for (const int sign : {1, -1}) {
        PointWalker walk(seq.side(sign), limits);
        const WalkRange r = walk_range(seq.anchor, sign, w);
        if (r.far.sign() <= 0 || (walk.limit_u() && *walk.limit_u() <= r.near)) {
            continue;
        }
        walk.skip_below(r.near);
        std::size_t inside = 0;
        while (walk.advance()) {
            if (walk.u() > r.far) {
                break;
            }
            if (walk.u() >= r.near) {
                out.emplace_back(walk.position(), PointTag{ci, walk.index()});
                if (++inside >= limits.accumulation_cap && walk.limit_u()) {
                    const Scalar lim = sign > 0 ? seq.anchor + *walk.limit_u() : seq.anchor - *walk.limit_u();
                    truncs.push_back({lim, walk.position(), ci});
                    break;
                }
            }
        }
    }
}

void enumerate_intervals(const detail::IntervalSeqView& view, std::size_t ci, const Window& w, const Limits& limits,
                         std::vector<Fragment>& out, std::vector<Truncation>& truncs)
{
    for (const int sign : {1, -1}) {
        IntervalWalker walk(view.side(sign), limits);
        const WalkRange r = walk_range(view.anchor, sign, w);
        if (walk.limit_u() && *walk.limit_u() <= r.near) {
            continue;
        }
        walk.skip_below(r.near);
        std::size_t inside = 0;
        while (walk.advance()) {
            if (walk.near_u() > r.far) {
                break;
            }
            if (walk.far_u() < r.near) {
                continue;
            }
            if (auto f = clip(walk.interval(), w, PointTag{ci, walk.index()})) {
                out.push_back(std::move(*f));
                if (++inside >= limits.accumulation_cap && walk.limit_u()) {
                    const Scalar lim = sign > 0 ? view.anchor + *walk.limit_u() : view.anchor - *walk.limit_u();
                    const Scalar last = sign > 0 ? view.anchor + walk.far_u() : view.anchor - walk.far_u();
                    truncs.push_back({lim, last, ci});
                    break;
                }
            }
        }
    }
}

/// Index of the component member containing x.
std::optional<std::int64_t> find_in(const Component& c, const Scalar& x, const Limits& limits)
{
    if (const auto seq = detail::point_view(c)) {
        if (x == seq->anchor) {
            return 0;
        }
        const int sign = x > seq->anchor ? 1 : -1;
        const Scalar u = sign > 0 ? x - seq->anchor : seq->anchor - x;
        PointWalker walk(seq->side(sign), limits);
        if (walk.limit_u() && *walk.limit_u() <= u) {
            return std::nullopt;
        }
        walk.skip_below(u);
        while (walk.advance()) {
            if (walk.u() == u) {
                return walk.index();
            }
            if (walk.u() > u) {
                break;
            }
        }
        return std::nullopt;
    }
    if (const auto view = detail::interval_view(c)) {
        for (const int sign : {1, -1}) {
            const Scalar u = sign > 0 ? x - view->anchor : view->anchor - x;
            if (u.sign() < 0) {
                continue;
            }
            IntervalWalker walk(view->side(sign), limits);
            if (walk.limit_u() && *walk.limit_u() <= u) {
                continue;
            }
            walk.skip_below(u);
            while (walk.advance()) {
                if (walk.near_u() > u) {
                    break;
                }
                if (walk.interval().contains(x)) {
                    return walk.index();
                }
            }
        }
        return std::nullopt;
    }
    if (const auto* l = std::get_if<IntervalList>(&c)) {
        for (std::size_t i = 0; i < l->intervals.size(); ++i) {
            if (l->intervals[i].contains(x)) {
                return static_cast<std::int64_t>(i);
            }
        }
        return std::nullopt;
    }
    if (std::get<HalfLine>(c).interval.contains(x)) {
        return 0;
    }
    return std::nullopt;
}

/// Smallest member strictly greater than x, or the unattained infimum of those members.
std::optional<Extremum> component_successor(const detail::PointSeq& seq, const Scalar& x, const Limits& limits)
{
    if (x < seq.anchor) {
        const Scalar t = seq.anchor - x;
        PointWalker walk(seq.side(-1), limits);
        if (walk.limit_u() && *walk.limit_u() <= t) {
            return Extremum::not_attained(seq.anchor - *walk.limit_u());
        }
        walk.skip_below(t);
        Scalar last = walk.u();
        while (walk.advance() && walk.u() < t) {
            last = walk.u();
        }
        return Extremum::attained(seq.anchor - last);
    }
    const Scalar t = x - seq.anchor;
    PointWalker walk(seq.side(1), limits);
    if (walk.limit_u() && *walk.limit_u() <= t) {
        return std::nullopt;
    }
    walk.skip_below(t);
    while (walk.advance()) {
        if (walk.u() > t) {
            return Extremum::attained(walk.position());
        }
    }
    return std::nullopt;
}

Scalar partial_sum(const GapList& g, std::uint64_t n, const Limits& limits)
{
    Scalar s;
    const std::uint64_t explicit_terms = std::min<std::uint64_t>(n, g.prefix.size());
    for (std::uint64_t i = 0; i < explicit_terms; ++i) {
        s += g.prefix[i];
    }
    if (n <= g.prefix.size()) {
        return s;
    }
    const std::uint64_t rest = n - g.prefix.size();
    if (const auto closed = g.tail->partial(rest)) {
        return s + *closed;
    }
    if (rest > limits.max_steps) {
        throw Error(ErrorKind::RuleDivergence, "index " + std::to_string(n) + " exceeds the step budget");
    }
    for (std::uint64_t k = 1; k <= rest; ++k) {
        s += g.tail->at(k);
    }
    return s;
}

}  // namespace

Interval Truncation::region() const { return Interval::open(min(limit, last), max(limit, last)); }

bool Materialization::exact_between(const Scalar& a, const Scalar& b) const
{
    if (a == b) {
        return true;
    }
    const Interval gap = Interval::open(min(a, b), max(a, b));
    return std::none_of(truncations.begin(), truncations.end(),
                        [&](const Truncation& t) { return t.limit != t.last && overlaps(gap, t.region()); });
}

Materialization materialize(const SubspaceDescription& space, const Window& window, const Limits& limits)
{
    if (!(window.lo < window.hi)) {
        throw Error(ErrorKind::PreconditionFailed, "window " + window.str() + " is empty");
    }
    if (const std::string why = space.validate(); !why.empty()) {
        throw Error(ErrorKind::InvalidDescription, why);
    }
    Materialization m;
    m.window = window;
    std::vector<std::pair<Scalar, PointTag>> pts;
    for (std::size_t ci = 0; ci < space.components.size(); ++ci) {
        const Component& c = space.components[ci];
        if (const auto seq = detail::point_view(c)) {
            enumerate_points(*seq, ci, window, limits, pts, m.truncations);
        } else if (const auto view = detail::interval_view(c)) {
            enumerate_intervals(*view, ci, window, limits, m.fragments, m.truncations);
        } else if (const auto* l = std::get_if<IntervalList>(&c)) {
            for (std::size_t i = 0; i < l->intervals.size(); ++i) {
                if (auto f = clip(l->intervals[i], window, PointTag{ci, static_cast<std::int64_t>(i)})) {
                    m.fragments.push_back(std::move(*f));
                }
            }
        } else if (auto f = clip(std::get<HalfLine>(c).interval, window, PointTag{ci, 0})) {
            m.fragments.push_back(std::move(*f));
        }
    }

    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0 && pts[i].first == pts[i - 1].first) {
            throw Error(ErrorKind::OverlappingComponents, "components " + std::to_string(pts[i - 1].second.component) +
                                                              " and " + std::to_string(pts[i].second.component) +
                                                              " share the point " + pts[i].first.str());
        }
        m.points.push_back(pts[i].first);
        m.tags.push_back(pts[i].second);
    }

    std::sort(m.fragments.begin(), m.fragments.end(),
              [](const Fragment& a, const Fragment& b) { return lower_before(a.interval.lo, b.interval.lo); });
    for (std::size_t i = 1; i < m.fragments.size(); ++i) {
        if (overlaps(m.fragments[i - 1].interval, m.fragments[i].interval)) {
            throw Error(ErrorKind::OverlappingComponents,
                        m.fragments[i - 1].interval.str() + " meets " + m.fragments[i].interval.str());
        }
    }
    std::size_t fi = 0;
    for (const Scalar& p : m.points) {
        while (fi < m.fragments.size() && m.fragments[fi].interval.hi.value < p) {
            ++fi;
        }
        if (fi < m.fragments.size() && m.fragments[fi].interval.contains(p)) {
            throw Error(ErrorKind::OverlappingComponents,
                        "point " + p.str() + " lies in " + m.fragments[fi].interval.str());
        }
    }
    if (m.empty()) {
        throw Error(ErrorKind::EmptyWindow, "no point of the space lies in " + window.str());
    }
    return m;
}

bool contains(const SubspaceDescription& space, const Scalar& x, const Limits& limits)
{
    return locate(space, x, limits).has_value();
}

std::optional<PointTag> locate(const SubspaceDescription& space, const Scalar& x, const Limits& limits)
{
    for (std::size_t ci = 0; ci < space.components.size(); ++ci) {
        if (const auto idx = find_in(space.components[ci], x, limits)) {
            return PointTag{ci, *idx};
        }
    }
    return std::nullopt;
}

std::optional<Scalar> first_missing(const SubspaceDescription& space, const Interval& set, const Limits& limits)
{
    if (!set.bounded()) {
        throw Error(ErrorKind::PreconditionFailed, "membership of the unbounded set " + set.str() + " is not decided");
    }
    if (set.degenerate()) {
        return contains(space, set.lo.value, limits) ? std::nullopt : std::optional<Scalar>(set.lo.value);
    }
    std::vector<Interval> pieces;
    try {
        const Materialization m = materialize(space, Window(set.lo.value, set.hi.value), limits);
        for (const Fragment& f : m.fragments) {
            pieces.push_back(f.interval);
        }
        for (const Scalar& p : m.points) {
            pieces.push_back(Interval::point(p));
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyWindow) {
            throw;
        }
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Interval& a, const Interval& b) { return lower_before(a.lo, b.lo); });

    // Sweep a lower endpoint `cursor` across `set`; anything between the cursor and the next
    // piece is uncovered.
    Endpoint cursor = set.lo;
    const auto uncovered = [&](const Endpoint& until) -> std::optional<Scalar> {
        const auto rest = intersect(Interval{cursor, until}, set);
        if (!rest || !rest->valid()) {
            return std::nullopt;
        }
        return rest->lo.closed ? rest->lo.value : rest->midpoint();
    };
    for (const Interval& piece : pieces) {
        const Endpoint before = Endpoint::finite(piece.lo.value, !piece.lo.closed);
        if (lower_before(cursor, piece.lo)) {
            if (auto miss = uncovered(before)) {
                return miss;
            }
        }
        const Endpoint after = Endpoint::finite(piece.hi.value, !piece.hi.closed);
        if (lower_before(cursor, after)) {
            cursor = after;
        }
    }
    return uncovered(set.hi);
}

bool contains(const SubspaceDescription& space, const Interval& set, const Limits& limits)
{
    return !first_missing(space, set, limits).has_value();
}

std::optional<Scalar> point_at(const SubspaceDescription& space, std::size_t component, std::int64_t index,
                               const Limits& limits)
{
    if (component >= space.components.size()) {
        return std::nullopt;
    }
    const auto seq = detail::point_view(space.components[component]);
    if (!seq) {
        return std::nullopt;
    }
    if (index == 0) {
        return seq->anchor;
    }
    const GapList& g = index > 0 ? seq->right : seq->left;
    const auto n = static_cast<std::uint64_t>(index > 0 ? index : -index);
    if (!g.has(n)) {
        return std::nullopt;
    }
    const Scalar s = partial_sum(g, n, limits);
    return index > 0 ? seq->anchor + s : seq->anchor - s;
}

std::optional<Interval> interval_at(const SubspaceDescription& space, std::size_t component, std::int64_t index,
                                    const Limits& limits)
{
    if (component >= space.components.size()) {
        return std::nullopt;
    }
    const Component& c = space.components[component];
    if (const auto* l = std::get_if<IntervalList>(&c)) {
        if (index < 0 || static_cast<std::size_t>(index) >= l->intervals.size()) {
            return std::nullopt;
        }
        return l->intervals[static_cast<std::size_t>(index)];
    }
    if (const auto* h = std::get_if<HalfLine>(&c)) {
        return index == 0 ? std::optional<Interval>(h->interval) : std::nullopt;
    }
    const auto view = detail::interval_view(c);
    if (!view) {
        return std::nullopt;
    }
    if (index >= 0) {
        const auto j = static_cast<std::uint64_t>(index) + 1;
        if (!view->len_right.has(j) || (j > 1 && !view->gap_right.has(j - 1))) {
            return std::nullopt;
        }
        const Scalar near = partial_sum(view->len_right, j - 1, limits) + partial_sum(view->gap_right, j - 1, limits);
        const Scalar lo = view->anchor + near;
        return detail::oriented_interval(lo, lo + view->len_right.at(j), view->topology);
    }
    const auto j = static_cast<std::uint64_t>(-index);
    if (!view->len_left.has(j) || !view->gap_left.has(j)) {
        return std::nullopt;
    }
    const Scalar near = partial_sum(view->len_left, j - 1, limits) + partial_sum(view->gap_left, j, limits);
    const Scalar hi = view->anchor - near;
    return detail::oriented_interval(hi - view->len_left.at(j), hi, view->topology);
}

std::optional<Scalar> successor(const SubspaceDescription& space, const Scalar& x, const Limits& limits)
{
    std::optional<Extremum> best;
    for (const Component& c : space.components) {
        const auto seq = detail::point_view(c);
        if (!seq) {
            throw Error(ErrorKind::NotDiscrete, "successor needs a discrete space, found " + describe(c));
        }
        const auto cand = component_successor(*seq, x, limits);
        if (!cand) {
            continue;
        }
        if (!best || cand->value < best->value ||
            (cand->value == best->value && cand->kind == Extremum::Kind::Attained)) {
            best = cand;
        }
    }
    if (!best || best->kind != Extremum::Kind::Attained) {
        return std::nullopt;
    }
    return best->value;
}

std::optional<Scalar> predecessor(const SubspaceDescription& space, const Scalar& x, const Limits& limits)
{
    const auto s = successor(negate(space), -x, limits);
    return s ? std::optional<Scalar>(-*s) : std::nullopt;
}

}  // namespace plasti
