#include <algorithm>
#include <sstream>

#include "maps_detail.hpp"
#include "plasti/maps.hpp"

namespace plasti {

namespace {

using detail::Segments;

struct Corner {
    Scalar x;
    bool open = false;
    int inward = 0;  // direction that moves an open corner into its piece
};

std::vector<Corner> corners(const AffinePiece& p, bool with_center)
{
    if (p.dom.degenerate()) {
        return {Corner{p.dom.lo.value, false, 0}};
    }
    std::vector<Corner> out{{p.dom.lo.value, !p.dom.lo.closed, 1}, {p.dom.hi.value, !p.dom.hi.closed, -1}};
    if (with_center) {
        out.push_back({p.dom.midpoint(), false, 0});
    }
    return out;
}

Scalar settle(const Corner& c, const AffinePiece& p, const Scalar& eps)
{
    if (!c.open) {
        return c.x;
    }
    const Scalar step = min(eps, p.dom.length() / Scalar(2));
    return c.inward > 0 ? c.x + step : c.x - step;
}

/// Two interior points of a non-degenerate piece.
std::pair<Scalar, Scalar> inner_pair(const AffinePiece& p)
{
    const Scalar q = p.dom.length() / Scalar(4);
    return {p.dom.lo.value + q, p.dom.hi.value - q};
}

Scalar preimage(const AffinePiece& p, const Scalar& y)
{
    if (p.dom.degenerate() || p.slope.is_zero()) {
        return p.dom.degenerate() || p.dom.lo.closed ? p.dom.lo.value : p.dom.midpoint();
    }
    return (y - p.intercept) / p.slope;
}

Scalar some_point(const Interval& i)
{
    if (i.degenerate() || i.lo.closed) {
        return i.lo.value;
    }
    return i.midpoint();
}

Witness pair_witness(WitnessKind kind, const AffinePiece& p, const Scalar& x, const AffinePiece& q, const Scalar& y)
{
    Witness w;
    w.kind = kind;
    w.points = {x, y};
    w.images = {p.at(x), q.at(y)};
    return w;
}

CheckReport start(const char* name, const Window& window, const Segments& seg)
{
    CheckReport rep;
    rep.check = name;
    rep.window = window;
    for (const Witness& w : seg.failures) {
        rep.witnesses.push_back(w);
        rep.verdict = Verdict::Fail;
    }
    for (const Truncation& t : seg.mat.truncations) {
        rep.notes.push_back("points in " + t.region().str() + " near " + t.limit.str() + " were not enumerated");
    }
    return rep;
}

void finish(CheckReport& rep, std::size_t violations, const CheckOptions& opt)
{
    std::stable_sort(rep.witnesses.begin(), rep.witnesses.end(), [](const Witness& a, const Witness& b) {
        return std::lexicographical_compare(a.points.begin(), a.points.end(), b.points.begin(), b.points.end());
    });
    if (rep.witnesses.size() > opt.max_witnesses) {
        rep.witnesses.resize(opt.max_witnesses);
    }
    if (violations > rep.witnesses.size()) {
        rep.notes.push_back(std::to_string(violations) + " violations, first " + std::to_string(rep.witnesses.size()) +
                            " shown");
    }
    if (!rep.witnesses.empty() && rep.verdict == Verdict::Pass) {
        rep.verdict = Verdict::Fail;
    }
}

/// Walks all cross-piece corner pairs; `fn(i, a, j, b, excess)` with excess = |dphi| - dx at the corners.
template <class Fn>
void cross_corners(const std::vector<AffinePiece>& pieces, bool with_center, Fn&& fn)
{
    std::vector<std::vector<Corner>> cs;
    cs.reserve(pieces.size());
    for (const AffinePiece& p : pieces) {
        cs.push_back(corners(p, with_center));
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            for (const Corner& a : cs[i]) {
                for (const Corner& b : cs[j]) {
                    const Scalar excess = (pieces[j].at(b.x) - pieces[i].at(a.x)).abs() - (b.x - a.x);
                    if (!fn(i, a, j, b, excess)) {
                        return;
                    }
                }
            }
        }
    }
}

std::uint64_t pair_count(std::size_t n) { return static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2; }

}  // namespace

std::string to_string(WitnessKind k)
{
    switch (k) {
    case WitnessKind::Expansion: return "expansion";
    case WitnessKind::Contraction: return "contraction";
    case WitnessKind::Escape: return "escape";
    case WitnessKind::Collision: return "collision";
    case WitnessKind::RoundTrip: return "round-trip";
    case WitnessKind::Order: return "order";
    case WitnessKind::Undefined: return "undefined";
    }
    return "?";
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::InjectiveOnly: return "injective-only certificate";
    }
    return "?";
}

Scalar Witness::distance() const { return dist(points.at(0), points.at(1)); }
Scalar Witness::image_distance() const { return dist(images.at(0), images.at(1)); }

const Witness* CheckReport::first(WitnessKind kind) const
{
    for (const Witness& w : witnesses) {
        if (w.kind == kind) {
            return &w;
        }
    }
    return nullptr;
}

std::string CheckReport::str() const
{
    std::ostringstream os;
    os << "check: " << check << "\nverdict: " << to_string(verdict) << "\nwindow: " << window.str()
       << "\npairs checked: " << pairs_checked << '\n';
    for (const Witness& w : witnesses) {
        os << "witness " << to_string(w.kind) << ':';
        for (std::size_t i = 0; i < w.points.size(); ++i) {
            os << ' ' << w.points[i];
            if (i < w.images.size()) {
                os << "->" << w.images[i];
            }
        }
        if (w.points.size() == 2 && w.images.size() == 2) {
            os << " d=" << w.distance() << " d'=" << w.image_distance();
        }
        if (!w.note.empty()) {
            os << " (" << w.note << ')';
        }
        os << '\n';
    }
    for (const std::string& n : notes) {
        os << "note: " << n << '\n';
    }
    return os.str();
}

CheckReport check_endomorphism(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                               const CheckOptions& opt)
{
    const Segments seg = detail::segments(map, space, window, opt.limits);
    CheckReport rep = start("endomorphism", window, seg);
    std::size_t violations = 0;
    for (const AffinePiece& p : seg.pieces) {
        ++rep.pairs_checked;
        if (auto y = first_missing(space, p.image(), opt.limits)) {
            ++violations;
            Witness w;
            w.kind = WitnessKind::Escape;
            w.points = {preimage(p, *y)};
            w.images = {*y};
            rep.witnesses.push_back(std::move(w));
        }
    }
    finish(rep, violations, opt);
    return rep;
}

CheckReport check_nonexpansive(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                               const CheckOptions& opt)
{
    const Segments seg = detail::segments(map, space, window, opt.limits);
    CheckReport rep = start("nonexpansive", window, seg);
    const auto& ps = seg.pieces;
    std::size_t violations = 0;
    for (const AffinePiece& p : ps) {
        if (!p.dom.degenerate()) {
            ++rep.pairs_checked;
            if (p.slope.abs() > Scalar(1)) {
                ++violations;
                const auto [x, y] = inner_pair(p);
                rep.witnesses.push_back(pair_witness(WitnessKind::Expansion, p, x, p, y));
            }
        }
    }
    rep.pairs_checked += pair_count(ps.size());
    cross_corners(ps, false, [&](std::size_t i, const Corner& a, std::size_t j, const Corner& b, const Scalar& excess) {
        if (excess.sign() > 0) {
            ++violations;
            if (rep.witnesses.size() < opt.max_witnesses * 4) {
                const Scalar eps = excess / (Scalar(2) * (Scalar(2) + ps[i].slope.abs() + ps[j].slope.abs()));
                rep.witnesses.push_back(pair_witness(WitnessKind::Expansion, ps[i], settle(a, ps[i], eps), ps[j],
                                                     settle(b, ps[j], eps)));
            }
        }
        return true;
    });
    finish(rep, violations, opt);
    return rep;
}

CheckReport check_isometry(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                           const CheckOptions& opt)
{
    const Segments seg = detail::segments(map, space, window, opt.limits);
    CheckReport rep = start("isometry", window, seg);
    const auto& ps = seg.pieces;
    std::size_t violations = 0;
    for (const AffinePiece& p : ps) {
        if (!p.dom.degenerate()) {
            ++rep.pairs_checked;
            const Scalar s = p.slope.abs();
            if (s != Scalar(1)) {
                ++violations;
                const auto [x, y] = inner_pair(p);
                rep.witnesses.push_back(
                    pair_witness(s < Scalar(1) ? WitnessKind::Contraction : WitnessKind::Expansion, p, x, p, y));
            }
        }
    }
    rep.pairs_checked += pair_count(ps.size());
    cross_corners(ps, true, [&](std::size_t i, const Corner& a, std::size_t j, const Corner& b, const Scalar& excess) {
        if (!excess.is_zero()) {
            ++violations;
            if (rep.witnesses.size() < opt.max_witnesses * 4) {
                const Scalar eps = excess.abs() / (Scalar(2) * (Scalar(2) + ps[i].slope.abs() + ps[j].slope.abs()));
                rep.witnesses.push_back(
                    pair_witness(excess.sign() < 0 ? WitnessKind::Contraction : WitnessKind::Expansion, ps[i],
                                 settle(a, ps[i], eps), ps[j], settle(b, ps[j], eps)));
            }
        }
        return true;
    });
    finish(rep, violations, opt);
    return rep;
}

LipschitzBound lipschitz_upper(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                               const CheckOptions& opt)
{
    const Segments seg = detail::segments(map, space, window, opt.limits);
    if (!seg.failures.empty()) {
        throw Error(ErrorKind::OutsideDomain, "map undefined at " + seg.failures.front().points.front().str());
    }
    const auto& ps = seg.pieces;
    const bool continuum = std::any_of(ps.begin(), ps.end(), [](const AffinePiece& p) { return !p.dom.degenerate(); });
    if (ps.size() < 2 && !continuum) {
        throw Error(ErrorKind::DegenerateSpace, "fewer than two points in window " + window.str());
    }
    LipschitzBound out;
    out.value = Scalar(0);
    out.attained = false;
    const auto offer = [&](const Scalar& ratio, const Scalar& x, const Scalar& y, bool attained) {
        if (ratio > out.value || (ratio == out.value && attained && !out.attained)) {
            out.value = ratio;
            out.attained = attained;
            out.pair = attained ? std::optional(std::pair(x, y)) : std::nullopt;
        }
    };
    for (const AffinePiece& p : ps) {
        if (!p.dom.degenerate()) {
            const auto [x, y] = inner_pair(p);
            offer(p.slope.abs(), x, y, true);
        }
    }
    cross_corners(ps, false, [&](std::size_t i, const Corner& a, std::size_t j, const Corner& b, const Scalar&) {
        const Scalar num = (ps[j].at(b.x) - ps[i].at(a.x)).abs();
        const Scalar den = b.x - a.x;
        if (den.is_zero()) {
            // Touching pieces: a jump makes the quotient unbounded, otherwise slopes dominate.
            if (!num.is_zero()) {
                out.unbounded = true;
                out.pair.reset();
                return false;
            }
            return true;
        }
        offer(num / den, a.x, b.x, !a.open && !b.open);
        return true;
    });
    return out;
}

CheckReport check_bijection(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                            const CheckOptions& opt)
{
    const Segments seg = detail::segments(map, space, window, opt.limits);
    CheckReport rep = start("bijection", window, seg);
    const auto& ps = seg.pieces;
    std::size_t violations = 0;
    rep.pairs_checked = pair_count(ps.size());

    for (const AffinePiece& p : ps) {
        if (!p.dom.degenerate() && p.slope.is_zero()) {
            ++violations;
            const auto [x, y] = inner_pair(p);
            rep.witnesses.push_back(pair_witness(WitnessKind::Collision, p, x, p, y));
        }
    }
    std::vector<std::size_t> order(ps.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::vector<Interval> images;
    images.reserve(ps.size());
    for (const AffinePiece& p : ps) {
        images.push_back(p.image());
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lower_before(images[a].lo, images[b].lo); });
    std::optional<std::size_t> reach;
    for (const std::size_t k : order) {
        if (reach) {
            if (auto both = intersect(images[*reach], images[k])) {
                ++violations;
                const Scalar y = some_point(*both);
                Scalar x1 = preimage(ps[*reach], y);
                Scalar x2 = preimage(ps[k], y);
                if (x2 < x1) {
                    std::swap(x1, x2);
                }
                Witness w;
                w.kind = WitnessKind::Collision;
                w.points = {x1, x2};
                w.images = {y, y};
                rep.witnesses.push_back(std::move(w));
            }
        }
        if (!reach || upper_before(images[*reach].hi, images[k].hi)) {
            reach = k;
        }
    }

    if (!map.has_inverse()) {
        finish(rep, violations, opt);
        if (rep.verdict == Verdict::Pass) {
            rep.verdict = Verdict::InjectiveOnly;
            rep.notes.push_back("no inverse declared; surjectivity not certified");
        }
        return rep;
    }

    const MapDescription& inv = map.inverse();
    const auto round_trip = [&](const MapDescription& second, const AffinePiece& p, const char* label) {
        std::vector<AffinePiece> back;
        try {
            back = pieces_on(second, space, p.image(), opt.limits);
        } catch (const Error& e) {
            ++violations;
            Witness w;
            w.kind = WitnessKind::RoundTrip;
            w.points = {some_point(p.dom)};
            w.images = {p.at(w.points[0])};
            w.note = std::string(label) + ": " + e.what();
            rep.witnesses.push_back(std::move(w));
            return;
        }
        for (const AffinePiece& q : back) {
            const bool identity = p.dom.degenerate()
                                      ? q.at(p.at(p.dom.lo.value)) == p.dom.lo.value
                                      : q.slope * p.slope == Scalar(1) && q.slope * p.intercept + q.intercept == Scalar(0);
            if (identity) {
                continue;
            }
            ++violations;
            const Scalar x = p.dom.degenerate() ? p.dom.lo.value : preimage(p, some_point(q.dom));
            Witness w;
            w.kind = WitnessKind::RoundTrip;
            w.points = {x};
            w.images = {p.at(x), q.at(p.at(x))};
            w.note = label;
            rep.witnesses.push_back(std::move(w));
        }
    };
    for (const AffinePiece& p : ps) {
        round_trip(inv, p, "inverse after map");
    }
    // Surjectivity: every window point y comes back from its inverse image.
    for (const AffinePiece& p : ps) {
        std::vector<AffinePiece> pre;
        try {
            pre = pieces_on(inv, space, p.dom, opt.limits);
        } catch (const Error& e) {
            ++violations;
            Witness w;
            w.kind = WitnessKind::RoundTrip;
            w.points = {some_point(p.dom)};
            w.note = std::string("inverse: ") + e.what();
            rep.witnesses.push_back(std::move(w));
            continue;
        }
        for (const AffinePiece& q : pre) {
            round_trip(map, q, "map after inverse");
        }
    }
    finish(rep, violations, opt);
    return rep;
}

CheckReport check_between_preservation(const MapDescription& map, const SubspaceDescription& space,
                                       const Window& window, const CheckOptions& opt)
{
    const Segments seg = detail::segments(map, space, window, opt.limits);
    CheckReport rep = start("between", window, seg);
    std::vector<Scalar> xs;
    std::vector<Scalar> ys;
    for (const AffinePiece& p : seg.pieces) {
        const auto push = [&](const Scalar& x) {
            xs.push_back(x);
            ys.push_back(p.at(x));
        };
        if (p.dom.degenerate()) {
            push(p.dom.lo.value);
            continue;
        }
        const Scalar q = p.dom.length() / Scalar(4);
        if (p.dom.lo.closed) {
            push(p.dom.lo.value);
        }
        for (int k = 1; k <= 3; ++k) {
            push(p.dom.lo.value + q * Scalar(k));
        }
        if (p.dom.hi.closed) {
            push(p.dom.hi.value);
        }
    }
    const std::size_t n = xs.size();
    rep.pairs_checked = n >= 3 ? static_cast<std::uint64_t>(n - 2) : 0;
    const auto between = [&](std::size_t a, std::size_t b, std::size_t c) {
        return (ys[a] < ys[b] && ys[b] < ys[c]) || (ys[a] > ys[b] && ys[b] > ys[c]);
    };
    std::size_t violations = 0;
    if (n >= 3) {
        // Betweenness on a chain holds exactly when the images are strictly monotone.
        const int orientation = (ys[1] - ys[0]).sign();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if ((ys[i + 1] - ys[i]).sign() == orientation && orientation != 0) {
                continue;
            }
            std::optional<std::size_t> first;
            if (i + 2 < n && !between(i, i + 1, i + 2)) {
                first = i;
            } else if (i > 0 && !between(i - 1, i, i + 1)) {
                first = i - 1;
            }
            if (!first) {
                continue;
            }
            ++violations;
            Witness w;
            w.kind = WitnessKind::Order;
            for (std::size_t k = *first; k < *first + 3; ++k) {
                w.points.push_back(xs[k]);
                w.images.push_back(ys[k]);
            }
            rep.witnesses.push_back(std::move(w));
        }
    }
    finish(rep, violations, opt);
    return rep;
}

}  // namespace plasti
