#include "plasti/maps.hpp"

#include <algorithm>
#include <sstream>

#include "maps_detail.hpp"

namespace plasti {

namespace {

Scalar some_point(const Interval& i)
{
    if (i.degenerate() || i.lo.closed) {
        return i.lo.value;
    }
    return i.midpoint();
}

std::string component_text(const std::optional<std::size_t>& c)
{
    return c ? std::to_string(*c + 1) : std::string("all");
}

void write_rules(std::ostringstream& os, const MapDescription& m, const std::string& prefix)
{
    if (m.mode == MapDescription::Mode::FirstMatch) {
        os << prefix << "mode: first-match\n";
    }
    for (const MapRule& r : m.rules) {
        os << prefix;
        if (const auto* t = std::get_if<TableRule>(&r)) {
            os << "table:";
            for (const auto& [k, v] : t->entries) {
                os << ' ' << k << "->" << v;
            }
        } else if (const auto* p = std::get_if<AffinePieceRule>(&r)) {
            os << "piece:";
            if (p->dom) {
                os << " dom=" << p->dom->str();
            }
            if (p->component) {
                os << " comp=" << *p->component + 1;
            }
            os << " slope=" << p->slope << " icpt=" << p->intercept;
        } else {
            const auto& s = std::get<IndexShiftRule>(r);
            os << "idxshift: comp=" << component_text(s.component) << " k=" << s.k;
        }
        os << '\n';
    }
}

std::vector<AffinePiece> rule_pieces(const MapRule& rule, const SubspaceDescription& space, const Interval& part,
                                     const PointTag& tag, const Limits& limits)
{
    std::vector<AffinePiece> out;
    if (const auto* t = std::get_if<TableRule>(&rule)) {
        for (const auto& [k, v] : t->entries) {
            if (part.contains(k)) {
                out.push_back({Interval::point(k), Scalar(0), v});
            }
        }
        return out;
    }
    if (const auto* p = std::get_if<AffinePieceRule>(&rule)) {
        if (p->component && *p->component != tag.component) {
            return out;
        }
        if (!p->dom) {
            out.push_back({part, p->slope, p->intercept});
        } else if (auto i = intersect(*p->dom, part)) {
            out.push_back({*i, p->slope, p->intercept});
        }
        return out;
    }
    const auto& s = std::get<IndexShiftRule>(rule);
    if (s.component && *s.component != tag.component) {
        return out;
    }
    if (s.k == 0) {
        out.push_back({part, Scalar(1), Scalar(0)});
        return out;
    }
    const std::int64_t target = tag.index + s.k;
    if (is_discrete(space.components[tag.component])) {
        if (auto y = point_at(space, tag.component, target, limits); y && part.degenerate()) {
            out.push_back({part, Scalar(0), *y});
        }
        return out;
    }
    const auto from = interval_at(space, tag.component, tag.index, limits);
    const auto to = interval_at(space, tag.component, target, limits);
    if (from && to && from->bounded() && to->bounded() && !from->degenerate()) {
        const Scalar slope = to->length() / from->length();
        out.push_back({part, slope, to->lo.value - slope * from->lo.value});
    }
    return out;
}

}  // namespace

// ---- MapDescription ------------------------------------------------------------------

const MapDescription& MapDescription::inverse() const
{
    if (!inverse_) {
        throw Error(ErrorKind::InverseMissing, "map has no declared inverse");
    }
    return *inverse_;
}

void MapDescription::set_inverse(MapDescription inv)
{
    inv.inverse_.reset();
    inverse_ = std::make_shared<const MapDescription>(std::move(inv));
}

MapDescription MapDescription::inverted() const
{
    MapDescription out = inverse();
    MapDescription self = *this;
    self.inverse_.reset();
    out.inverse_ = std::make_shared<const MapDescription>(std::move(self));
    return out;
}

std::string MapDescription::str() const
{
    std::ostringstream os;
    if (!name.empty()) {
        os << "# " << name << '\n';
    }
    write_rules(os, *this, "");
    if (inverse_) {
        write_rules(os, *inverse_, "inverse: ");
    }
    return os.str();
}

MapDescription MapDescription::identity() { return affine(Scalar(1), Scalar(0)); }

MapDescription MapDescription::table(std::vector<std::pair<Scalar, Scalar>> entries)
{
    MapDescription m;
    m.rules.emplace_back(TableRule{std::move(entries)});
    return m;
}

MapDescription MapDescription::affine(const Scalar& slope, const Scalar& intercept)
{
    MapDescription m;
    m.rules.emplace_back(AffinePieceRule{std::nullopt, std::nullopt, slope, intercept});
    if (!slope.is_zero()) {
        MapDescription inv;
        inv.rules.emplace_back(AffinePieceRule{std::nullopt, std::nullopt, slope.reciprocal(), -intercept / slope});
        m.set_inverse(std::move(inv));
    }
    return m;
}

MapDescription negate(const MapDescription& map)
{
    MapDescription out;
    out.mode = map.mode;
    out.name = map.name;
    for (const MapRule& r : map.rules) {
        if (const auto* t = std::get_if<TableRule>(&r)) {
            TableRule n;
            for (const auto& [k, v] : t->entries) {
                n.entries.emplace_back(-k, -v);
            }
            out.rules.emplace_back(std::move(n));
        } else if (const auto* p = std::get_if<AffinePieceRule>(&r)) {
            AffinePieceRule n = *p;
            if (n.dom) {
                n.dom = negate(*n.dom);
            }
            n.intercept = -p->intercept;
            out.rules.emplace_back(std::move(n));
        } else {
            IndexShiftRule n = std::get<IndexShiftRule>(r);
            n.k = -n.k;
            out.rules.emplace_back(n);
        }
    }
    if (map.has_inverse()) {
        out.set_inverse(negate(map.inverse()));
    }
    return out;
}

// ---- resolution ----------------------------------------------------------------------

namespace detail {

std::optional<Scalar> first_uncovered(const Interval& part, std::vector<Interval> parts)
{
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return lower_before(a.lo, b.lo); });
    // Everything left of `reach` is covered; `reach` itself is covered when closed.
    Endpoint reach = Endpoint::finite(part.lo.value, !part.lo.closed);
    for (const Interval& p : parts) {
        const bool joins = p.lo.value < reach.value || (p.lo.value == reach.value && (reach.closed || p.lo.closed));
        if (!joins) {
            return reach.closed ? (reach.value + p.lo.value) / Scalar(2) : reach.value;
        }
        if (upper_before(reach, p.hi)) {
            reach = p.hi;
        }
    }
    if (reach.value < part.hi.value) {
        return reach.closed ? (reach.value + part.hi.value) / Scalar(2) : reach.value;
    }
    if (reach.value == part.hi.value && part.hi.closed && !reach.closed) {
        return reach.value;
    }
    return std::nullopt;
}

Resolution resolve(const MapDescription& map, const SubspaceDescription& space, const Interval& part,
                   const Limits& limits)
{
    Resolution out;
    const Scalar probe = part.degenerate() ? part.lo.value : part.midpoint();
    const auto tag = locate(space, probe, limits);
    if (!tag) {
        out.failure = ErrorKind::OutsideDomain;
        out.at = probe;
        return out;
    }
    std::vector<Interval> claimed;
    for (const MapRule& rule : map.rules) {
        for (AffinePiece& piece : rule_pieces(rule, space, part, *tag, limits)) {
            if (map.mode == MapDescription::Mode::Exclusive) {
                for (const Interval& c : claimed) {
                    if (auto both = intersect(c, piece.dom)) {
                        out.failure = ErrorKind::AmbiguousPiece;
                        out.at = some_point(*both);
                        return out;
                    }
                }
                claimed.push_back(piece.dom);
                out.pieces.push_back(std::move(piece));
                continue;
            }
            std::vector<Interval> left{piece.dom};
            for (const Interval& c : claimed) {
                std::vector<Interval> next;
                for (const Interval& l : left) {
                    for (Interval& d : subtract(l, c)) {
                        next.push_back(std::move(d));
                    }
                }
                left = std::move(next);
            }
            for (Interval& l : left) {
                out.pieces.push_back({l, piece.slope, piece.intercept});
            }
            claimed.push_back(piece.dom);
        }
    }
    std::vector<Interval> doms;
    for (const AffinePiece& p : out.pieces) {
        doms.push_back(p.dom);
    }
    if (auto gap = first_uncovered(part, doms)) {
        out.failure = ErrorKind::OutsideDomain;
        out.at = *gap;
        out.pieces.clear();
        return out;
    }
    std::sort(out.pieces.begin(), out.pieces.end(),
              [](const AffinePiece& a, const AffinePiece& b) { return lower_before(a.dom.lo, b.dom.lo); });
    return out;
}

Segments segments(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                  const Limits& limits)
{
    Segments out;
    out.mat = materialize(space, window, limits);
    const auto take = [&](const Interval& part) {
        Resolution r = resolve(map, space, part, limits);
        if (r.failure) {
            Witness w;
            w.kind = WitnessKind::Undefined;
            w.points = {r.at};
            w.note = *r.failure == ErrorKind::AmbiguousPiece ? "two rules apply" : "no rule applies";
            out.failures.push_back(std::move(w));
            return;
        }
        for (AffinePiece& p : r.pieces) {
            out.pieces.push_back(std::move(p));
        }
    };
    for (const Scalar& x : out.mat.points) {
        take(Interval::point(x));
    }
    for (const Fragment& f : out.mat.fragments) {
        take(f.interval);
    }
    std::sort(out.pieces.begin(), out.pieces.end(),
              [](const AffinePiece& a, const AffinePiece& b) { return lower_before(a.dom.lo, b.dom.lo); });
    return out;
}

}  // namespace detail

// ---- evaluation ----------------------------------------------------------------------

Scalar eval(const MapDescription& map, const SubspaceDescription& space, const Scalar& x, const Limits& limits)
{
    const detail::Resolution r = detail::resolve(map, space, Interval::point(x), limits);
    if (r.failure) {
        const std::string why = *r.failure == ErrorKind::AmbiguousPiece ? "two rules apply at " : "no rule applies at ";
        throw Error(*r.failure, why + x.str());
    }
    return r.pieces.front().at(x);
}

std::vector<AffinePiece> pieces_on(const MapDescription& map, const SubspaceDescription& space, const Interval& part,
                                   const Limits& limits)
{
    if (!part.bounded()) {
        throw Error(ErrorKind::PreconditionFailed, "pieces_on needs a bounded part, got " + part.str());
    }
    if (auto missing = first_missing(space, part, limits)) {
        throw Error(ErrorKind::OutsideDomain, missing->str() + " is not in the space");
    }
    detail::Resolution r = detail::resolve(map, space, part, limits);
    if (r.failure) {
        const std::string why = *r.failure == ErrorKind::AmbiguousPiece ? "two rules apply at " : "no rule applies at ";
        throw Error(*r.failure, why + r.at.str());
    }
    return std::move(r.pieces);
}

Orbit orbit(const MapDescription& map, const SubspaceDescription& space, const Scalar& t, std::size_t n,
            const Limits& limits)
{
    if (!contains(space, t, limits)) {
        throw Error(ErrorKind::OutsideDomain, t.str() + " is not in the space");
    }
    Orbit out;
    Scalar x = t;
    for (std::size_t k = 0; k < n; ++k) {
        x = eval(map, space, x, limits);
        out.points.push_back(x);
        if (x == t) {
            out.cycle = true;
            break;
        }
        if (!contains(space, x, limits)) {
            throw Error(ErrorKind::OutsideDomain, "iterate " + std::to_string(k + 1) + " = " + x.str() + " left the space");
        }
    }
    return out;
}

}  // namespace plasti
