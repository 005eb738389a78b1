#include <algorithm>
#include <map>

#include "plasti/error.hpp"
#include "plasti/space.hpp"
#include "space_detail.hpp"

namespace plasti {

std::string to_string(GapSpectrum::Exactness e)
{
    switch (e) {
    case GapSpectrum::Exactness::Exact: return "exact";
    case GapSpectrum::Exactness::WindowLowerBound: return "window-lower-bound";
    case GapSpectrum::Exactness::ExtremaOnly: return "extrema-only";
    }
    return "?";
}

namespace {

void require_discrete(const SubspaceDescription& space)
{
    for (const auto& c : space.components) {
        if (!is_discrete(c)) {
            throw Error(ErrorKind::NotDiscrete, "adjacent gaps are undefined for " + describe(c));
        }
    }
}

void fill_extrema(GapSpectrum& s)
{
    if (s.entries.empty()) {
        s.minimum = Extremum::infinite();
        s.maximum = Extremum::infinite();
        return;
    }
    s.minimum = Extremum::attained(s.entries.front().gap);
    s.min_multiplicity = s.entries.front().multiplicity;
    s.maximum = Extremum::attained(s.entries.back().gap);
    s.max_multiplicity = s.entries.back().multiplicity;
}

/// Adjacent pairs of the materialization that certainly have no unenumerated point between them.
std::vector<std::pair<Scalar, Scalar>> exact_adjacent_pairs(const Materialization& m)
{
    std::vector<std::pair<Scalar, Scalar>> out;
    for (std::size_t i = 1; i < m.points.size(); ++i) {
        if (m.exact_between(m.points[i - 1], m.points[i])) {
            out.emplace_back(m.points[i - 1], m.points[i]);
        }
    }
    return out;
}

}  // namespace

GapSpectrum gap_spectrum(const SubspaceDescription& space, const Window& window, const Limits& limits)
{
    require_discrete(space);
    const Materialization m = materialize(space, window, limits);
    std::map<Scalar, std::uint64_t> counts;
    for (const auto& [a, b] : exact_adjacent_pairs(m)) {
        ++counts[b - a];
    }
    GapSpectrum s;
    s.exactness = GapSpectrum::Exactness::WindowLowerBound;
    for (const auto& [gap, n] : counts) {
        s.entries.push_back({gap, Multiplicity::finite(n)});
    }
    fill_extrema(s);
    return s;
}

std::optional<GapSpectrum> gap_spectrum(const SubspaceDescription& space)
{
    require_discrete(space);
    const auto nf = discrete_normal_form(space);
    if (!nf) {
        return std::nullopt;
    }
    GapSpectrum s;
    std::map<Scalar, Multiplicity> finite_part;
    std::vector<GapRule> tails;
    for (const GapList* g : {&nf->right, &nf->left}) {
        for (const Scalar& v : g->prefix) {
            finite_part[v] += Multiplicity::finite(1);
        }
        if (g->tail) {
            tails.push_back(*g->tail);
        }
    }
    const bool listable = std::all_of(tails.begin(), tails.end(),
                                      [](const GapRule& r) { return r.kind() == GapRule::Kind::Constant; });
    if (listable) {
        for (const auto& r : tails) {
            finite_part[r.b()] += Multiplicity::unbounded();
        }
        for (const auto& [gap, mult] : finite_part) {
            s.entries.push_back({gap, mult});
        }
        s.exactness = GapSpectrum::Exactness::Exact;
        fill_extrema(s);
        return s;
    }

    s.exactness = GapSpectrum::Exactness::ExtremaOnly;
    // Infimum: smallest listed gap against the tail infima; attained when some term equals it.
    Extremum lo = finite_part.empty() ? Extremum::infinite() : Extremum::attained(finite_part.begin()->first);
    Extremum hi = finite_part.empty() ? Extremum::infinite() : Extremum::attained(finite_part.rbegin()->first);
    bool hi_unbounded = false;
    for (const auto& r : tails) {
        const Extremum inf = r.infimum();
        if (lo.kind == Extremum::Kind::Infinite || inf.value < lo.value ||
            (inf.value == lo.value && inf.kind == Extremum::Kind::Attained)) {
            lo = inf;
        }
        const Extremum sup = r.supremum();
        if (sup.kind == Extremum::Kind::Infinite) {
            hi_unbounded = true;
        } else if (hi.kind == Extremum::Kind::Infinite || sup.value > hi.value ||
                   (sup.value == hi.value && sup.kind == Extremum::Kind::Attained)) {
            hi = sup;
        }
    }
    const auto multiplicity = [&](const Scalar& v) {
        Multiplicity m;
        if (auto it = finite_part.find(v); it != finite_part.end()) {
            m += it->second;
        }
        for (const auto& r : tails) {
            m += r.count(v);
        }
        return m;
    };
    s.minimum = lo;
    if (lo.kind != Extremum::Kind::Infinite) {
        s.min_multiplicity = multiplicity(lo.value);
        if (s.min_multiplicity.positive()) {
            s.minimum.kind = Extremum::Kind::Attained;
        }
    }
    s.maximum = hi_unbounded ? Extremum::infinite() : hi;
    if (!hi_unbounded && hi.kind != Extremum::Kind::Infinite) {
        s.max_multiplicity = multiplicity(hi.value);
        if (s.max_multiplicity.positive()) {
            s.maximum.kind = Extremum::Kind::Attained;
        }
    }
    return s;
}

std::size_t ball_census(const SubspaceDescription& space, const Scalar& center, const Scalar& radius,
                        const Window& window, const Limits& limits)
{
    if (radius.sign() <= 0) {
        throw Error(ErrorKind::PreconditionFailed, "ball radius must be positive");
    }
    if (center - radius < window.lo || center + radius > window.hi) {
        throw Error(ErrorKind::WindowTooSmall, "ball B(" + center.str() + ", " + radius.str() +
                                                   ") is not inside the window " + window.str());
    }
    require_discrete(space);
    Materialization m;
    try {
        m = materialize(space, window, limits);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::EmptyWindow) {
            return 0;
        }
        throw;
    }
    const Interval ball = Interval::open(center - radius, center + radius);
    for (const auto& t : m.truncations) {
        if (overlaps(ball, t.region()) || ball.contains(t.limit)) {
            throw Error(ErrorKind::WindowTooSmall, "ball B(" + center.str() + ", " + radius.str() +
                                                       ") reaches the truncated tail near " + t.limit.str());
        }
    }
    return static_cast<std::size_t>(
        std::count_if(m.points.begin(), m.points.end(), [&](const Scalar& p) { return ball.contains(p); }));
}

// ---- metadata -----------------------------------------------------------------------

bool MetadataReport::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const DeclarationCheck& c) { return c.pass; });
}

void MetadataReport::require_pass() const
{
    for (const auto& c : checks) {
        if (!c.pass) {
            std::string msg = "declaration '" + c.declaration + "' fails on " + window.str() + ": " + c.evidence;
            if (c.witness) {
                msg += " (pair " + c.witness->first.str() + ", " + c.witness->second.str() + ")";
            }
            throw Error(ErrorKind::DeclarationContradicted, msg);
        }
    }
}

namespace {

std::string bound_decl_text(const char* side, const BoundDeclaration& b)
{
    std::string out = std::string("bounded-") + side + "=";
    switch (b.kind) {
    case BoundDeclaration::Kind::Attained: return out + "attained(" + b.at.str() + ")";
    case BoundDeclaration::Kind::Unattained: return out + "unattained(" + b.at.str() + ")";
    case BoundDeclaration::Kind::Unbounded: return out + "unbounded";
    }
    return out;
}

bool matches(const BoundDeclaration& d, const Extremum& e)
{
    switch (d.kind) {
    case BoundDeclaration::Kind::Attained: return e.kind == Extremum::Kind::Attained && e.value == d.at;
    case BoundDeclaration::Kind::Unattained: return e.kind == Extremum::Kind::NotAttained && e.value == d.at;
    case BoundDeclaration::Kind::Unbounded: return e.kind == Extremum::Kind::Infinite;
    }
    return false;
}

std::string extremum_text(const Extremum& e)
{
    switch (e.kind) {
    case Extremum::Kind::Attained: return "attained at " + e.value.str();
    case Extremum::Kind::NotAttained: return "approached but not attained at " + e.value.str();
    case Extremum::Kind::Infinite: return "unbounded";
    }
    return "?";
}

/// Smallest exact adjacent pair of the materialization, preferring pairs near `near`.
std::optional<std::pair<Scalar, Scalar>> smallest_pair(const Materialization& m, const std::optional<Scalar>& near)
{
    std::optional<std::pair<Scalar, Scalar>> best;
    for (std::size_t i = 1; i < m.points.size(); ++i) {
        const Scalar& a = m.points[i - 1];
        const Scalar& b = m.points[i];
        if (!m.exact_between(a, b)) {
            continue;
        }
        if (!best) {
            best = {a, b};
            continue;
        }
        const Scalar gap = b - a;
        const Scalar best_gap = best->second - best->first;
        if (gap < best_gap || (gap == best_gap && near && dist(a, *near) < dist(best->first, *near))) {
            best = {a, b};
        }
    }
    return best;
}

}  // namespace

MetadataReport validate_metadata(const SubspaceDescription& space, const Window& window, const Limits& limits)
{
    MetadataReport report;
    report.window = window;
    std::optional<Materialization> m;
    try {
        m = materialize(space, window, limits);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyWindow) {
            throw;
        }
    }
    const std::vector<Scalar> accum = accumulation_points(space);
    const bool intervals = has_intervals(space);

    if (space.meta.declared_no_accumulation) {
        DeclarationCheck c;
        c.declaration = "no-accum";
        if (intervals) {
            c.evidence = "the space contains intervals, every point of which is an accumulation point";
            if (m && !m->fragments.empty()) {
                const Interval& f = m->fragments.front().interval;
                c.witness = {{f.lo.value, f.midpoint()}};
            }
        } else if (!accum.empty() || (m && m->truncated())) {
            const std::optional<Scalar> at = accum.empty() ? std::optional<Scalar>() : accum.front();
            c.evidence = "gaps shrink to 0";
            if (at) {
                c.evidence += " near " + at->str();
            }
            if (m) {
                c.witness = smallest_pair(*m, at);
                if (c.witness) {
                    c.evidence += "; adjacent gap " + (c.witness->second - c.witness->first).str() + " on the window";
                }
            }
        } else {
            c.pass = true;
            if (m) {
                if (const auto p = smallest_pair(*m, std::nullopt)) {
                    c.gap_lower_bound = p->second - p->first;
                    c.evidence = "adjacent gaps on the window are at least " + c.gap_lower_bound->str();
                } else {
                    c.evidence = "fewer than two points on the window";
                }
            } else {
                c.evidence = "no point on the window";
            }
        }
        report.checks.push_back(std::move(c));
    }

    for (const Scalar& p : space.meta.accumulation_points) {
        DeclarationCheck c;
        c.declaration = "accum=" + p.str();
        const bool symbolic = std::find(accum.begin(), accum.end(), p) != accum.end();
        bool in_fragment = false;
        if (m) {
            for (const auto& f : m->fragments) {
                const Interval closure = Interval::closed(f.interval.lo.value, f.interval.hi.value);
                in_fragment = in_fragment || (!f.interval.degenerate() && closure.contains(p));
            }
        }
        c.pass = symbolic || in_fragment;
        if (symbolic) {
            c.evidence = "a gap rule has infimum 0 and its points converge to " + p.str();
            if (m && window.contains(p)) {
                c.witness = smallest_pair(*m, p);
                if (c.witness) {
                    c.evidence += "; smallest adjacent gap on the window " +
                                  (c.witness->second - c.witness->first).str();
                }
            }
        } else if (in_fragment) {
            c.evidence = p.str() + " lies in the closure of an interval of the space";
        } else {
            c.evidence = "no tail of the description converges to " + p.str();
        }
        report.checks.push_back(std::move(c));
    }

    const Bounds bounds = is_bounded(space);
    const auto check_bound = [&](const char* side, const BoundDeclaration& d, const Extremum& actual, bool lower) {
        DeclarationCheck c;
        c.declaration = bound_decl_text(side, d);
        c.pass = matches(d, actual);
        c.evidence = std::string("the description is ") + extremum_text(actual) + " " + (lower ? "below" : "above");
        if (m && !m->empty() && d.kind != BoundDeclaration::Kind::Unbounded) {
            const Scalar lo = m->fragments.empty() ? m->points.front()
                                                   : min(m->points.empty() ? m->fragments.front().interval.lo.value
                                                                           : m->points.front(),
                                                         m->fragments.front().interval.lo.value);
            const Scalar hi = m->fragments.empty() ? m->points.back()
                                                   : max(m->points.empty() ? m->fragments.back().interval.hi.value
                                                                           : m->points.back(),
                                                         m->fragments.back().interval.hi.value);
            const Scalar& seen = lower ? lo : hi;
            if ((lower && seen < d.at) || (!lower && seen > d.at)) {
                c.pass = false;
                c.witness = {{seen, d.at}};
                c.evidence += "; the window holds " + seen.str() + " beyond the declared bound";
            }
        }
        report.checks.push_back(std::move(c));
    };
    if (space.meta.below) {
        check_bound("below", *space.meta.below, bounds.below, true);
    }
    if (space.meta.above) {
        check_bound("above", *space.meta.above, bounds.above, false);
    }
    return report;
}

}  // namespace plasti
