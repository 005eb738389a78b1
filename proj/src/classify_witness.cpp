#include <algorithm>
#include <map>
#include <sstream>

#include "classify_detail.hpp"
#include "plasti/classify.hpp"

namespace plasti {

namespace detail {

std::string citation(const std::string& rule)
{
    static const std::map<std::string, std::string> text = {
        {"R0", "bounded subsets of the line are totally bounded, and totally bounded spaces are plastic"},
        {"R1", "adjacent gaps are monotone along a two-sided sequence with a strict step; moving every point one "
               "place toward the smaller gaps is a non-expansive bijection that is not an isometry"},
        {"R2", "locally finite and bounded on one side: the extreme point and then each following point are "
               "fixed, so the identity is the only non-expansive bijection"},
        {"R3", "an extremal adjacent gap occurs finitely often: the realising points are permuted among "
               "themselves, which forces the identity or the total symmetry"},
        {"R4", "interval lengths and gaps are monotone along a two-sided sequence with a strict step; the interval "
               "shift is a non-expansive bijection that is not an isometry"},
        {"R5", "a half-line contracts toward its end point while the rest stays fixed"},
        {"R6a", "equal intervals at equal spacing, all open or all closed: the interval ends are rigid"},
        {"R6b", "equal half-open intervals at equal spacing: two neighbours glue into one at half scale and the "
                "tail moves back one period"},
        {"R7", "an arithmetic progression is a scaled copy of the integers, which are plastic"},
        {"fallback", "no rule applies"},
    };
    const auto it = text.find(rule);
    return it == text.end() ? std::string() : it->second;
}

bool single_sequence(const SubspaceDescription& space)
{
    return space.components.size() == 1 && (std::holds_alternative<GapSequence>(space.components[0]) ||
                                            std::holds_alternative<ArithmeticProgression>(space.components[0]));
}

namespace {

std::vector<std::uint64_t> indices(const GapList& g, const Scalar& v)
{
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < g.prefix.size(); ++i) {
        if (g.prefix[i] == v) {
            out.push_back(i + 1);
        }
    }
    if (g.tail) {
        for (const auto n : g.tail->indices_of(v)) {
            out.push_back(n + g.prefix.size());
        }
    }
    return out;
}

std::optional<PeriodicIntervals> as_periodic(const Component& c)
{
    if (const auto* p = std::get_if<PeriodicIntervals>(&c)) {
        return *p;
    }
    const auto* s = std::get_if<IntervalSequence>(&c);
    if (s == nullptr) {
        return std::nullopt;
    }
    const auto constant = [](const GapList& g) -> std::optional<Scalar> {
        if (!g.prefix.empty() || !g.tail || g.tail->kind() != GapRule::Kind::Constant) {
            return std::nullopt;
        }
        return g.tail->b();
    };
    const auto lr = constant(s->len_right);
    const auto ll = constant(s->len_left);
    const auto gr = constant(s->gap_right);
    const auto gl = constant(s->gap_left);
    if (!lr || !ll || !gr || !gl || *lr != *ll || *gr != *gl) {
        return std::nullopt;
    }
    return PeriodicIntervals{*lr, *gr, s->anchor, s->topology, Direction::Both};
}

}  // namespace

std::vector<Scalar> realising_pairs(const GapSequence& nf, const Scalar& gap, const Limits& limits)
{
    const SubspaceDescription sp = make_space({nf});
    std::vector<std::pair<Scalar, Scalar>> pairs;
    const auto at = [&](std::int64_t i) {
        auto p = point_at(sp, 0, i, limits);
        if (!p) {
            throw Error(ErrorKind::PreconditionFailed, "missing point with index " + std::to_string(i));
        }
        return *p;
    };
    for (const auto n : indices(nf.right, gap)) {
        const auto i = static_cast<std::int64_t>(n);
        pairs.emplace_back(at(i - 1), at(i));
    }
    for (const auto n : indices(nf.left, gap)) {
        const auto j = static_cast<std::int64_t>(n);
        pairs.emplace_back(at(-j), at(-j + 1));
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<Scalar> out;
    for (auto& [a, b] : pairs) {
        out.push_back(std::move(a));
        out.push_back(std::move(b));
    }
    return out;
}

std::optional<PeriodicFamily> periodic_family(const SubspaceDescription& space)
{
    if (space.components.size() == 1) {
        const auto p = as_periodic(space.components[0]);
        if (!p) {
            return std::nullopt;
        }
        PeriodicFamily f{p->length, p->gap, p->topology, p->topology, p->anchor};
        f.left_infinite = p->dir != Direction::Right;
        f.right_infinite = p->dir != Direction::Left;
        f.both_ways = p->dir == Direction::Both;
        f.single = true;
        return f;
    }
    if (space.components.size() != 2) {
        return std::nullopt;
    }
    const auto* a = std::get_if<PeriodicIntervals>(&space.components[0]);
    const auto* b = std::get_if<PeriodicIntervals>(&space.components[1]);
    if (a == nullptr || b == nullptr || a->length != b->length || a->gap != b->gap) {
        return std::nullopt;
    }
    if (a->dir == Direction::Right) {
        std::swap(a, b);
    }
    if (a->dir != Direction::Left || b->dir != Direction::Right || b->anchor != a->anchor + a->length + a->gap) {
        return std::nullopt;
    }
    PeriodicFamily f{a->length, a->gap, a->topology, b->topology, b->anchor};
    f.left_infinite = true;
    f.right_infinite = true;
    f.both_ways = true;
    return f;
}

MapDescription glue_map(const Scalar& s, const Scalar& length, const Scalar& period, Topology t)
{
    const Scalar half(1, 2);
    const Scalar mid = s + length * half;
    const auto piece = [](Interval dom, Scalar slope, Scalar icpt) {
        return AffinePieceRule{std::move(dom), std::nullopt, std::move(slope), std::move(icpt)};
    };
    MapDescription m;
    m.rules.emplace_back(piece(Interval{Endpoint::neg_inf(), Endpoint::finite(s, false)}, 1, 0));
    m.rules.emplace_back(piece(Interval::closed(s, s + length), half, s * half));
    m.rules.emplace_back(
        piece(Interval::closed(s + period, s + period + length), half, (s + length - period) * half));
    m.rules.emplace_back(piece(Interval{Endpoint::finite(s + period * 2, true), Endpoint::pos_inf()}, 1, -period));

    MapDescription inv;
    inv.rules.emplace_back(piece(Interval{Endpoint::neg_inf(), Endpoint::finite(s, false)}, 1, 0));
    inv.rules.emplace_back(piece(Interval::make(s, lo_closed(t), mid, hi_closed(t)), 2, -s));
    inv.rules.emplace_back(piece(Interval::make(mid, lo_closed(t), s + length, hi_closed(t)), 2, period - s - length));
    inv.rules.emplace_back(piece(Interval{Endpoint::finite(s + period, true), Endpoint::pos_inf()}, 1, period));
    m.set_inverse(std::move(inv));
    return m;
}

std::optional<std::pair<MapDescription, Window>> glue_witness(const SubspaceDescription& space,
                                                              const PeriodicFamily& family, const Window& window)
{
    const auto half_open = [](Topology t) { return t == Topology::LeftClosed || t == Topology::RightClosed; };
    const Scalar P = family.period();
    if (family.gap.is_zero() || P.is_zero()) {
        return std::nullopt;
    }
    if (half_open(family.right) && family.right_infinite) {
        // Glue where the window can see it.
        const Scalar centre = (window.lo + window.hi) * Scalar(1, 2);
        Scalar j = ((centre - family.right_anchor) / P).floor();
        if (!(family.single && family.both_ways) && j < Scalar(0)) {
            j = Scalar(0);
        }
        const Scalar s = family.right_anchor + j * P;
        Window w = window;
        if (!(window.lo <= s && s + P + family.length <= window.hi)) {
            w = Window(s - 10, s + P + family.length + 10);
        }
        return std::make_pair(glue_map(s, family.length, P, family.right), w);
    }
    if (half_open(family.left) && family.left_infinite) {
        const SubspaceDescription mirror = negate(space);
        const auto f = periodic_family(mirror);
        if (!f || !half_open(f->right)) {
            return std::nullopt;
        }
        const auto g = glue_witness(mirror, *f, Window(-window.hi, -window.lo));
        if (!g) {
            return std::nullopt;
        }
        return std::make_pair(negate(g->first), Window(-g->second.hi, -g->second.lo));
    }
    return std::nullopt;
}

std::pair<MapDescription, Window> half_line_witness(const Interval& half, const Window& window)
{
    const Scalar h(1, 2);
    const bool rightward = !half.hi.is_finite();
    const Scalar a = rightward ? (half.lo.is_finite() ? half.lo.value : Scalar(0)) : half.hi.value;
    const Interval inner = rightward ? Interval{Endpoint::finite(a, false), Endpoint::pos_inf()}
                                     : Interval{Endpoint::neg_inf(), Endpoint::finite(a, false)};
    const Interval rest = rightward ? Interval{Endpoint::neg_inf(), Endpoint::finite(a, true)}
                                    : Interval{Endpoint::finite(a, true), Endpoint::pos_inf()};
    MapDescription m;
    m.rules.emplace_back(AffinePieceRule{rest, std::nullopt, 1, 0});
    m.rules.emplace_back(AffinePieceRule{inner, std::nullopt, h, a * h});
    MapDescription inv;
    inv.rules.emplace_back(AffinePieceRule{rest, std::nullopt, 1, 0});
    inv.rules.emplace_back(AffinePieceRule{inner, std::nullopt, 2, -a});
    m.set_inverse(std::move(inv));
    const bool visible = rightward ? window.lo <= a && a < window.hi : window.lo < a && a <= window.hi;
    return {std::move(m), visible ? window : Window(a - 10, a + 10)};
}

bool alternating_example(const GapSequence& nf)
{
    const GapList right{{}, GapRule::alternating(GapRule::affine(1, 0), GapRule::reciprocal(1))};
    const GapList left{{}, GapRule::alternating(GapRule::reciprocal(1), GapRule::affine(1, 1))};
    return nf.right == right && nf.left == left;
}

std::string alternating_note()
{
    return "this alternating sequence is known to be plastic: comparing ball censuses pins the pair at distance 1, "
           "after which every point is fixed; that argument is specific to the set and is not encoded as a rule";
}

}  // namespace detail

// ---- witness verification -------------------------------------------------------------

bool WitnessBundle::pass() const
{
    return endomorphism.pass() && nonexpansive.pass() && bijection.pass() && !isometry.pass() &&
           contraction() != nullptr;
}

std::string WitnessBundle::str() const
{
    std::ostringstream os;
    os << "bundle: " << (pass() ? "pass" : "fail") << '\n';
    for (const CheckReport* r : {&endomorphism, &nonexpansive, &bijection, &isometry}) {
        os << "  " << r->check << ": " << to_string(r->verdict) << " on " << r->window.str() << '\n';
    }
    if (const Witness* w = contraction()) {
        os << "  contraction: " << w->points[0].str() << ", " << w->points[1].str() << " at distance "
           << w->distance().str() << " -> " << w->image_distance().str() << '\n';
    }
    return os.str();
}

WitnessBundle verify_witness(const SubspaceDescription& space, const MapDescription& witness, const Window& window,
                             const CheckOptions& opt)
{
    if (!witness.has_inverse()) {
        throw Error(ErrorKind::InverseMissing, "a witness needs a declared inverse");
    }
    return WitnessBundle{check_endomorphism(witness, space, window, opt), check_nonexpansive(witness, space, window, opt),
                         check_bijection(witness, space, window, opt), check_isometry(witness, space, window, opt)};
}

// ---- falsification ----------------------------------------------------------------------

namespace {

bool shiftable(const Component& c)
{
    return std::holds_alternative<ArithmeticProgression>(c) || std::holds_alternative<GapSequence>(c) ||
           std::holds_alternative<PeriodicIntervals>(c) || std::holds_alternative<IntervalSequence>(c);
}

MapDescription component_shift(std::size_t n, std::size_t c, std::int64_t k)
{
    MapDescription m;
    MapDescription inv;
    for (std::size_t d = 0; d < n; ++d) {
        m.rules.emplace_back(IndexShiftRule{d, d == c ? k : 0});
        inv.rules.emplace_back(IndexShiftRule{d, d == c ? -k : 0});
    }
    m.set_inverse(std::move(inv));
    return m;
}

/// Reflection centres: points, midpoints of whole fragments and of gaps between adjacent members.
std::vector<Scalar> reflection_centres(const SubspaceDescription& space, const Window& window, const Limits& limits)
{
    Materialization m;
    try {
        m = materialize(space, window, limits);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::EmptyWindow) {
            return {};
        }
        throw;
    }
    struct Item {
        Scalar lo;
        Scalar hi;
        bool clipped = false;
    };
    std::vector<Item> items;
    for (const auto& p : m.points) {
        items.push_back({p, p});
    }
    for (const auto& f : m.fragments) {
        items.push_back({f.interval.lo.value, f.interval.hi.value, f.lo_artificial || f.hi_artificial});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.lo < b.lo; });
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!items[i].clipped) {
            out.push_back((items[i].lo + items[i].hi) * Scalar(1, 2));
        }
        if (i + 1 < items.size()) {
            out.push_back((items[i].hi + items[i + 1].lo) * Scalar(1, 2));
        }
    }
    const Scalar centre = (window.lo + window.hi) * Scalar(1, 2);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::stable_sort(out.begin(), out.end(),
                     [&](const Scalar& a, const Scalar& b) { return dist(a, centre) < dist(b, centre); });
    constexpr std::size_t max_reflections = 16;
    if (out.size() > max_reflections) {
        out.resize(max_reflections);
    }
    return out;
}

}  // namespace

std::vector<MapDescription> falsification_family(const SubspaceDescription& space, const Window& window,
                                                 const Limits& limits)
{
    std::vector<MapDescription> out;
    const std::size_t n = space.components.size();
    for (std::size_t c = 0; c < n; ++c) {
        if (!shiftable(space.components[c])) {
            continue;
        }
        for (std::int64_t k = -5; k <= 5; ++k) {
            if (k != 0) {
                out.push_back(component_shift(n, c, k));
            }
        }
    }
    for (const Scalar& m : reflection_centres(space, window, limits)) {
        MapDescription r = MapDescription::affine(-1, m * 2);
        out.push_back(std::move(r));
    }
    for (const auto& c : space.components) {
        if (const auto* h = std::get_if<HalfLine>(&c)) {
            out.push_back(detail::half_line_witness(h->interval, window).first);
        }
    }
    if (const auto f = detail::periodic_family(space)) {
        if (auto g = detail::glue_witness(space, *f, window)) {
            out.push_back(std::move(g->first));
        } else if (f->right_infinite && !f->gap.is_zero()) {
            const Scalar P = f->period();
            const Scalar j = (((window.lo + window.hi) * Scalar(1, 2) - f->right_anchor) / P).floor();
            const Scalar s = f->right_anchor + (f->single || j > Scalar(0) ? j : Scalar(0)) * P;
            out.push_back(detail::glue_map(s, f->length, P, f->right));
        }
    }
    return out;
}

FalsificationSummary falsify(const SubspaceDescription& space, const Window& window, const CheckOptions& opt)
{
    FalsificationSummary s;
    s.window = window;
    // A second, three times wider window rejects maps whose failure lies just outside the first.
    const Scalar centre = (window.lo + window.hi) * Scalar(1, 2);
    const Scalar reach = (window.hi - window.lo) * Scalar(3, 2);
    const Window wide(centre - reach, centre + reach);
    const auto family = falsification_family(space, window, opt.limits);
    s.candidates = family.size();
    for (const MapDescription& m : family) {
        try {
            if (!check_endomorphism(m, space, window, opt).pass() || !check_endomorphism(m, space, wide, opt).pass()) {
                continue;
            }
            ++s.endomorphic;
            if (!check_nonexpansive(m, space, window, opt).pass() || !check_nonexpansive(m, space, wide, opt).pass()) {
                continue;
            }
            ++s.nonexpansive;
            if (!m.has_inverse() || !check_bijection(m, space, window, opt).pass() ||
                !check_bijection(m, space, wide, opt).pass()) {
                continue;
            }
            ++s.bijective;
            s.bijections.push_back(m);
            const CheckReport iso = check_isometry(m, space, window, opt);
            if (!iso.pass() && iso.first(WitnessKind::Contraction) != nullptr) {
                s.counterexample = m;
                break;
            }
        } catch (const Error&) {
            ++s.errors;
        }
    }
    return s;
}

std::string FalsificationSummary::str() const
{
    std::ostringstream os;
    os << "falsification on " << window.str() << ": " << candidates << " candidates, " << endomorphic
       << " endomorphic, " << nonexpansive << " non-expansive, " << bijective << " bijective";
    if (errors > 0) {
        os << ", " << errors << " undefined";
    }
    os << (counterexample ? "; counterexample found\n" : "; no counterexample\n");
    return os.str();
}

}  // namespace plasti
