#include "plasti/classify.hpp"

#include <algorithm>
#include <sstream>

#include "classify_detail.hpp"
#include "space_detail.hpp"

namespace plasti {

std::string to_string(VerdictKind k)
{
    switch (k) {
    case VerdictKind::Plastic: return "Plastic";
    case VerdictKind::NotPlastic: return "NotPlastic";
    case VerdictKind::Unknown: return "Unknown";
    }
    return "?";
}

std::string to_string(Structure s)
{
    switch (s) {
    case Structure::IdentityOnly: return "identity-only";
    case Structure::IdentityOrTotalSymmetry: return "identity-or-total-symmetry";
    case Structure::Unspecified: return "unspecified";
    }
    return "?";
}

namespace {

Tri combine(Tri a, Tri b)
{
    if (a == Tri::No || b == Tri::No) {
        return Tri::No;
    }
    return a == Tri::Yes && b == Tri::Yes ? Tri::Yes : Tri::Unknown;
}

Tri list_monotone(const GapList& g, bool increasing, bool& strict)
{
    strict = false;
    Tri out = Tri::Yes;
    const auto step = [&](const Scalar& a, const Scalar& b) {
        if (increasing ? a > b : a < b) {
            out = Tri::No;
        } else if (a != b) {
            strict = true;
        }
    };
    for (std::size_t i = 1; i < g.prefix.size(); ++i) {
        step(g.prefix[i - 1], g.prefix[i]);
    }
    if (g.tail) {
        if (!g.prefix.empty()) {
            step(g.prefix.back(), g.tail->at(1));
        }
        bool s = false;
        out = combine(out, g.tail->monotone(increasing, s));
        strict = strict || s;
    }
    return out;
}

/// The bi-infinite list ..., left(2), left(1), right(1), right(2), ... in index order.
Tri sequence_monotone(const GapList& right, const GapList& left, bool increasing, bool& strict)
{
    bool sr = false;
    bool sl = false;
    Tri out = combine(list_monotone(right, increasing, sr), list_monotone(left, !increasing, sl));
    const Scalar& l1 = left.at(1);
    const Scalar& r1 = right.at(1);
    if (increasing ? l1 > r1 : l1 < r1) {
        out = Tri::No;
    }
    strict = sr || sl || l1 != r1;
    return out;
}

std::string tri_text(Tri t)
{
    switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "undecided";
    }
    return "?";
}

MapDescription shift_map(std::size_t component, std::int64_t k)
{
    MapDescription m;
    m.rules.emplace_back(IndexShiftRule{component, k});
    MapDescription inv;
    inv.rules.emplace_back(IndexShiftRule{component, -k});
    m.set_inverse(std::move(inv));
    return m;
}

struct Context {
    const SubspaceDescription& space;
    const ClassifyOptions& opt;
    Classification& out;
    bool discrete = true;
    bool locally_finite = false;
    Bounds bounds;
    std::optional<GapSequence> nf;

    void step(std::string rule, bool matched, std::string evidence)
    {
        out.trace.steps.push_back({std::move(rule), matched, std::move(evidence)});
    }

    bool plastic(const std::string& rule, Structure s, const std::string& evidence)
    {
        step(rule, true, evidence);
        out.kind = VerdictKind::Plastic;
        out.rule = rule;
        out.structure = s;
        out.citation = detail::citation(rule);
        return true;
    }

    /// Emits NotPlastic only when the maps module confirms the witness on a window.
    bool not_plastic(const std::string& rule, const std::string& evidence, MapDescription witness,
                     const SubspaceDescription& on, const Window& window)
    {
        WitnessBundle b = verify_witness(on, witness, window, opt.check);
        if (!b.pass()) {
            step(rule, false, evidence + "; candidate witness rejected on " + window.str());
            return false;
        }
        step(rule, true, evidence);
        if (on.str() != space.str()) {
            out.notes.push_back("witness components refer to the single-sequence form " + on.str());
        }
        out.kind = VerdictKind::NotPlastic;
        out.rule = rule;
        out.citation = detail::citation(rule);
        out.witness = std::move(witness);
        out.witness_space = on;
        out.window = window;
        out.bundle = std::move(b);
        return true;
    }
};

bool rule_bounded(Context& c)
{
    if (c.bounds.bounded_below() && c.bounds.bounded_above()) {
        return c.plastic("R0", Structure::Unspecified,
                         "hull " + hull(c.space).str() + " is bounded");
    }
    c.step("R0", false, "unbounded");
    return false;
}

bool rule_monotone_gaps(Context& c)
{
    if (!c.discrete || !c.nf) {
        c.step("R1", false, c.discrete ? "no single gap-sequence form" : "not discrete");
        return false;
    }
    if (!c.nf->right.infinite() || !c.nf->left.infinite() || c.bounds.bounded_below() || c.bounds.bounded_above()) {
        c.step("R1", false, "not unbounded on both sides");
        return false;
    }
    std::string evidence;
    for (const bool increasing : {true, false}) {
        bool strict = false;
        const Tri m = sequence_monotone(c.nf->right, c.nf->left, increasing, strict);
        evidence += std::string(increasing ? "non-decreasing: " : "; non-increasing: ") + tri_text(m);
        if (m != Tri::Yes || !strict) {
            continue;
        }
        const SubspaceDescription on = detail::single_sequence(c.space) ? c.space : make_space({*c.nf});
        // Shift toward the smaller gaps.
        MapDescription w = shift_map(0, increasing ? -1 : 1);
        return c.not_plastic("R1", evidence + " with a strict step; gaps right " + c.nf->right.str() + ", left " +
                                       c.nf->left.str(),
                             std::move(w), on, c.opt.window);
    }
    c.step("R1", false, evidence + ", no strict monotone order");
    return false;
}

bool rule_one_sided(Context& c)
{
    if (!c.locally_finite) {
        c.step("R2", false, c.discrete ? "has an accumulation point" : "not discrete");
        return false;
    }
    if (c.bounds.bounded_below() != c.bounds.bounded_above()) {
        const Extremum& e = c.bounds.bounded_below() ? c.bounds.below : c.bounds.above;
        return c.plastic("R2", Structure::IdentityOnly,
                         std::string("locally finite, bounded ") + (c.bounds.bounded_below() ? "below" : "above") +
                             " by " + e.value.str() + " only");
    }
    c.step("R2", false, "not bounded on exactly one side");
    return false;
}

bool rule_extremal_gap(Context& c)
{
    if (!c.locally_finite || !c.nf) {
        c.step("R3", false, !c.locally_finite ? "not locally finite" : "no single gap-sequence form");
        return false;
    }
    const auto spectrum = gap_spectrum(c.space);
    if (!spectrum) {
        c.step("R3", false, "no symbolic spectrum");
        return false;
    }
    const auto finite = [](const Multiplicity& m) { return !m.infinite && m.count > 0; };
    std::optional<ExtremalGap> e;
    if (spectrum->has_minimum() && finite(spectrum->min_multiplicity)) {
        e = ExtremalGap{spectrum->minimum.value, false, spectrum->min_multiplicity.count, {}};
    } else if (spectrum->has_maximum() && finite(spectrum->max_multiplicity)) {
        e = ExtremalGap{spectrum->maximum.value, true, spectrum->max_multiplicity.count, {}};
    }
    if (!e) {
        std::string why = spectrum->has_minimum() ? "minimum " + spectrum->minimum.value.str() + " occurs " +
                                                        spectrum->min_multiplicity.str() + " times"
                                                  : "no minimum";
        why += spectrum->has_maximum() ? ", maximum " + spectrum->maximum.value.str() + " occurs " +
                                             spectrum->max_multiplicity.str() + " times"
                                       : ", no maximum";
        c.step("R3", false, why);
        return false;
    }
    e->points = detail::realising_pairs(*c.nf, e->gap, c.opt.check.limits);
    std::string evidence = std::string(e->maximum ? "maximum" : "minimum") + " gap " + e->gap.str() +
                           " with multiplicity " + std::to_string(e->multiplicity);
    c.out.trace.extremal = std::move(e);
    return c.plastic("R3", Structure::IdentityOrTotalSymmetry, evidence);
}

bool rule_interval_shift(Context& c)
{
    const auto view = c.space.components.size() == 1 ? detail::interval_view(c.space.components[0]) : std::nullopt;
    if (!view) {
        c.step("R4", false, "not a single interval sequence");
        return false;
    }
    if (!view->len_right.infinite() || !view->len_left.infinite()) {
        c.step("R4", false, "interval sequence is not infinite in both directions");
        return false;
    }
    std::string evidence;
    for (const bool increasing : {true, false}) {
        bool sl = false;
        bool sg = false;
        const Tri lens = sequence_monotone(view->len_right, view->len_left, increasing, sl);
        const Tri gaps = sequence_monotone(view->gap_right, view->gap_left, increasing, sg);
        evidence += std::string(increasing ? "" : "; ") + (increasing ? "non-decreasing" : "non-increasing") +
                    " lengths " + tri_text(lens) + ", gaps " + tri_text(gaps);
        if (lens != Tri::Yes || gaps != Tri::Yes || !(sl || sg)) {
            continue;
        }
        return c.not_plastic("R4", evidence + " with a strict step", shift_map(0, increasing ? -1 : 1), c.space,
                             c.opt.window);
    }
    c.step("R4", false, evidence + ", no strict monotone pair");
    return false;
}

bool rule_half_line(Context& c)
{
    for (const auto& comp : c.space.components) {
        if (const auto* h = std::get_if<HalfLine>(&comp)) {
            const auto [map, window] = detail::half_line_witness(h->interval, c.opt.window);
            return c.not_plastic("R5", "contains the half-line " + h->interval.str(), map, c.space, window);
        }
    }
    c.step("R5", false, "no half-line component");
    return false;
}

bool rule_periodic(Context& c)
{
    const auto family = detail::periodic_family(c.space);
    if (!family) {
        c.step("R6", false, "not a family of equal intervals at equal spacing");
        return false;
    }
    const std::string shape = "length " + family->length.str() + ", gap " + family->gap.str() + ", topology " +
                              to_string(family->left) +
                              (family->left == family->right ? "" : " then " + to_string(family->right));
    const auto rigid = [](Topology t) { return t == Topology::Open || t == Topology::Closed; };
    if (family->left == family->right && rigid(family->left) && family->both_ways) {
        return c.plastic("R6a", Structure::Unspecified, shape);
    }
    if (auto g = detail::glue_witness(c.space, *family, c.opt.window)) {
        return c.not_plastic("R6b", shape + "; half-open tail", g->first, c.space, g->second);
    }
    c.step("R6", false, shape + " is not covered");
    return false;
}

bool rule_progression(Context& c)
{
    if (c.nf && c.nf->right.infinite() && c.nf->left.infinite()) {
        const Scalar step = c.nf->right.at(1);
        const auto constant = [&](const GapList& g) {
            return std::all_of(g.prefix.begin(), g.prefix.end(), [&](const Scalar& v) { return v == step; }) &&
                   g.tail->kind() == GapRule::Kind::Constant && g.tail->b() == step;
        };
        if (constant(c.nf->right) && constant(c.nf->left)) {
            return c.plastic("R7", Structure::Unspecified, "arithmetic progression with step " + step.str());
        }
    }
    c.step("R7", false, "not a two-sided arithmetic progression");
    return false;
}

}  // namespace

Classification classify(const SubspaceDescription& space, const ClassifyOptions& opt)
{
    if (const std::string bad = space.validate(); !bad.empty()) {
        throw Error(ErrorKind::InvalidDescription, bad);
    }
    if (!space.meta.empty()) {
        const MetadataReport report = validate_metadata(space, opt.window, opt.check.limits);
        if (!report.pass()) {
            std::string which;
            for (const auto& chk : report.checks) {
                if (!chk.pass) {
                    which = chk.declaration + " (" + chk.evidence + ")";
                    break;
                }
            }
            throw Error(ErrorKind::MetadataUnvalidated, "declared metadata fails on " + opt.window.str() + ": " + which);
        }
    }

    Classification out;
    out.window = opt.window;
    out.witness_space = space;
    Context c{space, opt, out, true, false, {}, {}};
    c.discrete = !has_intervals(space);
    c.locally_finite = c.discrete && is_locally_finite(space);
    c.bounds = is_bounded(space);
    if (c.discrete) {
        c.nf = discrete_normal_form(space);
    }

    const bool decided = rule_bounded(c) || rule_monotone_gaps(c) || rule_one_sided(c) || rule_extremal_gap(c) ||
                         rule_interval_shift(c) || rule_half_line(c) || rule_periodic(c) || rule_progression(c);
    if (decided && out.kind == VerdictKind::NotPlastic) {
        return out;
    }
    if (!decided) {
        out.kind = VerdictKind::Unknown;
        out.rule = "fallback";
        out.citation = detail::citation("fallback");
        if (c.nf && detail::alternating_example(*c.nf)) {
            out.notes.push_back(detail::alternating_note());
        }
    }
    if (opt.falsify) {
        FalsificationSummary f = falsify(space, opt.window, opt.check);
        if (f.counterexample && out.kind == VerdictKind::Unknown) {
            out.kind = VerdictKind::NotPlastic;
            out.witness = f.counterexample;
            out.bundle = verify_witness(space, *f.counterexample, opt.window, opt.check);
            out.notes.push_back("the falsification search found a verified non-isometric non-expansive bijection");
        } else if (f.counterexample) {
            out.notes.push_back("falsification search contradicts rule " + out.rule + ": " +
                                f.counterexample->str());
        }
        out.falsification = std::move(f);
    }
    return out;
}

// ---- reports --------------------------------------------------------------------------

std::string ClassifierTrace::str() const
{
    std::ostringstream os;
    for (const auto& s : steps) {
        os << "  " << s.rule << (s.matched ? " matched: " : " no: ") << s.evidence << '\n';
    }
    if (extremal) {
        os << "  extremal gap a = " << extremal->gap.str() << " (" << (extremal->maximum ? "maximum" : "minimum")
           << "), k = " << extremal->multiplicity << "\n  X_a =";
        for (const auto& x : extremal->points) {
            os << ' ' << x.str();
        }
        os << '\n';
    }
    return os.str();
}

std::string Classification::str() const
{
    std::ostringstream os;
    os << "verdict: " << to_string(kind) << "\nrule: " << rule << "\ncitation: " << citation << '\n';
    if (kind == VerdictKind::Plastic) {
        os << "structure: " << to_string(structure) << '\n';
    }
    if (witness) {
        os << "window: " << window.str() << "\nwitness:\n";
        std::istringstream lines(witness->str());
        for (std::string l; std::getline(lines, l);) {
            os << "  " << l << '\n';
        }
    }
    if (bundle) {
        os << bundle->str();
    }
    os << "trace:\n" << trace.str();
    for (const auto& n : notes) {
        os << "note: " << n << '\n';
    }
    if (falsification) {
        os << falsification->str();
    }
    return os.str();
}

}  // namespace plasti
