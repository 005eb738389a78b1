#include <random>
#include <set>

#include "doctest.h"
#include "plasti/classify.hpp"
#include "plasti/space_parse.hpp"
#include "support.hpp"

using namespace plasti;
using test::q;

namespace {

const Window W(q(-10), q(10));

/// Closed ends plus seven interior points of every window fragment, and every window point.
std::vector<Scalar> samples(const SubspaceDescription& s, const Window& w)
{
    const Materialization m = materialize(s, w, Limits{256});
    std::set<Scalar> out(m.points.begin(), m.points.end());
    for (const auto& f : m.fragments) {
        const Scalar lo = f.interval.lo.value;
        const Scalar hi = f.interval.hi.value;
        if (f.interval.lo.closed) {
            out.insert(lo);
        }
        if (f.interval.hi.closed) {
            out.insert(hi);
        }
        for (long i = 1; i < 8 && lo != hi; ++i) {
            out.insert(lo + (hi - lo) * q(i, 8));
        }
    }
    return {out.begin(), out.end()};
}

struct SampleCheck {
    bool stays = true;
    bool nonexpansive = true;
    bool injective = true;
    bool round_trip = true;
    bool contracts = false;
};

// Evaluates the witness pointwise and compares distances directly.
SampleCheck sample_check(const MapDescription& m, const SubspaceDescription& s, const Window& w)
{
    SampleCheck r;
    const auto xs = samples(s, w);
    std::vector<Scalar> ys;
    for (const auto& x : xs) {
        const Scalar y = eval(m, s, x);
        r.stays = r.stays && contains(s, y);
        r.round_trip = r.round_trip && eval(m.inverse(), s, y) == x;
        ys.push_back(y);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const Scalar before = dist(xs[i], xs[j]);
            const Scalar after = dist(ys[i], ys[j]);
            r.nonexpansive = r.nonexpansive && after <= before;
            r.injective = r.injective && !after.is_zero();
            r.contracts = r.contracts || after < before;
        }
    }
    return r;
}

void require_sound(const Classification& c, const SubspaceDescription& s)
{
    REQUIRE(c.kind == VerdictKind::NotPlastic);
    REQUIRE(c.witness);
    REQUIRE(c.bundle);
    CHECK(c.bundle->pass());
    const auto* w = c.bundle->contraction();
    REQUIRE(w != nullptr);
    CHECK(w->image_distance() < w->distance());
    const SampleCheck r = sample_check(*c.witness, c.witness_space, c.window);
    CHECK(r.stays);
    CHECK(r.nonexpansive);
    CHECK(r.injective);
    CHECK(r.round_trip);
    CHECK(r.contracts);
    // The witness space is the same set as the input.
    for (const auto& x : samples(c.witness_space, c.window)) {
        CHECK(contains(s, x));
    }
}

ClassifyOptions quick()
{
    ClassifyOptions o;
    o.falsify = false;
    return o;
}

}  // namespace

TEST_CASE("R1 on monotone gaps")
{
    const auto s = parse_space("gapseq: anchor=0 right=alt(affine(n),affine(n)) left=const(1)");
    const auto c = classify(s);
    CHECK(c.rule == "R1");
    require_sound(c, s);
    // a_i -> a_{i-1}: 0 -> -1, 1 -> 0, 2 -> 1, 4 -> 2.
    CHECK(eval(*c.witness, s, q(0)) == q(-1));
    CHECK(eval(*c.witness, s, q(4)) == q(2));
    CHECK(c.witness->str().find("idxshift: comp=1 k=-1") != std::string::npos);

    const auto mirrored = classify(negate(s));
    CHECK(mirrored.rule == "R1");
    require_sound(mirrored, negate(s));
    CHECK(eval(*mirrored.witness, negate(s), q(0)) == q(1));
}

TEST_CASE("R1 on a split description uses the single-sequence form")
{
    const auto s = parse_space("arith: anchor=-1 step=1 dir=left\ngapseq: anchor=0 right=affine(n) left=[]");
    const auto c = classify(s, quick());
    CHECK(c.rule == "R1");
    require_sound(c, s);
    CHECK(c.witness_space.components.size() == 1);
}

TEST_CASE("R2 and R7")
{
    const auto zplus = parse_space("arith: anchor=0 step=1 dir=right");
    const auto c = classify(zplus);
    CHECK(c.kind == VerdictKind::Plastic);
    CHECK(c.rule == "R2");
    CHECK(c.structure == Structure::IdentityOnly);
    REQUIRE(c.falsification);
    CHECK(!c.falsification->counterexample);
    CHECK(c.falsification->candidates > 10);

    const auto z = parse_space("arith: anchor=0 step=1 dir=both");
    const auto zc = classify(z);
    CHECK(zc.rule == "R7");
    CHECK(zc.kind == VerdictKind::Plastic);
    REQUIRE(zc.falsification);
    CHECK(!zc.falsification->counterexample);
    // Shifts and reflections of the integers are isometries.
    CHECK(zc.falsification->bijective >= 10);
}

TEST_CASE("R3 extremal gaps")
{
    const auto s = parse_space("gapseq: anchor=0 right=[1,2]+const(3) left=[2]+const(3)");
    const auto c = classify(s);
    CHECK(c.rule == "R3");
    CHECK(c.structure == Structure::IdentityOrTotalSymmetry);
    REQUIRE(c.trace.extremal);
    const auto& e = *c.trace.extremal;
    CHECK(!e.maximum);
    CHECK(e.gap == q(1));
    CHECK(e.multiplicity == 1);
    CHECK(e.points == std::vector<Scalar>{q(0), q(1)});

    // Maximum 5 twice; the minimum 1 repeats forever.
    const auto t = parse_space("gapseq: anchor=0 right=[5]+const(1) left=[5]+const(1)");
    const auto d = classify(t);
    CHECK(d.rule == "R3");
    REQUIRE(d.trace.extremal);
    CHECK(d.trace.extremal->maximum);
    CHECK(d.trace.extremal->points == std::vector<Scalar>{q(-5), q(0), q(0), q(5)});
    CHECK(d.trace.extremal->points.size() == 2 * d.trace.extremal->multiplicity);

    // Against window adjacent gaps.
    const Materialization m = materialize(t, W);
    std::vector<Scalar> found;
    for (std::size_t i = 1; i < m.points.size(); ++i) {
        if (m.points[i] - m.points[i - 1] == q(5)) {
            found.push_back(m.points[i - 1]);
            found.push_back(m.points[i]);
        }
    }
    CHECK(found == d.trace.extremal->points);

    // Every verified bijection of the family maps X_a onto itself.
    REQUIRE(d.falsification);
    for (const auto& phi : d.falsification->bijections) {
        std::multiset<Scalar> before(d.trace.extremal->points.begin(), d.trace.extremal->points.end());
        std::multiset<Scalar> after;
        for (const auto& x : d.trace.extremal->points) {
            after.insert(eval(phi, t, x));
        }
        CHECK(before == after);
    }
    CHECK(!d.falsification->bijections.empty());
}

TEST_CASE("R4 interval shift")
{
    const auto s =
        parse_space("intervalseq: anchor=0 lenr=affine(n) gapr=const(1) lenl=const(1) gapl=const(1) topo=closed");
    const auto c = classify(s, quick());
    CHECK(c.rule == "R4");
    require_sound(c, s);
    const auto m = classify(negate(s), quick());
    CHECK(m.rule == "R4");
    require_sound(m, negate(s));
}

TEST_CASE("R5 half-line")
{
    const auto s = parse_space("points: -1\nhalfline: (0,+inf)");
    const auto c = classify(s);
    CHECK(c.rule == "R5");
    require_sound(c, s);
    CHECK(eval(*c.witness, s, q(-1)) == q(-1));
    CHECK(eval(*c.witness, s, q(6)) == q(3));
    // Any two points of the half-line contract by 1/2.
    CHECK(eval(*c.witness, s, q(3)) - eval(*c.witness, s, q(1, 3)) == (q(3) - q(1, 3)) * q(1, 2));

    const auto far = parse_space("halfline: (-inf,40]");
    const auto f = classify(far, quick());
    CHECK(f.rule == "R5");
    require_sound(f, far);
    CHECK(f.window.contains(q(40)));

    const auto line = parse_space("halfline: (-inf,+inf)");
    CHECK(classify(line, quick()).rule == "R5");
}

TEST_CASE("R6 periodic intervals")
{
    const auto open = parse_space("periodic: len=1 gap=1 anchor=0 topo=open dir=both");
    const auto o = classify(open);
    CHECK(o.rule == "R6a");
    CHECK(o.kind == VerdictKind::Plastic);
    REQUIRE(o.falsification);
    CHECK(!o.falsification->counterexample);

    const auto rz = parse_space("periodic: len=1 gap=0 anchor=0 topo=open dir=both");
    const auto r = classify(rz);
    CHECK(r.rule == "R6a");
    CHECK(!r.falsification->counterexample);

    const auto closed = parse_space("periodic: len=1 gap=1 anchor=0 topo=closed dir=both");
    CHECK(classify(closed, quick()).rule == "R6a");

    for (const char* topo : {"left-closed", "right-closed"}) {
        const auto s = parse_space(std::string("periodic: len=1 gap=1 anchor=0 topo=") + topo + " dir=both");
        const auto c = classify(s);
        CHECK(c.rule == "R6b");
        require_sound(c, s);
        const auto n = classify(negate(s), quick());
        CHECK(n.rule == "R6b");
        require_sound(n, negate(s));
    }

    const auto ragged = parse_space("periodic: len=2 gap=1/2 anchor=37 topo=left-closed dir=both");
    const auto g = classify(ragged, quick());
    CHECK(g.rule == "R6b");
    require_sound(g, ragged);
    CHECK(g.window == W);
}

TEST_CASE("R6b on closed intervals followed by a half-open tail")
{
    const auto s = parse_space("periodic: len=1 gap=1 anchor=0 topo=closed dir=left\n"
                               "periodic: len=1 gap=1 anchor=2 topo=right-closed dir=right");
    const auto c = classify(s);
    CHECK(c.rule == "R6b");
    require_sound(c, s);
    // The closed intervals stay fixed.
    CHECK(eval(*c.witness, s, q(0)) == q(0));
    CHECK(eval(*c.witness, s, q(-4)) == q(-4));

    const auto n = classify(negate(s));
    CHECK(n.rule == "R6b");
    require_sound(n, negate(s));

    // Closed then open is not covered by any rule.
    const auto other = parse_space("periodic: len=1 gap=1 anchor=0 topo=closed dir=left\n"
                                   "periodic: len=1 gap=1 anchor=2 topo=open dir=right");
    CHECK(classify(other, quick()).kind == VerdictKind::Unknown);
}

TEST_CASE("the alternating sequence stays unknown")
{
    const auto s = parse_space("gapseq: anchor=0 right=alt(affine(n),recip(n+1)) left=alt(recip(n+1),affine(n+1))");
    const auto c = classify(s);
    CHECK(c.kind == VerdictKind::Unknown);
    CHECK(c.rule == "fallback");
    REQUIRE(c.notes.size() == 1);
    CHECK(c.notes[0].find("known to be plastic") != std::string::npos);
    bool r1_rejected = false;
    for (const auto& st : c.trace.steps) {
        if (st.rule == "R1") {
            r1_rejected = !st.matched && st.evidence.find("non-decreasing: no") != std::string::npos;
        }
        if (st.rule == "R3") {
            CHECK(st.evidence == "no minimum, no maximum");
        }
    }
    CHECK(r1_rejected);
    REQUIRE(c.falsification);
    CHECK(!c.falsification->counterexample);
}

TEST_CASE("bounded and example sets")
{
    CHECK(classify(parse_space("interval: [0,1]"), quick()).rule == "R0");
    CHECK(classify(parse_space("points: 0 1 3"), quick()).rule == "R0");
    const auto e1 = classify(load_space(test::data("example1.sp")));
    CHECK(e1.kind == VerdictKind::Unknown);
    // Gaps 2 on the left and 1 on the right: the shift toward the right is a witness.
    const auto e2s = load_space(test::data("example2.sp"));
    const auto e2 = classify(e2s);
    CHECK(e2.rule == "R1");
    require_sound(e2, e2s);
}

TEST_CASE("verify_witness")
{
    const auto z = parse_space("arith: anchor=0 step=1 dir=both");
    const auto id = MapDescription::affine(q(1), q(0));
    const auto b = verify_witness(z, id, W);
    CHECK(b.endomorphism.pass());
    CHECK(b.nonexpansive.pass());
    CHECK(b.bijection.pass());
    CHECK(b.isometry.pass());
    CHECK(!b.pass());

    MapDescription bare;
    bare.rules.emplace_back(IndexShiftRule{0, 1});
    try {
        verify_witness(z, bare, W);
        FAIL("expected InverseMissing");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InverseMissing);
    }
}

TEST_CASE("metadata must validate")
{
    const auto s = parse_space("arith: anchor=0 step=1 dir=both\nmeta: accum=1/2");
    try {
        classify(s);
        FAIL("expected MetadataUnvalidated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MetadataUnvalidated);
    }
}

TEST_CASE("generated gap sequences")
{
    std::mt19937_64 rng(test::seed(53));
    const char* rules[] = {"const(1)", "const(2)", "affine(n)", "affine(2*n+1)", "recipdiff(n+1)", "alt(const(1),const(2))"};
    for (int trial = 0; trial < 30; ++trial) {
        std::string right = rules[rng() % 6];
        std::string left = rules[rng() % 6];
        if (rng() % 3 == 0) {
            right = "[" + std::to_string(1 + rng() % 3) + "]+" + right;
        }
        const auto s = parse_space("gapseq: anchor=0 right=" + right + " left=" + left);
        CAPTURE(s.str());
        const auto c = classify(s);
        const Bounds b = is_bounded(s);
        if (b.bounded_below() && b.bounded_above()) {
            CHECK(c.rule == "R0");
        }
        if (c.rule == "R1") {
            CHECK(!b.bounded_below());
            CHECK(!b.bounded_above());
        }
        if (c.kind == VerdictKind::NotPlastic) {
            require_sound(c, s);
        }
        if (c.falsification && c.falsification->counterexample) {
            CHECK(c.kind == VerdictKind::NotPlastic);
        }
        const auto n = classify(negate(s));
        CHECK(n.kind == c.kind);
        CHECK(n.rule == c.rule);
    }
}
