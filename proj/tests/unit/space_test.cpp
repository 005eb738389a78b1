#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "plasti/error.hpp"
#include "plasti/space.hpp"
#include "plasti/space_parse.hpp"

using namespace plasti;

namespace {

Scalar q(long n, long d = 1) { return Scalar(n, d); }

std::vector<Scalar> ints(long lo, long hi)
{
    std::vector<Scalar> out;
    for (long i = lo; i <= hi; ++i) {
        out.push_back(q(i));
    }
    return out;
}

// Gap between a_i and a_{i+1} of the two-sided alternating sequence, with 1/2 at i = -1.
Scalar alternating_gap(long i)
{
    if (i % 2 == 0) {
        const long k = i / 2;
        return q((k < 0 ? -k : k) + 1);
    }
    const long k = (i + 1) / 2;
    if (k >= 1) {
        return q(1, k + 1);
    }
    return q(1, (k < 0 ? -k : k) + 2);
}

// a_i for |i| <= n with a_0 = 0, built directly from the gap formula.
std::vector<Scalar> alternating_points(long n)
{
    std::vector<Scalar> out{q(0)};
    Scalar x;
    for (long i = 0; i < n; ++i) {
        x += alternating_gap(i);
        out.push_back(x);
    }
    x = q(0);
    for (long i = -1; i >= -n; --i) {
        x -= alternating_gap(i);
        out.insert(out.begin(), x);
    }
    return out;
}

bool throws_kind(ErrorKind kind, const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

const char* kQ = "arith: anchor=0 step=1 dir=right\n"
                 "gapseq: anchor=1/2 left=recipdiff(n+3)\n";

}  // namespace

TEST_CASE("integers materialize as a plain grid")
{
    const auto z = parse_space("arith: anchor=0 step=1 dir=both");
    const auto m = materialize(z, Window(q(-2), q(2)));
    CHECK(m.points == ints(-2, 2));
    CHECK(m.fragments.empty());
    CHECK_FALSE(m.truncated());
}

TEST_CASE("accumulating tail is capped and flagged")
{
    const auto a = parse_space(kQ);
    Limits lim;
    lim.accumulation_cap = 200;
    const auto m = materialize(a, Window(q(0), q(1)), lim);
    REQUIRE(m.truncated());
    CHECK(m.truncations.front().limit == q(1, 4));
    CHECK(m.points.front() == q(0));
    CHECK(m.points.back() == q(1));
    // Every enumerated point besides 0 and 1 is 1/4 + 1/n for some n >= 4.
    std::size_t q_points = 0;
    for (const auto& p : m.points) {
        if (p == q(0) || p == q(1)) {
            continue;
        }
        const Scalar inv = (p - q(1, 4)).reciprocal();
        CHECK(inv.is_integer());
        CHECK(inv >= q(4));
        ++q_points;
    }
    // The anchor 1/2 is n = 4; the capped tail adds n = 5 .. 204.
    CHECK(q_points == 201);
    CHECK(m.points[1] == q(1, 4) + q(1, 204));
}

TEST_CASE("open periodic intervals clip to the window")
{
    const auto a = parse_space("periodic: len=1 gap=1 anchor=0 topo=open dir=both");
    const auto m = materialize(a, Window(q(0), q(3)));
    REQUIRE(m.fragments.size() == 2);
    CHECK(m.fragments[0].interval == Interval::open(q(0), q(1)));
    CHECK(m.fragments[1].interval == Interval::open(q(2), q(3)));
    CHECK_FALSE(m.fragments[0].lo_artificial);
    CHECK_FALSE(m.fragments[1].hi_artificial);

    const auto clipped = materialize(a, Window(q(1, 2), q(5, 2)));
    REQUIRE(clipped.fragments.size() == 2);
    CHECK(clipped.fragments[0].interval == Interval::make(q(1, 2), true, q(1), false));
    CHECK(clipped.fragments[0].lo_artificial);
    CHECK(clipped.fragments[1].hi_artificial);
}

TEST_CASE("window errors")
{
    const auto a = parse_space("points: 0 1 3");
    CHECK(throws_kind(ErrorKind::EmptyWindow, [&] { materialize(a, Window(q(4), q(5))); }));
    const auto overlap = parse_space("points: 0 1\ninterval: [1,2]");
    CHECK(throws_kind(ErrorKind::OverlappingComponents, [&] { materialize(overlap, Window(q(-1), q(3))); }));
    const auto harmonic = parse_space("gapseq: anchor=0 right=recip(n+0)");
    CHECK(throws_kind(ErrorKind::RuleDivergence, [&] { materialize(harmonic, Window(q(30), q(31)), Limits{10'000, 5'000}); }));
}

TEST_CASE("materialize is monotone in the window")
{
    const auto a = parse_space("gapseq: anchor=0 right=affine(n) left=[1,1/2]+const(3)\nperiodic: len=1/10 gap=59/10 anchor=1/7 "
                               "topo=left-closed dir=both");
    std::mt19937_64 rng(test::seed(7));
    for (int t = 0; t < 30; ++t) {
        const long lo = static_cast<long>(rng() % 20) - 20;
        const long hi = lo + 3 + static_cast<long>(rng() % 20);
        const auto small = materialize(a, Window(q(lo), q(hi)));
        const auto big = materialize(a, Window(q(lo - 3), q(hi + 4)));
        for (const auto& p : small.points) {
            CHECK(std::binary_search(big.points.begin(), big.points.end(), p));
        }
        for (const auto& f : small.fragments) {
            CHECK(first_missing(a, f.interval) == std::nullopt);
        }
    }
}

TEST_CASE("membership and indices")
{
    const auto a = parse_space("gapseq: anchor=0 right=[1,2]+const(3) left=affine(n)");
    CHECK(contains(a, q(6)));
    CHECK(contains(a, q(3003)));
    CHECK_FALSE(contains(a, q(3004)));
    CHECK(contains(a, q(-3)));
    CHECK_FALSE(contains(a, q(-4)));
    CHECK(locate(a, q(9))->index == 4);
    CHECK(locate(a, q(-6))->index == -3);
    CHECK(*point_at(a, 0, 4) == q(9));
    CHECK(*point_at(a, 0, -3) == q(-6));
    CHECK(*successor(a, q(7)) == q(9));
    CHECK(*successor(a, q(-7)) == q(-6));
    CHECK(*predecessor(a, q(0)) == q(-1));
    CHECK(*predecessor(a, q(1000)) == q(999));

    const auto qset = parse_space(kQ);
    CHECK(contains(qset, q(1, 4) + q(1, 17)));
    CHECK_FALSE(contains(qset, q(1, 4)));
    CHECK_FALSE(successor(qset, q(1, 8)).has_value());
    CHECK(*successor(qset, q(1, 2)) == q(1));

    const auto p = parse_space("periodic: len=1 gap=1 anchor=0 topo=left-closed dir=both");
    CHECK(contains(p, q(-2)));
    CHECK_FALSE(contains(p, q(-1)));
    CHECK(contains(p, q(101, 2)));
    CHECK_FALSE(contains(p, q(203, 2)));
    CHECK(contains(p, q(401, 4)));
    CHECK(*interval_at(p, 0, -2) == Interval::make(q(-4), true, q(-3), false));
    CHECK(first_missing(p, Interval::make(q(0), true, q(1), false)) == std::nullopt);
    CHECK(*first_missing(p, Interval::closed(q(0), q(1))) == q(1));
    CHECK(throws_kind(ErrorKind::NotDiscrete, [&] { successor(p, q(0)); }));
}

TEST_CASE("gap spectrum")
{
    const auto z = parse_space("arith: anchor=0 step=1");
    const auto sz = gap_spectrum(z);
    REQUIRE(sz);
    REQUIRE(sz->entries.size() == 1);
    CHECK(sz->entries[0].gap == q(1));
    CHECK(sz->entries[0].multiplicity.infinite);
    CHECK(sz->exactness == GapSpectrum::Exactness::Exact);

    const auto f = parse_space("points: 0 1 3");
    const auto sf = gap_spectrum(f);
    REQUIRE(sf);
    REQUIRE(sf->entries.size() == 2);
    CHECK(sf->entries[0].gap == q(1));
    CHECK(sf->entries[0].multiplicity == Multiplicity::finite(1));
    CHECK(sf->entries[1].gap == q(2));
    CHECK(sf->entries[1].multiplicity == Multiplicity::finite(1));

    CHECK(throws_kind(ErrorKind::NotDiscrete, [] { gap_spectrum(parse_space("interval: [0,1]")); }));
}

TEST_CASE("alternating sequence spectrum")
{
    const auto a = parse_space("gapseq: anchor=0 right=alt(affine(n),recip(n+1)) left=alt(recip(n+1),affine(n+1))");
    const auto oracle = alternating_points(6);
    const Window w(oracle.front(), oracle.back());
    const auto m = materialize(a, w);
    CHECK(m.points == oracle);
    for (const auto& x : oracle) {
        CHECK(contains(a, x));
        CHECK_FALSE(contains(a, x + q(1, 100)));
    }

    const auto s = gap_spectrum(a, w);
    CHECK(s.exactness == GapSpectrum::Exactness::WindowLowerBound);
    std::map<Scalar, std::uint64_t> expected;
    for (long i = -6; i < 6; ++i) {
        ++expected[alternating_gap(i)];
    }
    REQUIRE(s.entries.size() == expected.size());
    for (const auto& e : s.entries) {
        CHECK(expected[e.gap] == e.multiplicity.count);
    }
    for (const Scalar& g : {q(1, 3), q(1, 2), q(1), q(2), q(3)}) {
        CHECK(expected.count(g) == 1);
    }

    const auto sym = gap_spectrum(a);
    REQUIRE(sym);
    CHECK_FALSE(sym->has_minimum());
    CHECK_FALSE(sym->has_maximum());
    CHECK(sym->minimum.kind == Extremum::Kind::NotAttained);
    CHECK(sym->minimum.value == q(0));
    CHECK(sym->maximum.kind == Extremum::Kind::Infinite);
}

TEST_CASE("spectrum entries are adjacent pairs")
{
    const auto a = parse_space("points: -7 -2 0 1/3\ngapseq: anchor=5 right=affine(2n+1) left=[1,1]");
    const Window w(q(-10), q(60));
    const auto m = materialize(a, w);
    const auto s = gap_spectrum(a, w);
    for (const auto& e : s.entries) {
        bool realised = false;
        for (std::size_t i = 0; i < m.points.size(); ++i) {
            for (std::size_t j = i + 1; j < m.points.size(); ++j) {
                if (m.points[j] - m.points[i] != e.gap) {
                    continue;
                }
                bool between = false;
                for (const auto& p : m.points) {
                    between = between || (m.points[i] < p && p < m.points[j]);
                }
                realised = realised || !between;
            }
        }
        CHECK(realised);
    }
}

TEST_CASE("ball census")
{
    CHECK(ball_census(parse_space("points: 0 1/2 3"), q(0), q(1), Window(q(-5), q(5))) == 2);
    CHECK(ball_census(parse_space("arith: anchor=0 step=1"), q(0), q(5, 2), Window(q(-5), q(5))) == 5);

    const auto alt = parse_space("gapseq: anchor=0 right=alt(affine(n),recip(n+1)) left=alt(recip(n+1),affine(n+1))");
    const auto oracle = alternating_points(8);
    std::size_t brute = 0;
    for (const auto& p : oracle) {
        brute += dist(p, q(0)) < q(1) ? 1 : 0;
    }
    CHECK(ball_census(alt, q(0), q(1), Window(q(-5), q(5))) == brute);
    CHECK(brute == 2);

    CHECK(throws_kind(ErrorKind::WindowTooSmall,
                      [] { ball_census(parse_space("points: 0"), q(0), q(6), Window(q(-5), q(5))); }));
    const auto qset = parse_space(kQ);
    Limits lim;
    lim.accumulation_cap = 100;
    CHECK(throws_kind(ErrorKind::WindowTooSmall, [&] { ball_census(qset, q(1, 4), q(1, 100), Window(q(0), q(1)), lim); }));
    std::size_t near_half = 1;
    for (long n = 5; n < 2000; ++n) {
        near_half += dist(q(1, 4) + q(1, n), q(1, 2)) < q(1, 5) ? 1 : 0;
    }
    CHECK(ball_census(qset, q(1, 2), q(1, 5), Window(q(0), q(1)), lim) == near_half);

    std::mt19937_64 rng(test::seed(11));
    const auto z = parse_space("gapseq: anchor=0 right=[1,2]+affine(n) left=const(3/2)");
    for (int t = 0; t < 40; ++t) {
        const Scalar c(static_cast<long>(rng() % 20) - 10, 3);
        const Scalar r1(1 + static_cast<long>(rng() % 12), 4);
        const Scalar r2 = r1 + Scalar(static_cast<long>(rng() % 5), 4);
        CHECK(ball_census(z, c, r1, Window(q(-20), q(20))) <= ball_census(z, c, r2, Window(q(-20), q(20))));
    }
}

TEST_CASE("hull and bounds")
{
    CHECK(hull(parse_space("points: 0 1 3")) == Interval::closed(q(0), q(3)));
    CHECK(hull(parse_space("interval: (0,1) (2,3)")) == Interval::open(q(0), q(3)));
    CHECK(hull(parse_space("arith: anchor=0 step=1 dir=right")) ==
          Interval{Endpoint::finite(q(0), true), Endpoint::pos_inf()});
    CHECK(hull(parse_space("points: 5")) == Interval::point(q(5)));
    CHECK(hull(parse_space("gapseq: anchor=1/2 left=recipdiff(n+3)")) == Interval::make(q(1, 4), false, q(1, 2), true));

    const auto unit = is_bounded(parse_space("interval: [0,1]"));
    CHECK(unit.below.kind == Extremum::Kind::Attained);
    CHECK(unit.above.kind == Extremum::Kind::Attained);
    const auto z = is_bounded(parse_space("arith: anchor=0 step=1"));
    CHECK_FALSE(z.bounded_below());
    CHECK_FALSE(z.bounded_above());
    const auto qb = is_bounded(parse_space(kQ));
    CHECK(qb.below.kind == Extremum::Kind::Attained);
    CHECK(qb.below.value == q(0));
    CHECK_FALSE(qb.bounded_above());

    const auto seq = is_bounded(parse_space("intervalseq: anchor=0 lenr=[1,1] gapr=[2] lenl=const(1) gapl=recip(n+0) topo=open"));
    CHECK_FALSE(seq.bounded_below());
    CHECK(seq.above.kind == Extremum::Kind::NotAttained);
    CHECK(seq.above.value == q(4));
}

TEST_CASE("hull contains the space and is idempotent")
{
    std::mt19937_64 rng(test::seed(3));
    for (int t = 0; t < 50; ++t) {
        std::vector<Scalar> pts;
        Scalar x(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 3));
        for (int i = 0; i < 4; ++i) {
            pts.push_back(x);
            x += Scalar(1 + static_cast<long>(rng() % 5), 2);
        }
        SubspaceDescription a = make_space({FinitePoints{pts}});
        if (rng() % 2 == 0) {
            a.components.push_back(IntervalList{{Interval::make(x + q(1), rng() % 2 == 0, x + q(3), rng() % 2 == 0)}});
        }
        const Interval h = hull(a);
        const auto m = materialize(a, Window(q(-40), q(40)));
        for (const auto& p : m.points) {
            CHECK(h.contains(p));
        }
        for (const auto& f : m.fragments) {
            CHECK(h.contains(f.interval));
        }
        CHECK(hull(as_space(h)) == h);
    }
}

TEST_CASE("metadata validation")
{
    auto z = parse_space("arith: anchor=0 step=1\nmeta: no-accum");
    const auto rz = validate_metadata(z, Window(q(-10), q(10)));
    REQUIRE(rz.checks.size() == 1);
    CHECK(rz.pass());
    CHECK(*rz.checks[0].gap_lower_bound == q(1));

    Limits lim;
    lim.accumulation_cap = 500;
    const auto good = parse_space(std::string(kQ) + "meta: accum=1/4 bounded-below=attained(0) bounded-above=unbounded");
    CHECK(validate_metadata(good, Window(q(0), q(10)), lim).pass());

    const auto bad = parse_space(std::string(kQ) + "meta: no-accum");
    const auto rb = validate_metadata(bad, Window(q(0), q(10)), lim);
    CHECK_FALSE(rb.pass());
    REQUIRE(rb.checks[0].witness);
    const auto [x, y] = *rb.checks[0].witness;
    CHECK(y - x < q(1, 1000));
    CHECK(throws_kind(ErrorKind::DeclarationContradicted, [&] { rb.require_pass(); }));

    const auto wrong = parse_space("points: 0 1 3\nmeta: accum=2 bounded-below=attained(1)");
    const auto rw = validate_metadata(wrong, Window(q(-1), q(4)));
    REQUIRE(rw.checks.size() == 2);
    CHECK_FALSE(rw.checks[0].pass);
    CHECK_FALSE(rw.checks[1].pass);
}

TEST_CASE("negation mirrors every component")
{
    const auto a = parse_space("points: 1 2\narith: anchor=21/2 step=3 dir=left\ngapseq: anchor=-5 right=[1] left=affine(n)\n"
                               "intervalseq: anchor=30 lenr=[1,2] gapr=[1] lenl=[3] gapl=[2] topo=left-closed\n"
                               "halfline: (40,+inf)");
    const auto n = negate(a);
    const Window w(q(-60), q(60));
    const auto ma = materialize(a, w);
    const auto mn = materialize(n, w);
    REQUIRE(ma.points.size() == mn.points.size());
    for (std::size_t i = 0; i < ma.points.size(); ++i) {
        CHECK(ma.points[i] == -mn.points[mn.points.size() - 1 - i]);
    }
    REQUIRE(ma.fragments.size() == mn.fragments.size());
    for (std::size_t i = 0; i < ma.fragments.size(); ++i) {
        CHECK(negate(ma.fragments[i].interval) == mn.fragments[mn.fragments.size() - 1 - i].interval);
    }
}

TEST_CASE("normal form merges disjoint discrete parts")
{
    const auto a = parse_space("arith: anchor=0 step=1 dir=left\npoints: 3 5\ngapseq: anchor=10 right=const(2) left=[1]");
    const auto nf = discrete_normal_form(a);
    REQUIRE(nf);
    const auto merged = make_space({*nf});
    const Window w(q(-8), q(30));
    CHECK(materialize(merged, w).points == materialize(a, w).points);
    CHECK_FALSE(discrete_normal_form(parse_space(kQ)).has_value());
}

TEST_CASE("space grammar")
{
    const auto a = parse_space("# comment\n  gapseq : anchor = 1/2  right = [1, 2] + affine(2*n-1)  left=recip(n+0) # tail\n"
                               "meta: bounded-below=unattained(-1/2)");
    REQUIRE(a.components.size() == 1);
    const auto& g = std::get<GapSequence>(a.components[0]);
    CHECK(g.anchor == q(1, 2));
    CHECK(g.right.prefix == std::vector<Scalar>{q(1), q(2)});
    CHECK(g.right.tail->at(1) == q(1));
    CHECK(g.right.tail->at(3) == q(5));
    CHECK(g.left.tail->at(2) == q(1, 2));
    CHECK(a.meta.below->kind == BoundDeclaration::Kind::Unattained);

    const auto round = parse_space(a.str());
    CHECK(round.str() == a.str());

    try {
        parse_space("points: 0 1\narith: anchor=0 step=x");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 22);
    }
    try {
        parse_space("gapseq: right=square(n)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 15);
    }
    CHECK_THROWS_AS(parse_space("periodic: len=1 gap=0 topo=closed"), ParseError);
    CHECK_THROWS_AS(parse_space("arith: step=-1"), ParseError);
    CHECK_THROWS_AS(parse_space("wobble: 1"), ParseError);
}

TEST_CASE("scalar text round trip")
{
    std::mt19937_64 rng(test::seed(5));
    for (int t = 0; t < 200; ++t) {
        const Scalar s(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 97));
        CHECK(Scalar::parse(s.str()) == s);
    }
}

TEST_CASE("exact partial sums have a size budget")
{
    const auto h = parse_space("gapseq: anchor=0 right=recip(n+1)");
    CHECK(throws_kind(ErrorKind::CapExceeded, [&] { materialize(h, Window(q(0), q(60))); }));
    const auto m = materialize(h, Window(q(0), q(3)));
    std::size_t want = 1;
    Scalar u(0);
    for (long n = 1; (u += q(1, n + 1)) <= q(3); ++n) {
        ++want;
    }
    CHECK(m.points.size() == want);
    Limits tight;
    tight.max_bits = 8;
    CHECK(throws_kind(ErrorKind::CapExceeded, [&] { materialize(h, Window(q(0), q(3)), tight); }));
}
