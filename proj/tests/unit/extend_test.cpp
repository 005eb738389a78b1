#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "plasti/extend.hpp"
#include "support.hpp"

using namespace plasti;
using test::q;

namespace {

// Least total length over every simple chain, by exhaustive search.
Scalar brute_chain(const DistanceMatrix& m, std::size_t from, std::size_t to)
{
    const std::size_t n = m.size();
    std::vector<bool> used(n, false);
    Scalar best = m.d[from][to];
    std::function<void(std::size_t, const Scalar&)> walk = [&](std::size_t v, const Scalar& len) {
        if (len >= best) {
            return;
        }
        if (v == to) {
            best = len;
            return;
        }
        used[v] = true;
        for (std::size_t w = 0; w < n; ++w) {
            if (!used[w]) {
                walk(w, len + m.d[v][w]);
            }
        }
        used[v] = false;
    };
    walk(from, Scalar(0));
    return best;
}

AugmentedSpace bridge()
{
    AugmentedSpace a;
    a.inner = FiniteSpace::make({q(0), q(10)});
    a.outer = {"p"};
    DistanceMatrix m = DistanceMatrix::zero(a.labels());
    m.d[0][1] = m.d[1][0] = q(10);
    m.d[0][2] = m.d[2][0] = q(1);
    m.d[1][2] = m.d[2][1] = q(1);
    a.proposed = m;
    return a;
}

/// Random inner sample plus outer labels with arbitrary positive proposed distances.
AugmentedSpace random_aug(std::mt19937_64& rng, std::size_t n_inner, std::size_t n_outer)
{
    std::set<long> xs;
    while (xs.size() < n_inner) {
        xs.insert(static_cast<long>(rng() % 41) - 20);
    }
    AugmentedSpace a;
    std::vector<Scalar> pts;
    for (const long x : xs) {
        pts.push_back(q(x));
    }
    a.inner = FiniteSpace::make(pts);
    for (std::size_t i = 0; i < n_outer; ++i) {
        a.outer.push_back("o" + std::to_string(i));
    }
    a.x0 = pts[rng() % pts.size()];
    DistanceMatrix m = DistanceMatrix::zero(a.labels());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            const Scalar v = j < n_inner ? dist(pts[i], pts[j]) : q(1 + static_cast<long>(rng() % 30), 2);
            m.d[i][j] = m.d[j][i] = v;
        }
    }
    a.proposed = m;
    return a;
}

}  // namespace

TEST_CASE("path infimum examples")
{
    const auto r = path_infimum_metric(bridge());
    CHECK(r.metric.at("0", "10") == q(2));
    REQUIRE(r.shrinkage.size() == 1);
    CHECK(r.shrinkage[0].a == "0");
    CHECK(r.shrinkage[0].b == "10");
    CHECK(r.shrinkage[0].euclidean == q(10));
    CHECK(r.shrinkage[0].closed == q(2));
    CHECK(r.shrinkage[0].chain == std::vector<std::string>{"0", "p", "10"});
    const auto restriction = check_restriction(r.metric, bridge().inner);
    REQUIRE(restriction.changes.size() == 1);
    CHECK(restriction.changes[0].euclidean == q(10));
    CHECK(restriction.changes[0].value == q(2));

    AugmentedSpace plain;
    plain.inner = FiniteSpace::make({q(0), q(1), q(3)});
    plain.proposed = DistanceMatrix::zero(plain.labels());
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            plain.proposed->d[i][j] = dist(plain.inner.points[i], plain.inner.points[j]);
        }
    }
    const auto p = path_infimum_metric(plain);
    CHECK(p.metric.d == plain.proposed->d);
    CHECK(p.shrinkage.empty());
    CHECK(check_restriction(p.metric, plain.inner).pass());

    AugmentedSpace far;
    far.inner = FiniteSpace::make({q(0), q(1)});
    far.outer = {"p"};
    far.proposed = DistanceMatrix::zero(far.labels());
    auto& d = far.proposed->d;
    d[0][1] = d[1][0] = q(1);
    d[0][2] = d[2][0] = q(5);
    d[1][2] = d[2][1] = q(5);
    const auto f = path_infimum_metric(far);
    CHECK(f.metric.at("0", "1") == q(1));
    CHECK(f.metric.at("0", "p") == q(5));
    CHECK(f.shrinkage.empty());
}

TEST_CASE("path infimum against exhaustive chains")
{
    std::mt19937_64 rng(test::seed(61));
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_aug(rng, 2 + rng() % 4, rng() % 4);
        const auto r = path_infimum_metric(a);
        const DistanceMatrix& m = *a.proposed;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m.size(); ++j) {
                if (i != j) {
                    CHECK(r.metric.d[i][j] == brute_chain(m, i, j));
                    CHECK(r.metric.d[i][j] <= m.d[i][j]);
                }
            }
        }
        CHECK(check_metric_axioms(r.metric).pass());
        CHECK(shortest_path_closure(r.metric).d == r.metric.d);
        for (const auto& s : r.shrinkage) {
            Scalar total;
            for (std::size_t k = 1; k < s.chain.size(); ++k) {
                total += m.at(s.chain[k - 1], s.chain[k]);
            }
            CHECK(total == s.closed);
            CHECK(s.closed < s.euclidean);
            CHECK(s.chain.front() == s.a);
            CHECK(s.chain.back() == s.b);
        }
        CHECK(check_restriction(r.metric, a.inner).changes.size() == r.shrinkage.size());
    }
}

TEST_CASE("railway extension")
{
    AugmentedSpace a;
    a.inner = FiniteSpace::make({q(0), q(1)});
    a.outer = {"p"};
    a.x0 = q(0);
    DistanceMatrix om = discrete_outer_metric(a);
    om.d[0][1] = om.d[1][0] = q(5);
    const auto r = railway_extension(a, om);
    CHECK(r.at("1", "p") == q(6));
    CHECK(r.at("0", "p") == q(5));
    CHECK(r.at("0", "1") == q(1));

    AugmentedSpace b;
    b.inner = FiniteSpace::make({q(0), q(1)});
    b.outer = {"p", "q"};
    b.x0 = q(0);
    const auto d = railway_extension(b);
    CHECK(d.at("p", "q") == q(1));
    CHECK(d.at("1", "p") == q(2));

    AugmentedSpace single;
    single.inner = FiniteSpace::make({q(0)});
    single.outer = {"p"};
    single.x0 = q(0);
    DistanceMatrix so = discrete_outer_metric(single);
    so.d[0][1] = so.d[1][0] = q(7, 2);
    CHECK(railway_extension(single, so).at("0", "p") == q(7, 2));
    CHECK(check_restriction(railway_extension(single, so), single.inner).pass());

    // A broken outer metric is rejected.
    AugmentedSpace c = b;
    DistanceMatrix bad = discrete_outer_metric(c);
    bad.d[1][2] = bad.d[2][1] = q(3);
    try {
        railway_extension(c, bad);
        FAIL("expected OuterMetricInvalid");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OuterMetricInvalid);
    }
    AugmentedSpace no_base = b;
    no_base.x0.reset();
    CHECK_THROWS_AS(railway_extension(no_base), Error);
}

TEST_CASE("railway instances satisfy the axioms and restrict correctly")
{
    std::mt19937_64 rng(test::seed(67));
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n_inner = 1 + rng() % 7;
        const std::size_t n_outer = 1 + rng() % (12 - n_inner);
        auto a = random_aug(rng, n_inner, n_outer);
        // Outer metric: points on a line, so the axioms hold.
        DistanceMatrix om = discrete_outer_metric(a);
        std::vector<Scalar> pos;
        for (std::size_t i = 0; i < om.size(); ++i) {
            pos.push_back(q(static_cast<long>(i) * 3 + static_cast<long>(rng() % 3), 2));
        }
        for (std::size_t i = 0; i < om.size(); ++i) {
            for (std::size_t j = 0; j < om.size(); ++j) {
                om.d[i][j] = dist(pos[i], pos[j]);
            }
        }
        const auto r = railway_extension(a, om);
        CHECK(r.size() <= 12);
        CHECK(check_metric_axioms(r).pass());
        CHECK(check_restriction(r, a.inner).pass());
        // Three-case formula, entry by entry.
        for (const auto& x : r.labels) {
            for (const auto& y : r.labels) {
                Scalar want;
                if (x.name == y.name) {
                    want = q(0);
                } else if (!x.outer && !y.outer) {
                    want = dist(x.value, y.value);
                } else if (x.outer && y.outer) {
                    want = om.at(x.name, y.name);
                } else {
                    const Label& in = x.outer ? y : x;
                    const Label& ex = x.outer ? x : y;
                    want = dist(in.value, *a.x0) + om.at(a.x0->str(), ex.name);
                }
                CHECK(r.at(x.name, y.name) == want);
            }
        }
        CHECK(check_metric_axioms(railway_extension(a)).pass());
    }
}

TEST_CASE("metric axiom report")
{
    DistanceMatrix m = DistanceMatrix::zero({Label::external("a"), Label::external("b"), Label::external("c")});
    m.d[0][1] = m.d[1][0] = q(5);
    m.d[1][2] = m.d[2][1] = q(1);
    m.d[0][2] = m.d[2][0] = q(10);
    const auto r = check_metric_axioms(m);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == AxiomViolation::Kind::Triangle);
    CHECK(r.violations[0].labels == std::vector<std::string>{"a", "b", "c"});

    m.d[0][1] = q(4);
    m.d[2][2] = q(1);
    const auto s = check_metric_axioms(m);
    bool symmetry = false;
    bool diagonal = false;
    for (const auto& v : s.violations) {
        symmetry = symmetry || v.kind == AxiomViolation::Kind::Symmetry;
        diagonal = diagonal || (v.kind == AxiomViolation::Kind::NonDegeneracy && v.labels[0] == "c");
    }
    CHECK(symmetry);
    CHECK(diagonal);
}

TEST_CASE("matrix files")
{
    const auto f = parse_matrix("inner: 0 10\nouter: p\nx0: 0\nrow: 10 1\nrow: 1\n");
    REQUIRE(f.aug.proposed);
    CHECK(path_infimum_metric(f.aug).metric.at("0", "10") == q(2));
    CHECK(!f.outer_metric);

    const auto g = parse_matrix("inner: 0 1\nouter: p q\nx0: 1\nouter-row: 2 3 # x0 to p, q\nouter-row: 4\n");
    REQUIRE(g.outer_metric);
    const auto r = railway_extension(g.aug, g.outer_metric);
    CHECK(r.at("0", "q") == q(4));
    CHECK(r.at("p", "q") == q(4));

    try {
        parse_matrix("inner: 0 10\nrow: 10 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        // The first surplus entry.
        CHECK(e.line() == 2);
        CHECK(e.column() == 9);
    }
    try {
        parse_matrix("inner: 0 10\nrow: 9\n");
        FAIL("expected InvalidMatrix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidMatrix);
    }
    try {
        parse_matrix("inner: 0 1\nouter: p\nrow: 1 0\nrow: 2\n");
        FAIL("expected InvalidMatrix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidMatrix);
    }
    try {
        parse_matrix("inner: 0 1\nbogus: 3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 1);
    }
}
