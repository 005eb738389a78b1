// One line per acceptance criterion; exits nonzero when any fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "plasti/classify.hpp"
#include "plasti/cli/commands.hpp"
#include "plasti/cli/gallery.hpp"
#include "plasti/cli/plot.hpp"
#include "plasti/error.hpp"
#include "plasti/extend.hpp"
#include "plasti/maps.hpp"
#include "plasti/oracle.hpp"
#include "plasti/space.hpp"
#include "plasti/space_parse.hpp"

using namespace plasti;

namespace {

std::uint64_t seed(std::uint64_t base)
{
    if (const char* s = std::getenv("PLASTI_SEED")) {
        return base ^ std::strtoull(s, nullptr, 10);
    }
    return base;
}

Scalar q(long n, long d = 1) { return Scalar(n, d); }

/// Collects failures for one criterion.
struct Result {
    std::vector<std::string> failures;
    std::string summary;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            failures.push_back(what);
        }
    }
};

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string data(const std::string& name) { return std::string(PLASTI_DATA_DIR) + "/" + name; }

std::string str(const std::vector<Scalar>& xs)
{
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? "," : "") + xs[i].str();
    }
    return s + "}";
}

std::uint64_t power(std::uint64_t b, std::uint64_t e)
{
    std::uint64_t r = 1;
    while (e-- > 0) {
        r *= b;
    }
    return r;
}

bool discrete(const SubspaceDescription& s)
{
    return std::all_of(s.components.begin(), s.components.end(), [](const Component& c) { return is_discrete(c); });
}

// ---- criteria ----------------------------------------------------------------------

Result gallery_regression(const std::string& id)
{
    Result r;
    const auto rep = cli::verify_gallery(id);
    for (const auto& item : rep.items) {
        r.expect(item.pass, item.name + ": " + item.detail);
    }
    r.summary = std::to_string(rep.items.size()) + " items";
    return r;
}

Result finite_plasticity()
{
    Result r;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed(1003));
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 7;
        std::set<Scalar> xs;
        while (xs.size() < n) {
            xs.insert(Scalar(static_cast<long>(rng() % 201) - 100, 1 + static_cast<long>(rng() % 4)));
        }
        const auto s = FiniteSpace::make({xs.begin(), xs.end()});
        const auto v = plastic_bruteforce(s);
        r.expect(v.kind == OracleKind::Plastic, str(s.points) + " gave " + to_string(v.kind));
    }
    for (long n = 2; n <= 8; ++n) {
        std::vector<Scalar> grid;
        for (long i = 0; i < n; ++i) {
            grid.push_back(q(i));
        }
        const auto b = nonexpansive_bijections(FiniteSpace::make(grid));
        r.expect(b.size() == 2, "grid of " + std::to_string(n) + ": " + std::to_string(b.size()) + " bijections");
    }
    const auto one = nonexpansive_bijections(FiniteSpace::make({q(0), q(1), q(3)}));
    r.expect(one.size() == 1, "{0,1,3}: " + std::to_string(one.size()) + " bijections");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.expect(secs < 30, "took " + std::to_string(secs) + " s");
    r.summary = "200 random sets, grids 2..8, {0,1,3}; " + std::to_string(secs).substr(0, 4) + " s";
    return r;
}

Result strong_plasticity()
{
    Result r;
    const std::vector<std::vector<long>> sets{{0, 1}, {0, 1, 2}, {0, 1, 3}, {0, 1, 2, 4}};
    for (const auto& set : sets) {
        std::vector<Scalar> pts;
        for (const long x : set) {
            pts.push_back(q(x));
        }
        const auto v = strongly_plastic_bruteforce(FiniteSpace::make(pts));
        const std::uint64_t want = power(pts.size(), pts.size());
        r.expect(v.kind == OracleKind::StronglyPlastic, str(pts) + " gave " + to_string(v.kind));
        r.expect(v.examined == want,
                 str(pts) + " examined " + std::to_string(v.examined) + ", expected " + std::to_string(want));
    }
    r.summary = "examined 4, 27, 27, 256";
    return r;
}

Result classifier_soundness()
{
    Result r;
    ClassifyOptions opt;
    opt.window = Window(q(-10), q(10));
    for (const std::string id : {"prop31", "prop313", "rem316-halfopen", "rem317-mixed"}) {
        const auto c = classify(cli::gallery_entry(id).space, opt);
        r.expect(c.kind == VerdictKind::NotPlastic, id + " gave " + to_string(c.kind));
        if (!c.witness) {
            r.expect(false, id + " has no witness");
            continue;
        }
        const auto b = verify_witness(c.witness_space, *c.witness, opt.window, opt.check);
        r.expect(b.endomorphism.pass(), id + ": endomorphism " + to_string(b.endomorphism.verdict));
        r.expect(b.nonexpansive.pass(), id + ": non-expansive " + to_string(b.nonexpansive.verdict));
        r.expect(b.bijection.pass(), id + ": bijection " + to_string(b.bijection.verdict));
        r.expect(!b.isometry.pass() && b.contraction() != nullptr, id + ": isometry did not fail");
    }
    const std::vector<std::pair<std::string, SubspaceDescription>> plastic{
        {"integers", cli::gallery_entry("integers").space},
        {"r-minus-z", cli::gallery_entry("r-minus-z").space},
        {"prop314-open", cli::gallery_entry("prop314-open").space},
        {"Z+", parse_space("arith: anchor=0 step=1 dir=right")},
    };
    for (const auto& [id, space] : plastic) {
        const auto c = classify(space, opt);
        r.expect(c.kind == VerdictKind::Plastic, id + " gave " + to_string(c.kind));
        const auto f = falsify(space, opt.window, opt.check);
        r.expect(!f.counterexample, id + ": counterexample " + (f.counterexample ? f.counterexample->str() : ""));
        r.expect(f.candidates > 0, id + ": empty family");
    }
    r.summary = "4 witness bundles, 4 falsification runs";
    return r;
}

Result ball_census_invariant()
{
    Result r;
    std::mt19937_64 rng(seed(1006));
    std::size_t maps = 0;
    std::size_t comparisons = 0;
    for (const auto& id : cli::gallery_ids()) {
        const auto e = cli::gallery_entry(id);
        if (!discrete(e.space)) {
            continue;
        }
        const auto pts = materialize(e.space, e.window, e.limits).points;
        for (const auto& m : e.maps) {
            CheckOptions o;
            o.limits = e.limits;
            if (!check_nonexpansive(m, e.space, e.window, o).pass() ||
                check_bijection(m, e.space, e.window, o).verdict == Verdict::Fail) {
                continue;
            }
            ++maps;
            const Scalar span = e.window.hi - e.window.lo;
            int found = 0;
            for (int attempt = 0; attempt < 20000 && found < 50; ++attempt) {
                const Scalar c = pts[rng() % pts.size()];
                const Scalar rad = span * Scalar(1 + static_cast<long>(rng() % 200), 1000);
                const Scalar img = eval(m, e.space, c, e.limits);
                const auto inside = [&](const Scalar& x) { return e.window.lo <= x - rad && x + rad <= e.window.hi; };
                if (!inside(c) || !inside(img)) {
                    continue;
                }
                std::size_t a = 0;
                std::size_t b = 0;
                try {
                    a = ball_census(e.space, c, rad, e.window, e.limits);
                    b = ball_census(e.space, img, rad, e.window, e.limits);
                } catch (const Error& err) {
                    if (err.kind() == ErrorKind::WindowTooSmall) {
                        continue;  // ball reaches a truncated tail
                    }
                    throw;
                }
                ++found;
                ++comparisons;
                r.expect(a <= b, id + "/" + m.name + ": census(" + c.str() + ", " + rad.str() + ") = " +
                                     std::to_string(a) + " > census(" + img.str() + ") = " + std::to_string(b));
            }
            r.expect(found == 50, id + "/" + m.name + ": only " + std::to_string(found) + " admissible balls");
        }
    }
    r.expect(maps > 0, "no maps qualified");
    r.summary = std::to_string(maps) + " maps, " + std::to_string(comparisons) + " comparisons";
    return r;
}

AugmentedSpace random_aug(std::mt19937_64& rng, std::size_t n_inner, std::size_t n_outer)
{
    std::set<long> xs;
    while (xs.size() < n_inner) {
        xs.insert(static_cast<long>(rng() % 61) - 30);
    }
    std::vector<Scalar> pts;
    for (const long x : xs) {
        pts.push_back(q(x));
    }
    AugmentedSpace a;
    a.inner = FiniteSpace::make(pts);
    for (std::size_t i = 0; i < n_outer; ++i) {
        a.outer.push_back("o" + std::to_string(i));
    }
    a.x0 = pts[rng() % pts.size()];
    DistanceMatrix m = DistanceMatrix::zero(a.labels());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            m.d[i][j] = m.d[j][i] = j < n_inner ? dist(pts[i], pts[j]) : q(1 + static_cast<long>(rng() % 40), 3);
        }
    }
    a.proposed = m;
    return a;
}

bool same(const DistanceMatrix& a, const DistanceMatrix& b) { return a.labels == b.labels && a.d == b.d; }

Result extension_suite()
{
    Result r;
    std::mt19937_64 rng(seed(1007));
    for (int t = 0; t < 20; ++t) {
        const std::size_t n_inner = 1 + rng() % 8;
        const std::size_t n_outer = 1 + rng() % (12 - n_inner);
        const auto a = random_aug(rng, n_inner, n_outer);
        // Outer metric from points on a line through x0 and the outer labels.
        DistanceMatrix om = discrete_outer_metric(a);
        std::vector<Scalar> pos;
        for (std::size_t i = 0; i < om.size(); ++i) {
            pos.push_back(q(static_cast<long>(rng() % 50), 1 + static_cast<long>(rng() % 3)) + q(static_cast<long>(i) * 20));
        }
        for (std::size_t i = 0; i < om.size(); ++i) {
            for (std::size_t j = 0; j < om.size(); ++j) {
                om.d[i][j] = dist(pos[i], pos[j]);
            }
        }
        for (const auto& ext : {railway_extension(a, om), railway_extension(a)}) {
            const std::string tag = "instance " + std::to_string(t);
            r.expect(ext.size() <= 12, tag + ": " + std::to_string(ext.size()) + " points");
            const auto ax = check_metric_axioms(ext);
            r.expect(ax.pass(), tag + ": " + ax.str());
            const auto re = check_restriction(ext, a.inner);
            r.expect(re.pass(), tag + ": " + re.str());
            const auto closed = shortest_path_closure(ext);
            r.expect(same(closed, ext), tag + ": closure changed a metric");
            r.expect(same(shortest_path_closure(closed), closed), tag + ": closure not idempotent");
        }
        const auto p = path_infimum_metric(a);
        r.expect(same(shortest_path_closure(p.metric), p.metric), "instance " + std::to_string(t) +
                                                                      ": path closure not idempotent");
    }

    const auto bridge = load_matrix(data("bridge.mx"));
    const auto p = path_infimum_metric(bridge.aug);
    r.expect(p.metric.at("0", "10") == q(2), "bridge d(0,10) = " + p.metric.at("0", "10").str());
    const auto it = std::find_if(p.shrinkage.begin(), p.shrinkage.end(), [](const Shrinkage& s) {
        return (s.a == "0" && s.b == "10") || (s.a == "10" && s.b == "0");
    });
    r.expect(it != p.shrinkage.end(), "bridge: no shrinkage reported for (0,10)");
    if (it != p.shrinkage.end()) {
        const std::vector<std::string> want = it->a == "0" ? std::vector<std::string>{"0", "p", "10"}
                                                          : std::vector<std::string>{"10", "p", "0"};
        r.expect(it->chain == want, "bridge chain has " + std::to_string(it->chain.size()) + " entries");
        r.expect(it->euclidean == q(10) && it->closed == q(2), "bridge shrinkage values");
    }
    r.expect(same(shortest_path_closure(p.metric), p.metric), "bridge: path closure not idempotent");
    r.expect(!check_restriction(p.metric, bridge.aug.inner).pass(), "bridge: restriction should change d(0,10)");
    r.summary = "20 railway instances, bridge d(0,10) = 2 via 0 p 10";
    return r;
}

Result hull_suite()
{
    Result r;
    const auto h1 = hull(parse_space("points: 0 1 3"));
    r.expect(h1 == Interval::closed(q(0), q(3)), "hull{0,1,3} = " + h1.str());
    const auto h2 = hull(parse_space("interval: (0,1) (2,3)"));
    r.expect(h2 == Interval::open(q(0), q(3)), "hull((0,1) u (2,3)) = " + h2.str());
    const auto h3 = hull(parse_space("arith: anchor=0 step=1 dir=right"));
    r.expect(h3.lo.closed && h3.lo.value == q(0) && !h3.hi.is_finite(), "hull(Z+) = " + h3.str());

    std::mt19937_64 rng(seed(1008));
    const auto num = [&](long lo, long hi) {
        return Scalar(lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)),
                      1 + static_cast<long>(rng() % 4));
    };
    const Window w(q(-60), q(60));
    for (int t = 0; t < 100; ++t) {
        std::string text;
        const Scalar a = num(-20, 20);
        switch (rng() % 6) {
        case 0:
            text = "points: " + a.str() + " " + (a + num(1, 8)).str() + " " + (a + num(10, 20)).str();
            break;
        case 1: {
            const Scalar b = a + num(1, 5);
            const Scalar c = b + num(1, 5);
            text = std::string("interval: ") + (rng() % 2 ? "[" : "(") + a.str() + "," + b.str() + ") [" + c.str() +
                   "," + (c + num(1, 5)).str() + (rng() % 2 ? "]" : ")");
            break;
        }
        case 2:
            text = "arith: anchor=" + a.str() + " step=" + num(1, 4).str() + (rng() % 2 ? " dir=right" : " dir=left");
            break;
        case 3:
            text = "gapseq: anchor=" + a.str() + " right=recipdiff(n+1) left=const(" + num(1, 3).str() + ")";
            break;
        case 4:
            text = "halfline: " + std::string(rng() % 2 ? "[" : "(") + a.str() + ",+inf)";
            break;
        default:
            text = "gapseq: anchor=" + a.str() + " right=affine(" + num(1, 3).str() + "*n+1) left=const(" +
                   num(1, 3).str() + ")";
            break;
        }
        const auto space = parse_space(text);
        const Interval h = hull(space);
        Limits lim;
        lim.accumulation_cap = 200;
        const auto m = materialize(space, w, lim);
        for (const auto& p : m.points) {
            r.expect(h.contains(p), text + ": " + p.str() + " outside " + h.str());
        }
        for (const auto& f : m.fragments) {
            r.expect(h.contains(f.interval), text + ": " + f.interval.str() + " outside " + h.str());
        }
        r.expect(!m.points.empty() || !m.fragments.empty(), text + ": nothing materialized");
    }
    r.summary = "3 fixed hulls, 100 random descriptions";
    return r;
}

int invoke(const std::vector<std::string>& args, std::string& out)
{
    std::ostringstream o;
    std::ostringstream e;
    const int code = cli::run(args, o, e);
    out = o.str();
    return code;
}

Result plot_determinism()
{
    Result r;
    const std::string golden = PLASTI_GOLDEN_DIR;
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
        {"fig1.svg",
         {"plot", "--space", data("fig1.sp"), "--map", data("identity.mp"), "--witness", "--window", "-6..12"}},
        {"fig3.svg",
         {"plot", "--space", data("rem316-halfopen.sp"), "--map", data("identity.mp"), "--witness", "--window",
          "-4..8"}},
        {"integers.svg", {"plot", "--space", data("integers.sp"), "--map", data("identity.mp"), "--window", "-3..3"}},
    };
    for (const auto& [name, args] : cases) {
        std::string first;
        std::string second;
        r.expect(invoke(args, first) == 0, name + ": plot failed");
        invoke(args, second);
        r.expect(first == second, name + ": two runs differ");
        r.expect(first == slurp(golden + "/" + name), name + ": differs from golden file");
    }

    // Jump between glued intervals in the witness graph.
    const auto space = cli::gallery_entry("rem316-halfopen").space;
    ClassifyOptions opt;
    opt.window = Window(q(-4), q(8));
    const auto c = classify(space, opt);
    if (!c.witness) {
        r.expect(false, "rem316-halfopen: no witness");
    } else {
        cli::PlotSpec spec;
        spec.space = c.witness_space;
        spec.window = opt.window;
        const auto g = cli::map_graph(spec, *c.witness);
        const auto jumps = cli::find_jumps(g);
        r.expect(!jumps.empty(), "no jump in the glue witness graph");
        for (const auto& j : jumps) {
            // The jump spans a gap of the space and exceeds what the slope allows.
            const Scalar mid = (j.x_from + j.x_to) / Scalar(2);
            r.expect(!contains(space, mid), "jump at " + j.x_from.str() + " does not span a gap");
            const Scalar y_right = eval(*c.witness, c.witness_space, j.x_to);
            r.expect(y_right == j.y_to, "jump end disagrees with eval");
        }
        r.summary = "3 golden files; " + std::to_string(jumps.size()) + " jump(s) in the glue witness, first over (" +
                    (jumps.empty() ? "" : jumps[0].x_from.str() + ", " + jumps[0].x_to.str()) + ")";
    }
    std::string id_out;
    invoke({"plot", "--space", data("rem316-halfopen.sp"), "--window", "-4..8"}, id_out);
    r.expect(id_out.find("class=\"graph\"") == std::string::npos, "graph group without maps");
    return r;
}

Result cross_module()
{
    Result r;
    std::mt19937_64 rng(seed(1010));
    std::size_t perms = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<std::vector<Scalar>> sets;
        std::vector<Scalar> grid;
        for (std::size_t i = 0; i < n; ++i) {
            grid.push_back(q(static_cast<long>(i)));
        }
        sets.push_back(grid);
        for (int k = 0; k < 3; ++k) {
            std::set<Scalar> xs;
            while (xs.size() < n) {
                xs.insert(Scalar(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 2)));
            }
            sets.emplace_back(xs.begin(), xs.end());
        }
        for (const auto& pts : sets) {
            const auto s = FiniteSpace::make(pts);
            const auto space = s.as_space();
            const Window w(pts.front() - q(1), pts.back() + q(1));
            std::set<std::vector<std::size_t>> listed;
            for (const auto& p : nonexpansive_bijections(s)) {
                listed.insert(p.images);
            }
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                ++perms;
                const bool ne = check_nonexpansive(s.table(perm), space, w).pass();
                r.expect(ne == (listed.count(perm) == 1), str(pts) + ": permutation disagreement");
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    r.summary = std::to_string(perms) + " permutations";
    return r;
}

}  // namespace

int main()
{
    const std::vector<std::pair<int, std::function<Result()>>> criteria{
        {1, [] { return gallery_regression("example1"); }},
        {2, [] { return gallery_regression("example2"); }},
        {3, finite_plasticity},
        {4, strong_plasticity},
        {5, classifier_soundness},
        {6, ball_census_invariant},
        {7, extension_suite},
        {8, hull_suite},
        {9, plot_determinism},
        {10, cross_module},
    };
    int failed = 0;
    for (const auto& [n, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char t[32];
        std::snprintf(t, sizeof t, "%.2f", secs);
        std::cout << "criterion " << n << ": " << (r.failures.empty() ? "PASS" : "FAIL") << "  " << r.summary << " ["
                  << t << " s]" << std::endl;
        for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) {
            std::cout << "    " << r.failures[i] << '\n';
        }
        failed += r.failures.empty() ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
