#include "plasti/cli/gallery.hpp"

#include <algorithm>
#include <sstream>

#include "plasti/classify.hpp"
#include "plasti/oracle.hpp"
#include "plasti/space_parse.hpp"

namespace plasti::cli {

namespace {

struct MapSource {
    const char* name;
    const char* text;
    bool nonexpansive;
    bool isometry;
};

struct Source {
    const char* id;
    const char* title;
    const char* space;
    std::vector<MapSource> maps;
    long lo;
    long hi;
    std::size_t cap;  // accumulation cap for enumeration
    VerdictKind verdict;
    const char* rule;
};

constexpr const char* kIdentity = "piece: slope=1 icpt=0\ninverse: piece: slope=1 icpt=0\n";
constexpr const char* kNegate = "# x -> -x\npiece: slope=-1 icpt=0\ninverse: piece: slope=-1 icpt=0\n";
constexpr const char* kStep = "# x -> x+1\npiece: slope=1 icpt=1\ninverse: piece: slope=1 icpt=-1\n";

const std::vector<Source>& sources()
{
    static const std::vector<Source> all{
        {"example1",
         "nonnegative integers with 1/4 + 1/n: a bijection that moves the minimum",
         "# nonnegative integers together with 1/4 + 1/n for n >= 4\n"
         "arith: anchor=0 step=1 dir=right\n"
         "gapseq: anchor=1/2 left=recipdiff(n+3)\n"
         "meta: accum=1/4\n",
         {{"phi",
           "# a -> a-1 on positive integers, 0 -> 1/2, 1/4+1/n -> 1/4+1/(n+1)\n"
           "piece: dom=[1,+inf) slope=1 icpt=-1\n"
           "table: 0->1/2\n"
           "idxshift: comp=2 k=-1\n"
           "inverse: piece: dom=[0,+inf) comp=1 slope=1 icpt=1\n"
           "inverse: table: 1/2->0\n"
           "inverse: idxshift: comp=2 k=1\n",
           true, false}},
         0, 10, 200, VerdictKind::Unknown, "fallback"},
        {"example2",
         "nonnegative integers with the negative even integers: betweenness is not preserved",
         "# nonnegative integers together with the negative even integers\n"
         "arith: anchor=0 step=1 dir=right\n"
         "arith: anchor=-2 step=2 dir=left\n",
         {{"phi",
           "piece: dom=(-inf,-4] slope=1 icpt=6\n"
           "piece: dom=[-2,+inf) slope=1 icpt=3\n"
           "inverse: piece: dom=(-inf,0] slope=1 icpt=-6\n"
           "inverse: table: 1->-2 2->-4\n"
           "inverse: piece: dom=[3,+inf) slope=1 icpt=-3\n",
           true, false}},
         -20, 20, 10'000, VerdictKind::NotPlastic, "R1"},
        {"example310",
         "gaps alternating between |k|+1 and unit fractions: plastic without an extremal gap",
         "# gaps 1, 1/2, 2, 1/3, 3, ... to the right of 0 and 1/2, 2, 1/3, 3, ... to the left\n"
         "gapseq: anchor=0 right=alt(affine(n),recip(n+1)) left=alt(recip(n+1),affine(n+1))\n",
         {{"identity", kIdentity, true, true},
          {"reflection", "# a_i -> a_{1-i}, x -> 1-x\npiece: slope=-1 icpt=1\ninverse: piece: slope=-1 icpt=1\n", true, true},
          {"shift", "# a_i -> a_{i+1}\nidxshift: comp=1 k=1\ninverse: idxshift: comp=1 k=-1\n", false, false}},
         -30, 30, 10'000, VerdictKind::Unknown, "fallback"},
        {"prop31",
         "bi-infinite sequence with non-decreasing gaps: the index shift contracts",
         "# gaps 1 to the left of 0 and 1, 2, 3, ... to the right\n"
         "gapseq: anchor=0 right=affine(n) left=const(1)\n",
         {{"shift", "# a_i -> a_{i-1}\nidxshift: comp=1 k=-1\ninverse: idxshift: comp=1 k=1\n", true, false}},
         -10, 10, 10'000, VerdictKind::NotPlastic, "R1"},
        {"prop313",
         "a point and an open half-line: halve the half-line",
         "points: -1\nhalfline: (0,+inf)\n",
         {{"halve",
           "# x -> x/2 on the half-line\n"
           "table: -1->-1\n"
           "piece: dom=(0,+inf) slope=1/2 icpt=0\n"
           "inverse: table: -1->-1\n"
           "inverse: piece: dom=(0,+inf) slope=2 icpt=0\n",
           true, false}},
         -10, 10, 10'000, VerdictKind::NotPlastic, "R5"},
        {"prop314-open",
         "open unit intervals at period 2",
         "periodic: len=1 gap=1 anchor=0 topo=open dir=both\n",
         {{"reflection", "# x -> 1-x\npiece: slope=-1 icpt=1\ninverse: piece: slope=-1 icpt=1\n", true, true},
          {"shift", "# x -> x+2\npiece: slope=1 icpt=2\ninverse: piece: slope=1 icpt=-2\n", true, true}},
         -10, 10, 10'000, VerdictKind::Plastic, "R6a"},
        {"rem316-halfopen",
         "left-closed unit intervals at period 2: glue two intervals",
         "periodic: len=1 gap=1 anchor=0 topo=left-closed dir=both\n",
         {{"glue",
           "# [0,1) and [2,3) onto [0,1) at half scale, later intervals back by one period\n"
           "piece: dom=(-inf,0) slope=1 icpt=0\n"
           "piece: dom=[0,1] slope=1/2 icpt=0\n"
           "piece: dom=[2,3] slope=1/2 icpt=-1/2\n"
           "piece: dom=[4,+inf) slope=1 icpt=-2\n"
           "inverse: piece: dom=(-inf,0) slope=1 icpt=0\n"
           "inverse: piece: dom=[0,1/2) slope=2 icpt=0\n"
           "inverse: piece: dom=[1/2,1) slope=2 icpt=1\n"
           "inverse: piece: dom=[2,+inf) slope=1 icpt=2\n",
           true, false}},
         -10, 10, 10'000, VerdictKind::NotPlastic, "R6b"},
        {"rem317-mixed",
         "closed unit intervals up to 1, right-closed ones from 2 on: glue the first two half-open intervals",
         "periodic: len=1 gap=1 anchor=0 topo=closed dir=left\n"
         "periodic: len=1 gap=1 anchor=2 topo=right-closed dir=right\n",
         {{"glue",
           "# (2,3] and (4,5] onto (2,3] at half scale, later intervals back by one period\n"
           "piece: dom=(-inf,2) slope=1 icpt=0\n"
           "piece: dom=[2,3] slope=1/2 icpt=1\n"
           "piece: dom=[4,5] slope=1/2 icpt=1/2\n"
           "piece: dom=[6,+inf) slope=1 icpt=-2\n"
           "inverse: piece: dom=(-inf,2) slope=1 icpt=0\n"
           "inverse: piece: dom=(2,5/2] slope=2 icpt=-2\n"
           "inverse: piece: dom=(5/2,3] slope=2 icpt=-1\n"
           "inverse: piece: dom=[4,+inf) slope=1 icpt=2\n",
           true, false}},
         -10, 10, 10'000, VerdictKind::NotPlastic, "R6b"},
        {"integers",
         "the integers",
         "arith: anchor=0 step=1 dir=both\n",
         {{"reflection", kNegate, true, true}, {"shift", kStep, true, true}},
         -10, 10, 10'000, VerdictKind::Plastic, "R7"},
        {"r-minus-z",
         "the line without the integers",
         "periodic: len=1 gap=0 anchor=0 topo=open dir=both\n",
         {{"reflection", kNegate, true, true}, {"shift", kStep, true, true}},
         -10, 10, 10'000, VerdictKind::Plastic, "R6a"},
        {"unit-interval-grid",
         "five equally spaced points of [0,1]: identity and x -> 1-x",
         "points: 0 1/4 1/2 3/4 1\n",
         {{"identity", kIdentity, true, true},
          {"flip", "# x -> 1-x\npiece: slope=-1 icpt=1\ninverse: piece: slope=-1 icpt=1\n", true, true}},
         -10, 10, 10'000, VerdictKind::Plastic, "R0"},
    };
    return all;
}

const Source& source(const std::string& id)
{
    for (const auto& s : sources()) {
        if (s.id == id) {
            return s;
        }
    }
    throw Error(ErrorKind::UnknownGalleryId, "no gallery entry '" + id + "'");
}

const MapSource& map_source(const Source& s, const std::string& name)
{
    for (const auto& m : s.maps) {
        if (m.name == name) {
            return m;
        }
    }
    throw Error(ErrorKind::UnknownGalleryId, "gallery entry " + std::string(s.id) + " has no map '" + name + "'");
}

std::string join(const std::vector<Scalar>& xs)
{
    std::string out = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? "," : "") + xs[i].str();
    }
    return out + ")";
}

class Runner {
public:
    explicit Runner(GalleryReport& r) : report_(r) {}

    void add(std::string name, bool pass, std::string detail)
    {
        report_.items.push_back({std::move(name), pass, std::move(detail)});
    }

    void check(const std::string& name, const CheckReport& rep, bool want)
    {
        std::string detail = to_string(rep.verdict) + " on " + rep.window.str() + ", " +
                             std::to_string(rep.pairs_checked) + " pairs";
        if (!rep.witnesses.empty()) {
            const Witness& w = rep.witnesses.front();
            detail += "; " + to_string(w.kind) + " " + join(w.points) + " -> " + join(w.images);
        }
        add(name + (want ? " passes" : " fails"), rep.pass() == want, detail);
    }

private:
    GalleryReport& report_;
};

// The five pair cases for the map of example1, with a in 1..10 and n < m in 4..50.
void example1_cases(Runner& run, const GalleryEntry& e)
{
    const MapDescription& phi = e.maps.front();
    const auto f = [&](const Scalar& x) { return eval(phi, e.space, x, e.limits); };
    const auto q = [](long n) { return Scalar(1, 4) + Scalar(1, n); };
    const Scalar zero(0);

    run.add("phi(0) = 1/2, the minimum is moved", f(zero) == Scalar(1, 2) && f(zero) != zero,
            "phi(0) = " + f(zero).str());

    std::vector<Scalar> qimg;  // phi(1/4 + 1/n) for n = 4..50
    for (long n = 4; n <= 50; ++n) {
        qimg.push_back(f(q(n)));
    }
    const auto qi = [&](long n) -> const Scalar& { return qimg[static_cast<std::size_t>(n - 4)]; };

    std::size_t count = 0;
    bool ok = true;
    for (long a = 1; a <= 10; ++a) {
        for (long b = a + 1; b <= 10; ++b) {
            ok = ok && dist(f(Scalar(a)), f(Scalar(b))) == dist(Scalar(a), Scalar(b));
            ++count;
        }
    }
    run.add("case 1: a, b positive integers keep their distance", ok, std::to_string(count) + " pairs");

    ok = true;
    count = 0;
    for (long a = 1; a <= 10; ++a) {
        const Scalar d = dist(f(Scalar(a)), f(zero));
        ok = ok && d == (Scalar(a) - Scalar(3, 2)).abs() && d < Scalar(a);
        ++count;
    }
    run.add("case 2: a positive integer against 0 gives |a - 3/2| < a", ok, std::to_string(count) + " pairs");

    ok = true;
    count = 0;
    for (long a = 1; a <= 10; ++a) {
        for (long n = 4; n <= 50; ++n) {
            const Scalar d = dist(f(Scalar(a)), qi(n));
            const Scalar want = (Scalar(a) - Scalar(5, 4) - Scalar(1, n + 1)).abs();
            ok = ok && d == want && d < (Scalar(a) - q(n)).abs();
            ++count;
        }
    }
    run.add("case 3: a positive integer against 1/4 + 1/n gives |a - 5/4 - 1/(n+1)| < |a - 1/4 - 1/n|", ok,
            std::to_string(count) + " pairs");

    ok = true;
    count = 0;
    for (long n = 4; n <= 50; ++n) {
        const Scalar d = dist(f(zero), qi(n));
        ok = ok && d == (Scalar(1, 4) - Scalar(1, n + 1)).abs() && d < q(n);
        ++count;
    }
    run.add("case 4: 0 against 1/4 + 1/n gives |1/4 - 1/(n+1)| < 1/4 + 1/n", ok, std::to_string(count) + " pairs");

    ok = true;
    count = 0;
    for (long n = 4; n <= 50; ++n) {
        for (long m = n + 1; m <= 50; ++m) {
            const Scalar d = dist(qi(n), qi(m));
            ok = ok && d == Scalar(1, n + 1) - Scalar(1, m + 1) && d < Scalar(1, n) - Scalar(1, m);
            ++count;
        }
    }
    run.add("case 5: 1/4 + 1/n against 1/4 + 1/m, n < m, gives 1/(n+1) - 1/(m+1) < 1/n - 1/m", ok,
            std::to_string(count) + " pairs");
}

void example2_extras(Runner& run, const GalleryEntry& e)
{
    const MapDescription& phi = e.maps.front();
    const auto rep = check_between_preservation(phi, e.space, e.window, {e.limits});
    const std::vector<Scalar> triple{Scalar(-4), Scalar(-2), Scalar(0)};
    const std::vector<Scalar> images{Scalar(2), Scalar(1), Scalar(3)};
    bool found = false;
    std::string seen;
    for (const auto& w : rep.witnesses) {
        found = found || (w.points == triple && w.images == images);
        seen += (seen.empty() ? "" : " ") + join(w.points) + "->" + join(w.images);
    }
    run.add("betweenness fails at (-4,-2,0) with images (2,1,3)", !rep.pass() && found,
            to_string(rep.verdict) + ", witnesses " + (seen.empty() ? "none" : seen));

    const Scalar a = eval(phi, e.space, Scalar(-2), e.limits);
    const Scalar b = eval(phi, e.space, Scalar(-4), e.limits);
    run.add("boundary pair (-2,-4): distance 2 -> 1", dist(Scalar(-2), Scalar(-4)) == Scalar(2) && dist(a, b) == Scalar(1),
            "images (" + a.str() + "," + b.str() + ")");
}

std::size_t census(const GalleryEntry& e, const Scalar& c, const Scalar& r)
{
    return ball_census(e.space, c, r, e.window, e.limits);
}

void example310_extras(Runner& run, const GalleryEntry& e)
{
    const auto mat = materialize(e.space, e.window, e.limits);
    const auto& p = mat.points;
    const Scalar a0(0);
    const Scalar a1(1);
    // The unit gap a0 a1 cannot shrink to an adjacent gap 1/n: a ball of radius n-1 around
    // either end of that gap holds two points, the same ball around a0 holds more or misses a1.
    for (long n = 2; n <= 6; ++n) {
        const Scalar g(1, n);
        const Scalar r(n - 1);
        std::optional<std::size_t> at;
        for (std::size_t i = 0; i + 1 < p.size() && !at; ++i) {
            if (p[i + 1] - p[i] == g) {
                at = i;
            }
        }
        if (!at) {
            run.add("unit gap cannot shrink to 1/" + std::to_string(n), false, "no gap 1/" + std::to_string(n) +
                                                                                   " in " + e.window.str());
            continue;
        }
        const Scalar& x = p[*at];
        const Scalar& y = p[*at + 1];
        const std::size_t cx = census(e, x, r);
        const std::size_t cy = census(e, y, r);
        const std::size_t c0 = census(e, a0, r);
        const bool a1_inside = dist(a0, a1) < r;
        const bool ok = cx == 2 && cy == 2 && (c0 > 2 || !a1_inside);
        run.add("unit gap cannot shrink to 1/" + std::to_string(n), ok,
                "gap (" + x.str() + "," + y.str() + "), radius " + r.str() + ": census " + std::to_string(cx) + " and " +
                    std::to_string(cy) + " against " + std::to_string(c0) + " at a0" +
                    (a1_inside ? "" : ", a1 outside the ball"));
    }

    // Every candidate: a verified non-expansive bijection never loses points from a ball.
    std::vector<Scalar> radii{Scalar(1, 2), Scalar(1), Scalar(2), Scalar(3), Scalar(4), Scalar(5)};
    for (const auto& m : e.maps) {
        const bool ne = check_nonexpansive(m, e.space, e.window, {e.limits}).pass();
        const bool bij = check_bijection(m, e.space, e.window, {e.limits}).pass();
        std::optional<std::pair<Scalar, Scalar>> drop;
        std::size_t balls = 0;
        for (const auto& c : p) {
            const Scalar fc = eval(m, e.space, c, e.limits);
            for (const auto& r : radii) {
                if (!e.window.contains(c - r) || !e.window.contains(c + r) || !e.window.contains(fc - r) ||
                    !e.window.contains(fc + r)) {
                    continue;
                }
                ++balls;
                if (!drop && census(e, c, r) > census(e, fc, r)) {
                    drop = std::make_pair(c, r);
                }
            }
        }
        const std::string name = m.name + ": ball census ";
        if (ne && bij) {
            run.add(name + "compatible", !drop, std::to_string(balls) + " balls");
        } else {
            run.add(name + "rules the map out", drop.has_value(),
                    drop ? "B(" + drop->first.str() + ", " + drop->second.str() + ") loses points" : "no ball loses points");
        }
    }
}

void grid_extras(Runner& run, const GalleryEntry& e)
{
    const auto mat = materialize(e.space, e.window, e.limits);
    const auto fs = FiniteSpace::make(mat.points);
    const auto perms = nonexpansive_bijections(fs);
    const bool all_iso = std::all_of(perms.begin(), perms.end(), [](const Permutation& p) { return p.isometry; });
    run.add("exactly two non-expansive bijections, both isometries", perms.size() == 2 && all_iso,
            std::to_string(perms.size()) + " found");
    const auto v = plastic_bruteforce(fs);
    run.add("oracle: plastic", v.kind == OracleKind::Plastic, to_string(v.kind));
}

}  // namespace

const std::vector<std::string>& gallery_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& s : sources()) {
            out.emplace_back(s.id);
        }
        return out;
    }();
    return ids;
}

std::string gallery_space_text(const std::string& id) { return source(id).space; }

std::string gallery_map_text(const std::string& id, const std::string& map)
{
    return map_source(source(id), map).text;
}

GalleryEntry gallery_entry(const std::string& id)
{
    const Source& s = source(id);
    GalleryEntry e;
    e.id = s.id;
    e.title = s.title;
    e.space = parse_space(s.space);
    for (const auto& m : s.maps) {
        MapDescription map = parse_map(m.text);
        map.name = m.name;
        e.maps.push_back(std::move(map));
    }
    e.window = Window(Scalar(s.lo), Scalar(s.hi));
    e.limits.accumulation_cap = s.cap;
    return e;
}

std::optional<MapDescription> gallery_map(const std::string& name)
{
    const auto slash = name.find('/');
    const std::string id = name.substr(0, slash);
    for (const auto& s : sources()) {
        if (s.id != id || s.maps.empty()) {
            continue;
        }
        for (const auto& m : s.maps) {
            if (slash == std::string::npos || name.substr(slash + 1) == m.name) {
                MapDescription out = parse_map(m.text);
                out.name = name;
                return out;
            }
        }
    }
    return std::nullopt;
}

GalleryResolver gallery_resolver() { return [](const std::string& name) { return gallery_map(name); }; }

bool GalleryReport::pass() const
{
    return std::all_of(items.begin(), items.end(), [](const GalleryItem& i) { return i.pass; });
}

std::string GalleryReport::str() const
{
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& i : items) {
        os << (i.pass ? "pass  " : "FAIL  ") << i.name;
        if (!i.detail.empty()) {
            os << "  [" << i.detail << "]";
        }
        os << '\n';
        passed += i.pass ? 1 : 0;
    }
    os << "result: " << (pass() ? "pass" : "fail") << " (" << passed << "/" << items.size() << ")\n";
    return os.str();
}

GalleryReport verify_gallery(const std::string& id)
{
    const Source& s = source(id);
    const GalleryEntry e = gallery_entry(id);
    GalleryReport report{e.id, {}};
    Runner run(report);
    const CheckOptions opt{e.limits};

    for (std::size_t i = 0; i < e.maps.size(); ++i) {
        const MapDescription& m = e.maps[i];
        const MapSource& ms = s.maps[i];
        run.check(m.name + ": endomorphism", check_endomorphism(m, e.space, e.window, opt), true);
        run.check(m.name + ": non-expansive", check_nonexpansive(m, e.space, e.window, opt), ms.nonexpansive);
        run.check(m.name + ": bijection", check_bijection(m, e.space, e.window, opt), true);
        run.check(m.name + ": isometry", check_isometry(m, e.space, e.window, opt), ms.isometry);
    }

    ClassifyOptions copt;
    copt.window = e.window;
    const Classification c = classify(e.space, copt);
    run.add("classify: " + to_string(s.verdict) + " by " + s.rule, c.kind == s.verdict && c.rule == s.rule,
            to_string(c.kind) + " by " + c.rule);
    if (c.kind == VerdictKind::NotPlastic && c.bundle) {
        run.add("classify: witness bundle", c.bundle->pass(), "on " + c.window.str());
    }
    if (c.kind != VerdictKind::NotPlastic && c.falsification) {
        run.add("classify: no counterexample among candidate maps", !c.falsification->counterexample,
                std::to_string(c.falsification->candidates) + " candidates");
    }

    const std::string sid = s.id;
    if (sid == "example1") {
        example1_cases(run, e);
    } else if (sid == "example2") {
        example2_extras(run, e);
    } else if (sid == "example310") {
        run.add("classify: note on known plasticity", !c.notes.empty(), c.notes.empty() ? "" : c.notes.front());
        example310_extras(run, e);
    } else if (sid == "unit-interval-grid") {
        grid_extras(run, e);
    }
    return report;
}

}  // namespace plasti::cli
