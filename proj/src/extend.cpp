#include "plasti/extend.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "plasti/space_parse.hpp"
#include "text.hpp"

namespace plasti {

// ---- DistanceMatrix -------------------------------------------------------------------

std::optional<std::size_t> DistanceMatrix::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

const Scalar& DistanceMatrix::at(std::string_view a, std::string_view b) const
{
    const auto i = index_of(a);
    const auto j = index_of(b);
    if (!i || !j) {
        throw Error(ErrorKind::PreconditionFailed, "no label " + std::string(i ? b : a));
    }
    return d[*i][*j];
}

std::string DistanceMatrix::validate() const
{
    const std::size_t n = labels.size();
    if (d.size() != n) {
        return "matrix has " + std::to_string(d.size()) + " rows for " + std::to_string(n) + " labels";
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        if (!names.insert(labels[i].name).second) {
            return "duplicate label " + labels[i].name;
        }
        if (d[i].size() != n) {
            return "row " + labels[i].name + " has " + std::to_string(d[i].size()) + " entries";
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!d[i][i].is_zero()) {
            return "diagonal entry at " + labels[i].name + " is " + d[i][i].str();
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (d[i][j] != d[j][i]) {
                return "asymmetric entries for " + labels[i].name + ", " + labels[j].name;
            }
            if (d[i][j].sign() <= 0) {
                return "non-positive distance " + d[i][j].str() + " between " + labels[i].name + " and " +
                       labels[j].name;
            }
        }
    }
    return {};
}

void DistanceMatrix::require_valid() const
{
    if (labels.size() > max_points) {
        throw Error(ErrorKind::CapExceeded, std::to_string(labels.size()) + " points exceed the cap of " +
                                                std::to_string(max_points));
    }
    if (const std::string bad = validate(); !bad.empty()) {
        throw Error(ErrorKind::InvalidMatrix, bad);
    }
}

std::string DistanceMatrix::str() const
{
    std::size_t width = 1;
    for (const auto& row : d) {
        for (const auto& v : row) {
            width = std::max(width, v.str().size());
        }
    }
    for (const auto& l : labels) {
        width = std::max(width, l.name.size() + (l.outer ? 1 : 0));
    }
    const auto pad = [&](const std::string& s) { return std::string(width + 1 - s.size(), ' ') + s; };
    std::ostringstream os;
    os << pad("");
    for (const auto& l : labels) {
        os << pad(l.name + (l.outer ? "*" : ""));
    }
    os << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        os << pad(labels[i].name + (labels[i].outer ? "*" : ""));
        for (const auto& v : d[i]) {
            os << pad(v.str());
        }
        os << '\n';
    }
    return os.str();
}

DistanceMatrix DistanceMatrix::zero(std::vector<Label> labels)
{
    const std::size_t n = labels.size();
    return DistanceMatrix{std::move(labels), std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n))};
}

// ---- AugmentedSpace -------------------------------------------------------------------

std::vector<Label> AugmentedSpace::labels() const
{
    std::vector<Label> out;
    for (const auto& x : inner.points) {
        out.push_back(Label::inner(x));
    }
    for (const auto& o : outer) {
        out.push_back(Label::external(o));
    }
    return out;
}

void AugmentedSpace::validate() const
{
    const auto want = labels();
    std::set<std::string> names;
    for (const auto& l : want) {
        if (!names.insert(l.name).second) {
            throw Error(ErrorKind::InvalidMatrix, "label " + l.name + " is used twice");
        }
    }
    if (x0 && std::find(inner.points.begin(), inner.points.end(), *x0) == inner.points.end()) {
        throw Error(ErrorKind::PreconditionFailed, "x0 = " + x0->str() + " is not an inner point");
    }
    if (!proposed) {
        return;
    }
    proposed->require_valid();
    if (proposed->labels != want) {
        throw Error(ErrorKind::InvalidMatrix, "proposed matrix labels do not match the inner and outer points");
    }
    for (std::size_t i = 0; i < inner.size(); ++i) {
        for (std::size_t j = i + 1; j < inner.size(); ++j) {
            const Scalar e = dist(inner.points[i], inner.points[j]);
            if (proposed->d[i][j] != e) {
                throw Error(ErrorKind::InvalidMatrix, "proposed distance " + proposed->d[i][j].str() + " between " +
                                                          want[i].name + " and " + want[j].name +
                                                          " differs from " + e.str());
            }
        }
    }
}

// ---- path infimum ---------------------------------------------------------------------

DistanceMatrix shortest_path_closure(const DistanceMatrix& m, std::vector<std::vector<std::size_t>>* next)
{
    DistanceMatrix out = m;
    const std::size_t n = m.size();
    std::vector<std::vector<std::size_t>> hop(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            hop[i][j] = j;
        }
    }
    // Floyd-Warshall; strict improvement keeps the direct edge on ties.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || i == k || j == k) {
                    continue;
                }
                Scalar via = out.d[i][k] + out.d[k][j];
                if (via < out.d[i][j]) {
                    out.d[i][j] = std::move(via);
                    hop[i][j] = hop[i][k];
                }
            }
        }
    }
    if (next != nullptr) {
        *next = std::move(hop);
    }
    return out;
}

PathInfimum path_infimum_metric(const AugmentedSpace& aug)
{
    if (!aug.proposed) {
        throw Error(ErrorKind::InvalidMatrix, "no proposed matrix");
    }
    aug.validate();
    std::vector<std::vector<std::size_t>> next;
    PathInfimum out{shortest_path_closure(*aug.proposed, &next), {}};
    const auto& labels = out.metric.labels;
    for (std::size_t i = 0; i < aug.inner.size(); ++i) {
        for (std::size_t j = i + 1; j < aug.inner.size(); ++j) {
            const Scalar e = dist(aug.inner.points[i], aug.inner.points[j]);
            if (out.metric.d[i][j] < e) {
                Shrinkage s{labels[i].name, labels[j].name, e, out.metric.d[i][j], {labels[i].name}};
                for (std::size_t v = i; v != j;) {
                    v = next[v][j];
                    s.chain.push_back(labels[v].name);
                }
                out.shrinkage.push_back(std::move(s));
            }
        }
    }
    return out;
}

std::string PathInfimum::str() const
{
    std::ostringstream os;
    os << metric.str();
    if (shrinkage.empty()) {
        os << "shrinkage: none\n";
    }
    for (const auto& s : shrinkage) {
        os << "shrinkage: d(" << s.a << ", " << s.b << ") = " << s.euclidean.str() << " closes to " << s.closed.str()
           << " via";
        for (const auto& c : s.chain) {
            os << ' ' << c;
        }
        os << '\n';
    }
    return os.str();
}

// ---- railway --------------------------------------------------------------------------

DistanceMatrix discrete_outer_metric(const AugmentedSpace& aug)
{
    if (!aug.x0) {
        throw Error(ErrorKind::PreconditionFailed, "the railway extension needs a base point x0");
    }
    std::vector<Label> labels{Label::inner(*aug.x0)};
    for (const auto& o : aug.outer) {
        labels.push_back(Label::external(o));
    }
    DistanceMatrix m = DistanceMatrix::zero(std::move(labels));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (i != j) {
                m.d[i][j] = Scalar(1);
            }
        }
    }
    return m;
}

DistanceMatrix railway_extension(const AugmentedSpace& aug, const std::optional<DistanceMatrix>& outer_metric)
{
    if (!aug.x0) {
        throw Error(ErrorKind::PreconditionFailed, "the railway extension needs a base point x0");
    }
    AugmentedSpace bare = aug;
    bare.proposed.reset();
    bare.validate();
    const DistanceMatrix om = outer_metric ? *outer_metric : discrete_outer_metric(aug);
    const std::string x0 = aug.x0->str();
    if (const std::string bad = om.validate(); !bad.empty()) {
        throw Error(ErrorKind::OuterMetricInvalid, bad);
    }
    if (const AxiomReport r = check_metric_axioms(om); !r.pass()) {
        throw Error(ErrorKind::OuterMetricInvalid, r.violations.front().str());
    }
    for (const auto& name : aug.outer) {
        if (!om.index_of(name)) {
            throw Error(ErrorKind::OuterMetricInvalid, "outer metric has no entry for " + name);
        }
    }
    if (!om.index_of(x0)) {
        throw Error(ErrorKind::OuterMetricInvalid, "outer metric has no entry for x0 = " + x0);
    }

    DistanceMatrix out = DistanceMatrix::zero(aug.labels());
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Label& a = out.labels[i];
            const Label& b = out.labels[j];
            if (i == j) {
                continue;
            }
            if (!a.outer && !b.outer) {
                out.d[i][j] = dist(a.value, b.value);
            } else if (a.outer && b.outer) {
                out.d[i][j] = om.at(a.name, b.name);
            } else {
                const Label& in = a.outer ? b : a;
                const Label& ex = a.outer ? a : b;
                out.d[i][j] = dist(in.value, *aug.x0) + om.at(x0, ex.name);
            }
        }
    }
    return out;
}

// ---- axiom and restriction reports ----------------------------------------------------

std::string AxiomViolation::str() const
{
    static const char* names[] = {"positivity", "symmetry", "non-degeneracy", "triangle"};
    std::ostringstream os;
    os << names[static_cast<int>(kind)] << " fails at (";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        os << (i ? ", " : "") << labels[i];
    }
    os << "):";
    for (const auto& v : values) {
        os << ' ' << v.str();
    }
    return os.str();
}

AxiomReport check_metric_axioms(const DistanceMatrix& m)
{
    AxiomReport r;
    const std::size_t n = m.size();
    const auto name = [&](std::size_t i) { return m.labels[i].name; };
    for (std::size_t i = 0; i < n; ++i) {
        if (!m.d[i][i].is_zero()) {
            r.violations.push_back({AxiomViolation::Kind::NonDegeneracy, {name(i), name(i)}, {m.d[i][i]}});
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m.d[i][j] != m.d[j][i]) {
                r.violations.push_back({AxiomViolation::Kind::Symmetry, {name(i), name(j)}, {m.d[i][j], m.d[j][i]}});
            }
            if (m.d[i][j].sign() < 0 || m.d[j][i].sign() < 0) {
                r.violations.push_back({AxiomViolation::Kind::Positivity, {name(i), name(j)}, {m.d[i][j]}});
            } else if (m.d[i][j].is_zero()) {
                r.violations.push_back({AxiomViolation::Kind::NonDegeneracy, {name(i), name(j)}, {m.d[i][j]}});
            }
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t c = a + 1; c < n; ++c) {
            for (std::size_t b = 0; b < n; ++b) {
                if (b == a || b == c) {
                    continue;
                }
                ++r.triples_checked;
                if (m.d[a][c] > m.d[a][b] + m.d[b][c]) {
                    r.violations.push_back(
                        {AxiomViolation::Kind::Triangle, {name(a), name(b), name(c)}, {m.d[a][b], m.d[b][c], m.d[a][c]}});
                }
            }
        }
    }
    return r;
}

std::string AxiomReport::str() const
{
    std::ostringstream os;
    os << "metric axioms: " << (pass() ? "pass" : "fail") << " (" << triples_checked << " triples)\n";
    for (const auto& v : violations) {
        os << "  " << v.str() << '\n';
    }
    return os.str();
}

RestrictionReport check_restriction(const DistanceMatrix& m, const FiniteSpace& inner)
{
    RestrictionReport r;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        for (std::size_t j = i + 1; j < inner.size(); ++j) {
            const std::string a = inner.points[i].str();
            const std::string b = inner.points[j].str();
            const Scalar e = dist(inner.points[i], inner.points[j]);
            const Scalar& v = m.at(a, b);
            if (v != e) {
                r.changes.push_back({a, b, e, v});
            }
        }
    }
    return r;
}

std::string RestrictionReport::str() const
{
    std::ostringstream os;
    os << "restriction: " << (pass() ? "pass" : "fail") << '\n';
    for (const auto& c : changes) {
        os << "  d(" << c.a << ", " << c.b << "): " << c.euclidean.str() << " -> " << c.value.str() << '\n';
    }
    return os.str();
}

// ---- matrix files ---------------------------------------------------------------------

namespace {

using detail::DirectiveLine;
using detail::fail_at;

/// Fills the upper triangle of an n x n matrix from row lines; row i has n-1-i entries.
std::vector<std::vector<Scalar>> upper_triangle(const std::vector<const DirectiveLine*>& rows, std::size_t n,
                                                const char* what)
{
    std::vector<std::vector<Scalar>> d(n, std::vector<Scalar>(n));
    if (rows.size() != (n == 0 ? 0 : n - 1)) {
        const int line = rows.empty() ? 1 : rows.back()->line;
        fail_at(line, 1, std::string(what) + " needs " + std::to_string(n == 0 ? 0 : n - 1) + " rows, got " +
                             std::to_string(rows.size()));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const DirectiveLine& l = *rows[i];
        if (l.tokens.size() != n - 1 - i) {
            const std::size_t need = n - 1 - i;
            fail_at(l.line, l.tokens.size() > need ? l.tokens[need].column : l.rest_column,
                    std::string(what) + " row " + std::to_string(i + 1) + " needs " + std::to_string(n - 1 - i) +
                        " entries, got " + std::to_string(l.tokens.size()));
        }
        for (std::size_t k = 0; k < l.tokens.size(); ++k) {
            const std::size_t j = i + 1 + k;
            d[i][j] = detail::scalar_at(l.tokens[k].text, l.line, l.tokens[k].column);
            d[j][i] = d[i][j];
        }
    }
    return d;
}

}  // namespace

MatrixFile parse_matrix(std::string_view text)
{
    std::vector<Scalar> inner;
    std::vector<std::string> outer;
    std::optional<Scalar> x0;
    std::vector<const DirectiveLine*> rows;
    std::vector<const DirectiveLine*> outer_rows;
    const auto lines = detail::split_directives(text);
    bool have_inner = false;
    for (const auto& l : lines) {
        if (l.directive == "inner") {
            if (have_inner) {
                fail_at(l.line, l.directive_column, "duplicate inner: line");
            }
            have_inner = true;
            for (const auto& t : l.tokens) {
                inner.push_back(detail::scalar_at(t.text, l.line, t.column));
            }
        } else if (l.directive == "outer") {
            for (const auto& t : l.tokens) {
                Scalar ignored;
                if (Scalar::try_parse(t.text, ignored)) {
                    fail_at(l.line, t.column, "outer labels must not be numbers: " + t.text);
                }
                outer.push_back(t.text);
            }
        } else if (l.directive == "x0") {
            if (l.tokens.size() != 1) {
                fail_at(l.line, l.tokens.size() > 1 ? l.tokens[1].column : l.rest_column, "x0: takes one inner point");
            }
            x0 = detail::scalar_at(l.tokens[0].text, l.line, l.tokens[0].column);
        } else if (l.directive == "row") {
            rows.push_back(&l);
        } else if (l.directive == "outer-row") {
            outer_rows.push_back(&l);
        } else {
            fail_at(l.line, l.directive_column, "unknown directive '" + l.directive + "'");
        }
    }
    if (!have_inner || inner.empty()) {
        fail_at(1, 1, "matrix file needs an inner: line with at least one point");
    }
    for (std::size_t i = 1; i < inner.size(); ++i) {
        if (!(inner[i - 1] < inner[i])) {
            throw Error(ErrorKind::InvalidMatrix, "inner points must be strictly increasing");
        }
    }

    MatrixFile f;
    f.aug.inner = FiniteSpace::make(inner);
    f.aug.outer = outer;
    f.aug.x0 = x0;
    const auto labels = f.aug.labels();
    if (!rows.empty()) {
        f.aug.proposed = DistanceMatrix{labels, upper_triangle(rows, labels.size(), "row:")};
    }
    if (!outer_rows.empty()) {
        if (!x0) {
            fail_at(outer_rows.front()->line, 1, "outer-row: needs an x0: line");
        }
        std::vector<Label> ol{Label::inner(*x0)};
        for (const auto& o : outer) {
            ol.push_back(Label::external(o));
        }
        f.outer_metric = DistanceMatrix{ol, upper_triangle(outer_rows, ol.size(), "outer-row:")};
    }
    f.aug.validate();
    return f;
}

MatrixFile load_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

}  // namespace plasti
