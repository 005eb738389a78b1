#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plasti/oracle.hpp"
#include "plasti/scalar.hpp"

namespace plasti {

/// A point of an augmented space: an inner sample point (named by its coordinate) or an outer label.
struct Label {
    std::string name;
    bool outer = false;
    Scalar value;  // coordinate of an inner point

    static Label inner(const Scalar& x) { return {x.str(), false, x}; }
    static Label external(std::string name) { return {std::move(name), true, Scalar{}}; }

    friend bool operator==(const Label&, const Label&) = default;
};

/// Square matrix of distances over labelled points. Nothing is enforced on construction;
/// validate() and check_metric_axioms() report problems.
struct DistanceMatrix {
    std::vector<Label> labels;
    std::vector<std::vector<Scalar>> d;

    static constexpr std::size_t max_points = 32;

    [[nodiscard]] std::size_t size() const { return labels.size(); }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
    [[nodiscard]] const Scalar& at(std::string_view a, std::string_view b) const;
    /// Empty when square, symmetric, zero on the diagonal and positive elsewhere.
    [[nodiscard]] std::string validate() const;
    /// Throws InvalidMatrix unless validate() is empty; CapExceeded above max_points.
    void require_valid() const;
    [[nodiscard]] std::string str() const;

    /// n x n zero matrix over the labels.
    static DistanceMatrix zero(std::vector<Label> labels);
};

/// Sample of A, outer labels and optionally a proposed distance over all of them.
struct AugmentedSpace {
    FiniteSpace inner;
    std::vector<std::string> outer;
    std::optional<DistanceMatrix> proposed;  // labels: inner points then outer labels
    std::optional<Scalar> x0;

    /// Checks labels, validity and that the proposed matrix restricts to Euclidean distances.
    /// Throws InvalidMatrix or PreconditionFailed.
    void validate() const;
    [[nodiscard]] std::vector<Label> labels() const;
};

struct Shrinkage {
    std::string a;
    std::string b;
    Scalar euclidean;
    Scalar closed;
    std::vector<std::string> chain;  // a, ..., b realising `closed`
};

struct PathInfimum {
    DistanceMatrix metric;
    std::vector<Shrinkage> shrinkage;

    [[nodiscard]] std::string str() const;
};

/// Shortest-path closure: the least distance over chains. `next[i][j]` is the second vertex of
/// a shortest chain from i to j when requested.
DistanceMatrix shortest_path_closure(const DistanceMatrix& m, std::vector<std::vector<std::size_t>>* next = nullptr);

/// Throws InvalidMatrix when the proposed matrix is missing or invalid.
PathInfimum path_infimum_metric(const AugmentedSpace& aug);

/// Outer metric over x0 and the outer labels where every distance is 1.
DistanceMatrix discrete_outer_metric(const AugmentedSpace& aug);

/// d(x,y) inside, the outer metric outside, and d(x,x0) + outer(x0,y) across.
/// Throws OuterMetricInvalid when the outer metric fails an axiom or misses a label.
DistanceMatrix railway_extension(const AugmentedSpace& aug, const std::optional<DistanceMatrix>& outer_metric = {});

struct AxiomViolation {
    enum class Kind { Positivity, Symmetry, NonDegeneracy, Triangle };

    Kind kind = Kind::Triangle;
    std::vector<std::string> labels;  // (a, b) or the triangle (a, b, c) with b the detour point
    std::vector<Scalar> values;       // the entries involved, in label order

    [[nodiscard]] std::string str() const;
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    std::uint64_t triples_checked = 0;

    [[nodiscard]] bool pass() const { return violations.empty(); }
    [[nodiscard]] std::string str() const;
};

AxiomReport check_metric_axioms(const DistanceMatrix& m);

struct RestrictionChange {
    std::string a;
    std::string b;
    Scalar euclidean;
    Scalar value;
};

struct RestrictionReport {
    std::vector<RestrictionChange> changes;

    [[nodiscard]] bool pass() const { return changes.empty(); }
    [[nodiscard]] std::string str() const;
};

/// Compares m on the inner points with Euclidean distances. Throws PreconditionFailed when a
/// point of `inner` has no label in m.
RestrictionReport check_restriction(const DistanceMatrix& m, const FiniteSpace& inner);

/// Matrix file:
///
///   inner: 0 10
///   outer: p q
///   x0: 0
///   row: 10 1 1      upper triangle of the proposed matrix, one line per row
///   row: 1 1
///   row: 2
///   outer-row: 5 5   upper triangle of the outer metric over x0 then the outer labels
///   outer-row: 1
struct MatrixFile {
    AugmentedSpace aug;
    std::optional<DistanceMatrix> outer_metric;
};

MatrixFile parse_matrix(std::string_view text);
MatrixFile load_matrix(const std::string& path);

}  // namespace plasti
