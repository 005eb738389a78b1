#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plasti/gap_rule.hpp"
#include "plasti/interval.hpp"
#include "plasti/scalar.hpp"

namespace plasti {

enum class Direction { Left, Right, Both };
enum class Topology { Open, Closed, LeftClosed, RightClosed };

std::string to_string(Direction d);
std::string to_string(Topology t);
Topology mirrored(Topology t);
bool lo_closed(Topology t);
bool hi_closed(Topology t);

/// Finite value range on which infinite descriptions are enumerated exactly.
struct Window {
    Scalar lo;
    Scalar hi;

    Window() = default;
    Window(Scalar lo_, Scalar hi_);

    [[nodiscard]] bool contains(const Scalar& x) const { return lo <= x && x <= hi; }
    [[nodiscard]] Interval as_interval() const { return Interval::closed(lo, hi); }
    [[nodiscard]] std::string str() const { return "[" + lo.str() + "," + hi.str() + "]"; }
    /// Accepts `lo..hi`.
    static Window parse(std::string_view text);

    friend bool operator==(const Window&, const Window&) = default;
};

// ---- components -------------------------------------------------------------------

struct FinitePoints {
    std::vector<Scalar> points;  // strictly increasing
};

struct ArithmeticProgression {
    Scalar anchor;
    Scalar step;
    Direction dir = Direction::Both;
};

/// Points anchor, anchor + r(1), anchor + r(1) + r(2), ... and anchor - l(1), ...
struct GapSequence {
    Scalar anchor;
    GapList right;
    GapList left;
};

/// Intervals of equal length separated by equal gaps; interval k starts at anchor + k*(length+gap).
struct PeriodicIntervals {
    Scalar length;
    Scalar gap;
    Scalar anchor;
    Topology topology = Topology::Closed;
    Direction dir = Direction::Both;
};

/// Interval 0 starts at `anchor` with length len_right(1); interval i >= 1 follows interval i-1
/// after gap_right(i) and has length len_right(i+1). Interval -j ends gap_left(j) before
/// interval -(j-1) starts and has length len_left(j).
struct IntervalSequence {
    Scalar anchor;
    GapList len_right;
    GapList gap_right;
    GapList len_left;
    GapList gap_left;
    Topology topology = Topology::Closed;
};

struct IntervalList {
    std::vector<Interval> intervals;  // sorted, bounded
};

/// An interval with exactly one infinite side.
struct HalfLine {
    Interval interval;
};

using Component =
    std::variant<FinitePoints, ArithmeticProgression, GapSequence, PeriodicIntervals, IntervalSequence, IntervalList, HalfLine>;

bool is_discrete(const Component& c);
std::string describe(const Component& c);

struct BoundDeclaration {
    enum class Kind { Attained, Unattained, Unbounded };
    Kind kind = Kind::Unbounded;
    Scalar at;
};

struct Metadata {
    bool declared_no_accumulation = false;
    std::vector<Scalar> accumulation_points;
    std::optional<BoundDeclaration> below;
    std::optional<BoundDeclaration> above;

    [[nodiscard]] bool empty() const
    {
        return !declared_no_accumulation && accumulation_points.empty() && !below && !above;
    }
};

/// Symbolic, possibly infinite subset of the line.
struct SubspaceDescription {
    std::vector<Component> components;
    Metadata meta;

    /// Empty string when every component is well formed.
    [[nodiscard]] std::string validate() const;
    /// Serialises in the space-file grammar.
    [[nodiscard]] std::string str() const;
};

SubspaceDescription make_space(std::vector<Component> components);
/// The subset {x : -x in A}, with metadata mirrored.
SubspaceDescription negate(const SubspaceDescription& space);

// ---- enumeration ------------------------------------------------------------------

struct Limits {
    std::size_t accumulation_cap = 10'000;  // points per accumulating tail inside a window
    std::size_t max_steps = 1'000'000;      // rule evaluations per walk
    std::size_t max_bits = 1 << 15;         // size of an exact partial sum during a walk
};

struct PointTag {
    std::size_t component = 0;
    std::int64_t index = 0;  // position within the component, 0 at its anchor
};

struct Fragment {
    Interval interval;
    bool lo_artificial = false;  // clipped by the window, not a real endpoint of A
    bool hi_artificial = false;
    PointTag tag;
};

/// Points of a tail that were not enumerated lie strictly between `limit` and `last`.
struct Truncation {
    Scalar limit;
    Scalar last;
    std::size_t component = 0;

    [[nodiscard]] Interval region() const;
};

struct Materialization {
    Window window;
    std::vector<Scalar> points;  // sorted
    std::vector<PointTag> tags;  // parallel to points
    std::vector<Fragment> fragments;
    std::vector<Truncation> truncations;

    [[nodiscard]] bool truncated() const { return !truncations.empty(); }
    [[nodiscard]] bool empty() const { return points.empty() && fragments.empty(); }
    /// True when (a, b) contains no unenumerated points.
    [[nodiscard]] bool exact_between(const Scalar& a, const Scalar& b) const;
};

Materialization materialize(const SubspaceDescription& space, const Window& window, const Limits& limits = {});

// ---- symbolic queries -------------------------------------------------------------

bool contains(const SubspaceDescription& space, const Scalar& x, const Limits& limits = {});
/// Whether every point of `set` lies in the space.
bool contains(const SubspaceDescription& space, const Interval& set, const Limits& limits = {});
/// A point of `set` outside the space, if any.
std::optional<Scalar> first_missing(const SubspaceDescription& space, const Interval& set, const Limits& limits = {});

std::optional<PointTag> locate(const SubspaceDescription& space, const Scalar& x, const Limits& limits = {});
/// Point with the given index of a discrete component.
std::optional<Scalar> point_at(const SubspaceDescription& space, std::size_t component, std::int64_t index,
                               const Limits& limits = {});
/// Full interval with the given index of an interval-sequence component.
std::optional<Interval> interval_at(const SubspaceDescription& space, std::size_t component, std::int64_t index,
                                    const Limits& limits = {});
/// Nearest point of the space strictly right (left) of x; discrete spaces only.
std::optional<Scalar> successor(const SubspaceDescription& space, const Scalar& x, const Limits& limits = {});
std::optional<Scalar> predecessor(const SubspaceDescription& space, const Scalar& x, const Limits& limits = {});

struct Bounds {
    Extremum below;  // infimum (value) with attainment; Infinite when unbounded
    Extremum above;

    [[nodiscard]] bool bounded_below() const { return below.kind != Extremum::Kind::Infinite; }
    [[nodiscard]] bool bounded_above() const { return above.kind != Extremum::Kind::Infinite; }
};

Bounds is_bounded(const SubspaceDescription& space);
Bounds component_bounds(const Component& c);

/// Metric hull: the interval spanned by the space, sides closed exactly when attained.
Interval hull(const SubspaceDescription& space);
SubspaceDescription as_space(const Interval& interval);

bool has_intervals(const SubspaceDescription& space);
/// Finite accumulation points implied by the description (discrete tails with finite sums).
std::vector<Scalar> accumulation_points(const SubspaceDescription& space);
/// Discrete and free of finite accumulation points.
bool is_locally_finite(const SubspaceDescription& space);

/// Single gap-sequence form of a discrete space whose components occupy disjoint ranges.
std::optional<GapSequence> discrete_normal_form(const SubspaceDescription& space);

// ---- gap spectrum, balls, metadata ------------------------------------------------

struct GapEntry {
    Scalar gap;
    Multiplicity multiplicity;
};

struct GapSpectrum {
    enum class Exactness { Exact, WindowLowerBound, ExtremaOnly };

    std::vector<GapEntry> entries;  // strictly increasing gaps
    Exactness exactness = Exactness::Exact;
    Extremum minimum;  // Attained: a minimum exists; otherwise only an infimum
    Extremum maximum;
    Multiplicity min_multiplicity;
    Multiplicity max_multiplicity;

    [[nodiscard]] bool has_minimum() const { return minimum.kind == Extremum::Kind::Attained; }
    [[nodiscard]] bool has_maximum() const { return maximum.kind == Extremum::Kind::Attained; }
};

std::string to_string(GapSpectrum::Exactness e);

/// Spectrum of adjacent gaps on the window.
GapSpectrum gap_spectrum(const SubspaceDescription& space, const Window& window, const Limits& limits = {});
/// Exact symbolic spectrum information when the space has a discrete normal form.
std::optional<GapSpectrum> gap_spectrum(const SubspaceDescription& space);

/// Number of points of the space in the open ball B(center, radius).
std::size_t ball_census(const SubspaceDescription& space, const Scalar& center, const Scalar& radius, const Window& window,
                        const Limits& limits = {});

struct DeclarationCheck {
    std::string declaration;
    bool pass = false;
    std::string evidence;
    std::optional<std::pair<Scalar, Scalar>> witness;
    std::optional<Scalar> gap_lower_bound;
};

struct MetadataReport {
    Window window;
    std::vector<DeclarationCheck> checks;

    [[nodiscard]] bool pass() const;
    /// Throws DeclarationContradicted naming the first failing declaration.
    void require_pass() const;
};

MetadataReport validate_metadata(const SubspaceDescription& space, const Window& window, const Limits& limits = {});

}  // namespace plasti
