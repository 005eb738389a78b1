#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plasti/scalar.hpp"

namespace plasti {

/// One side of an interval. Infinite endpoints are always open.
struct Endpoint {
    enum class Kind { Finite, NegInf, PosInf };

    Kind kind = Kind::Finite;
    Scalar value;
    bool closed = false;

    static Endpoint finite(Scalar v, bool closed) { return {Kind::Finite, std::move(v), closed}; }
    static Endpoint neg_inf() { return {Kind::NegInf, Scalar{}, false}; }
    static Endpoint pos_inf() { return {Kind::PosInf, Scalar{}, false}; }

    [[nodiscard]] bool is_finite() const { return kind == Kind::Finite; }

    friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Interval of the real line with explicit endpoint topology.
///
/// Valid intervals satisfy lo < hi, or lo == hi with both sides closed (a single point).
struct Interval {
    Endpoint lo;
    Endpoint hi;

    static Interval closed(Scalar a, Scalar b);
    static Interval open(Scalar a, Scalar b);
    static Interval point(const Scalar& a) { return closed(a, a); }
    static Interval make(Scalar a, bool lo_closed, Scalar b, bool hi_closed);

    [[nodiscard]] bool valid() const;
    [[nodiscard]] bool degenerate() const;
    [[nodiscard]] bool bounded() const { return lo.is_finite() && hi.is_finite(); }
    [[nodiscard]] bool contains(const Scalar& x) const;
    /// True when every point of `other` lies in this interval.
    [[nodiscard]] bool contains(const Interval& other) const;
    /// Requires bounded(); returns the midpoint of the closure.
    [[nodiscard]] Scalar midpoint() const;
    [[nodiscard]] Scalar length() const;

    /// Formats as `[0,1)`, `(2,+inf)`, `{3}` style text accepted by parse().
    [[nodiscard]] std::string str() const;
    /// Parses `[a,b]`, `(a,b)`, `[a,b)`, `(a,b]` with `-inf`/`+inf` allowed on open sides.
    static std::optional<Interval> parse(std::string_view text);

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Compares lower endpoints: which interval starts further left.
bool lower_before(const Endpoint& a, const Endpoint& b);
/// Compares upper endpoints: which interval ends further left.
bool upper_before(const Endpoint& a, const Endpoint& b);

std::optional<Interval> intersect(const Interval& a, const Interval& b);
/// a \ b as zero, one or two intervals.
std::vector<Interval> subtract(const Interval& a, const Interval& b);
bool overlaps(const Interval& a, const Interval& b);

/// Image of `dom` under x -> slope*x + intercept; slope may be zero (degenerate image).
Interval affine_image(const Interval& dom, const Scalar& slope, const Scalar& intercept);

/// Mirror image under x -> -x.
Interval negate(const Interval& i);

}  // namespace plasti
