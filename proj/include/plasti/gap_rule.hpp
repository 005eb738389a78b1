#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plasti/scalar.hpp"

namespace plasti {

/// Three-valued answer for symbolic questions that are decidable only for some catalog inputs.
enum class Tri { No, Yes, Unknown };

/// Multiplicity of a value: a finite count or infinitely many occurrences.
struct Multiplicity {
    bool infinite = false;
    std::uint64_t count = 0;

    static Multiplicity finite(std::uint64_t n) { return {false, n}; }
    static Multiplicity unbounded() { return {true, 0}; }

    Multiplicity& operator+=(const Multiplicity& o);
    [[nodiscard]] bool positive() const { return infinite || count > 0; }
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

/// Infimum or supremum of a value set, with attainment.
struct Extremum {
    enum class Kind { Attained, NotAttained, Infinite };

    Kind kind = Kind::Infinite;
    Scalar value;

    static Extremum attained(Scalar v) { return {Kind::Attained, std::move(v)}; }
    static Extremum not_attained(Scalar v) { return {Kind::NotAttained, std::move(v)}; }
    static Extremum infinite() { return {Kind::Infinite, Scalar{}}; }
};

/// Closed catalog of index -> gap rules. Indices start at 1.
///
///   const(c)          c
///   affine(a*n+b)     a*n + b            (a >= 0)
///   recip(n+c)        1/(n+c)
///   recipdiff(n+c)    1/(n+c) - 1/(n+c+1)
///   alt(r1,r2)        r1((n+1)/2) for odd n, r2(n/2) for even n
class GapRule {
public:
    enum class Kind { Constant, Affine, Reciprocal, ReciprocalDifference, Alternating };

    static GapRule constant(Scalar c);
    static GapRule affine(Scalar a, Scalar b);
    static GapRule reciprocal(Scalar c);
    static GapRule reciprocal_difference(Scalar c);
    static GapRule alternating(GapRule odd, GapRule even);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] const Scalar& a() const { return a_; }
    [[nodiscard]] const Scalar& b() const { return b_; }
    [[nodiscard]] const std::vector<GapRule>& parts() const { return parts_; }

    /// Value at index n >= 1.
    [[nodiscard]] Scalar at(std::uint64_t n) const;
    /// Rule whose n-th term is this rule's (n+k)-th term.
    [[nodiscard]] GapRule shifted(std::uint64_t k) const;

    /// Empty string when valid, otherwise the reason. Every term must be positive.
    [[nodiscard]] std::string validate() const;

    /// Sum of terms 1..n in closed form; nullopt for recip, whose partial sums are harmonic.
    [[nodiscard]] std::optional<Scalar> partial(std::uint64_t n) const;
    /// Sum over all n >= 1 when finite.
    [[nodiscard]] std::optional<Scalar> sum() const;
    [[nodiscard]] Extremum infimum() const;
    [[nodiscard]] Extremum supremum() const;
    /// Number of indices n >= 1 with at(n) == v.
    [[nodiscard]] Multiplicity count(const Scalar& v) const;
    /// Indices n >= 1 with at(n) == v; only meaningful when count(v) is finite.
    [[nodiscard]] std::vector<std::uint64_t> indices_of(const Scalar& v) const;

    /// Whether the term sequence is non-decreasing (`increasing`) or non-increasing.
    /// `strict` reports whether some step is a strict inequality (meaningful on Yes).
    [[nodiscard]] Tri monotone(bool increasing, bool& strict) const;

    /// x -> -x of all terms is not meaningful; this is the grammar text.
    [[nodiscard]] std::string str() const;

    friend bool operator==(const GapRule&, const GapRule&) = default;

private:
    Kind kind_ = Kind::Constant;
    Scalar a_;
    Scalar b_;
    std::vector<GapRule> parts_;
};

/// A gap (or length) list: an explicit finite prefix followed by an optional infinite rule.
/// Rule indices restart at 1 after the prefix.
struct GapList {
    std::vector<Scalar> prefix;
    std::optional<GapRule> tail;

    [[nodiscard]] bool infinite() const { return tail.has_value(); }
    [[nodiscard]] std::size_t finite_size() const { return prefix.size(); }
    [[nodiscard]] bool empty() const { return prefix.empty() && !tail; }
    /// Term n >= 1. Requires n within range.
    [[nodiscard]] Scalar at(std::uint64_t n) const;
    [[nodiscard]] bool has(std::uint64_t n) const { return tail.has_value() || n <= prefix.size(); }
    /// Total of all terms when finite.
    [[nodiscard]] std::optional<Scalar> sum() const;
    /// Drop the first term.
    [[nodiscard]] GapList dropped_first() const;
    [[nodiscard]] GapList with_front(const Scalar& v) const;

    [[nodiscard]] std::string validate(bool allow_zero) const;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const GapList&, const GapList&) = default;
};

/// Outcome of a comparison over all indices: Yes when always <=, plus whether the two
/// sides are identical.
struct RuleComparison {
    Tri leq = Tri::Unknown;
    bool identical = false;
};

/// Decides f(m + fs) <= g(m + gs) for every integer m >= 1. Both must be non-alternating.
RuleComparison compare_rules(const GapRule& f, std::uint64_t fs, const GapRule& g, std::uint64_t gs);

}  // namespace plasti
