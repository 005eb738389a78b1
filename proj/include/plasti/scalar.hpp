#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace plasti {

/// Exact rational number. Always canonical: lowest terms, positive denominator.
class Scalar {
public:
    Scalar() = default;
    Scalar(long value) : q_(value) {}
    Scalar(int value) : q_(static_cast<long>(value)) {}
    Scalar(long num, long den);
    explicit Scalar(mpq_class q);

    /// Parses `p`, `-p`, `p/q` (no embedded whitespace). Throws std::invalid_argument.
    static Scalar parse(std::string_view text);
    /// Non-throwing variant; returns false and leaves `out` untouched on failure.
    static bool try_parse(std::string_view text, Scalar& out);

    [[nodiscard]] std::string str() const;
    [[nodiscard]] double to_double() const { return q_.get_d(); }

    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
    [[nodiscard]] int sign() const { return sgn(q_); }
    [[nodiscard]] Scalar abs() const;
    [[nodiscard]] Scalar floor() const;
    [[nodiscard]] Scalar reciprocal() const;
    /// Exact square root when the value is the square of a rational.
    [[nodiscard]] bool exact_sqrt(Scalar& root) const;
    /// Value as a signed 64-bit integer; throws std::overflow_error if not an integer in range.
    [[nodiscard]] std::int64_t to_int64() const;

    [[nodiscard]] const mpq_class& raw() const { return q_; }
    /// Bits in the numerator plus bits in the denominator.
    [[nodiscard]] std::size_t bits() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a);

    friend bool operator==(const Scalar& a, const Scalar& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b)
    {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

private:
    mpq_class q_;
};

/// The line metric d(x, y) = |x - y|.
inline Scalar dist(const Scalar& x, const Scalar& y) { return (x - y).abs(); }

inline const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

}  // namespace plasti

template <>
struct std::hash<plasti::Scalar> {
    std::size_t operator()(const plasti::Scalar& s) const noexcept;
};
