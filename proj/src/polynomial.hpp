#pragma once

#include <vector>

#include "plasti/gap_rule.hpp"
#include "plasti/scalar.hpp"

namespace plasti::detail {

/// Dense polynomial with rational coefficients, lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coeffs);
    static Polynomial constant(const Scalar& c) { return Polynomial({c}); }
    /// m + c
    static Polynomial linear(const Scalar& slope, const Scalar& c) { return Polynomial({c, slope}); }

    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] const Scalar& leading() const { return coeffs_.back(); }
    [[nodiscard]] const std::vector<Scalar>& coeffs() const { return coeffs_; }
    [[nodiscard]] Scalar eval(const Scalar& m) const;
    /// p(m + s)
    [[nodiscard]] Polynomial shifted(const Scalar& s) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

private:
    void trim();
    std::vector<Scalar> coeffs_;
};

/// Decides p(m) >= 0 for every integer m >= 1. Unknown when the root bound is too large
/// to enumerate the sign changes explicitly.
Tri nonnegative_on_positive_integers(const Polynomial& p);

}  // namespace plasti::detail
