#include "polynomial.hpp"

#include <algorithm>

namespace plasti::detail {

namespace {
constexpr long kMaxSignScan = 1'000'000;
}

Polynomial::Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

Scalar Polynomial::eval(const Scalar& m) const
{
    Scalar acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * m + *it;
    }
    return acc;
}

Polynomial Polynomial::shifted(const Scalar& s) const
{
    const Polynomial base = linear(Scalar(1), s);
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * base + constant(*it);
    }
    return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    std::vector<Scalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        c[i] += a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
        c[i] += b.coeffs_[i];
    }
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b)
{
    std::vector<Scalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        c[i] += a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
        c[i] -= b.coeffs_[i];
    }
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Polynomial(std::move(c));
}

Tri nonnegative_on_positive_integers(const Polynomial& p)
{
    if (p.is_zero()) {
        return Tri::Yes;
    }
    if (p.degree() == 0) {
        return p.leading().sign() >= 0 ? Tri::Yes : Tri::No;
    }
    if (p.leading().sign() < 0) {
        return Tri::No;
    }
    // Cauchy bound: every real root r satisfies |r| < 1 + max |a_i / a_d|, so the sign
    // is settled beyond it and only the integers below need an explicit check.
    Scalar ratio;
    for (int i = 0; i < p.degree(); ++i) {
        ratio = max(ratio, (p.coeffs()[static_cast<std::size_t>(i)] / p.leading()).abs());
    }
    const Scalar bound = (ratio + Scalar(1)).floor();
    if (bound > Scalar(kMaxSignScan)) {
        return Tri::Unknown;
    }
    const long last = static_cast<long>(bound.to_int64());
    for (long m = 1; m <= last; ++m) {
        if (p.eval(Scalar(m)).sign() < 0) {
            return Tri::No;
        }
    }
    return Tri::Yes;
}

}  // namespace plasti::detail
