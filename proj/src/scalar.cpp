#include "plasti/scalar.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace plasti {

Scalar::Scalar(long num, long den) : q_(num, den)
{
    if (den == 0) {
        throw std::invalid_argument("Scalar: zero denominator");
    }
    q_.canonicalize();
}

Scalar::Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool Scalar::try_parse(std::string_view text, Scalar& out)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        return false;
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        return false;
    }
    if (negative) {
        n = -n;
    }
    out = Scalar(mpq_class(n, d));
    return true;
}

Scalar Scalar::parse(std::string_view text)
{
    Scalar out;
    if (!try_parse(text, out)) {
        throw std::invalid_argument("not a scalar: '" + std::string(text) + "'");
    }
    return out;
}

std::string Scalar::str() const { return q_.get_str(10); }

bool Scalar::is_integer() const { return q_.get_den() == 1; }

Scalar Scalar::abs() const { return Scalar(mpq_class(::abs(q_))); }

Scalar Scalar::floor() const
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return Scalar(mpq_class(f));
}

Scalar Scalar::reciprocal() const
{
    if (is_zero()) {
        throw std::domain_error("Scalar: reciprocal of zero");
    }
    return Scalar(mpq_class(1) / q_);
}

bool Scalar::exact_sqrt(Scalar& root) const
{
    if (sign() < 0) {
        return false;
    }
    const mpz_class& n = q_.get_num();
    const mpz_class& d = q_.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
        return false;
    }
    mpz_class rn;
    mpz_class rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    root = Scalar(mpq_class(rn, rd));
    return true;
}

std::int64_t Scalar::to_int64() const
{
    if (!is_integer() || !q_.get_num().fits_slong_p()) {
        throw std::overflow_error("Scalar " + str() + " is not a machine integer");
    }
    return q_.get_num().get_si();
}

std::size_t Scalar::bits() const
{
    return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    q_ += o.q_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    q_ -= o.q_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    q_ *= o.q_;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero()) {
        throw std::domain_error("Scalar: division by zero");
    }
    q_ /= o.q_;
    return *this;
}

Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.q_)); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace plasti

std::size_t std::hash<plasti::Scalar>::operator()(const plasti::Scalar& s) const noexcept
{
    return std::hash<std::string>{}(s.str());
}
