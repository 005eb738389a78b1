#include "plasti/gap_rule.hpp"

#include <utility>

#include "polynomial.hpp"

namespace plasti {

using detail::Polynomial;

Multiplicity& Multiplicity::operator+=(const Multiplicity& o)
{
    infinite = infinite || o.infinite;
    count += o.count;
    return *this;
}

std::string Multiplicity::str() const { return infinite ? std::string("inf") : std::to_string(count); }

GapRule GapRule::constant(Scalar c)
{
    GapRule r;
    r.kind_ = Kind::Constant;
    r.b_ = std::move(c);
    return r;
}

GapRule GapRule::affine(Scalar a, Scalar b)
{
    GapRule r;
    r.kind_ = Kind::Affine;
    r.a_ = std::move(a);
    r.b_ = std::move(b);
    return r;
}

GapRule GapRule::reciprocal(Scalar c)
{
    GapRule r;
    r.kind_ = Kind::Reciprocal;
    r.b_ = std::move(c);
    return r;
}

GapRule GapRule::reciprocal_difference(Scalar c)
{
    GapRule r;
    r.kind_ = Kind::ReciprocalDifference;
    r.b_ = std::move(c);
    return r;
}

GapRule GapRule::alternating(GapRule odd, GapRule even)
{
    GapRule r;
    r.kind_ = Kind::Alternating;
    r.parts_ = {std::move(odd), std::move(even)};
    return r;
}

Scalar GapRule::at(std::uint64_t n) const
{
    const Scalar idx(static_cast<long>(n));
    switch (kind_) {
    case Kind::Constant: return b_;
    case Kind::Affine: return a_ * idx + b_;
    case Kind::Reciprocal: return (idx + b_).reciprocal();
    case Kind::ReciprocalDifference: return (idx + b_).reciprocal() - (idx + b_ + Scalar(1)).reciprocal();
    case Kind::Alternating: return n % 2 == 1 ? parts_[0].at((n + 1) / 2) : parts_[1].at(n / 2);
    }
    return {};
}

std::optional<Scalar> GapRule::partial(std::uint64_t n) const
{
    const Scalar idx(static_cast<long>(n));
    switch (kind_) {
    case Kind::Constant: return idx * b_;
    case Kind::Affine: return a_ * idx * (idx + Scalar(1)) / Scalar(2) + b_ * idx;
    case Kind::Reciprocal:
        if (n == 0) {
            return Scalar(0);
        }
        return std::nullopt;
    case Kind::ReciprocalDifference: return (Scalar(1) + b_).reciprocal() - (idx + b_ + Scalar(1)).reciprocal();
    case Kind::Alternating: {
        const auto odd = parts_[0].partial((n + 1) / 2);
        const auto even = parts_[1].partial(n / 2);
        if (odd && even) {
            return *odd + *even;
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

GapRule GapRule::shifted(std::uint64_t k) const
{
    const Scalar step(static_cast<long>(k));
    switch (kind_) {
    case Kind::Constant: return *this;
    case Kind::Affine: return affine(a_, b_ + a_ * step);
    case Kind::Reciprocal: return reciprocal(b_ + step);
    case Kind::ReciprocalDifference: return reciprocal_difference(b_ + step);
    case Kind::Alternating:
        if (k % 2 == 0) {
            return alternating(parts_[0].shifted(k / 2), parts_[1].shifted(k / 2));
        }
        return alternating(parts_[1].shifted(k / 2), parts_[0].shifted(k / 2 + 1));
    }
    return *this;
}

std::string GapRule::validate() const
{
    switch (kind_) {
    case Kind::Constant:
        return b_.sign() > 0 ? "" : "const(c) needs c > 0";
    case Kind::Affine:
        if (a_.sign() < 0) {
            return "affine(a*n+b) needs a >= 0";
        }
        return (a_ + b_).sign() > 0 ? "" : "affine(a*n+b) needs a + b > 0";
    case Kind::Reciprocal:
    case Kind::ReciprocalDifference:
        return (b_ + Scalar(1)).sign() > 0 ? "" : "reciprocal rules need 1 + c > 0";
    case Kind::Alternating:
        for (const auto& p : parts_) {
            if (p.kind() == Kind::Alternating) {
                return "alt(...) parts must be simple rules";
            }
            if (auto why = p.validate(); !why.empty()) {
                return why;
            }
        }
        return "";
    }
    return "unknown rule";
}

std::optional<Scalar> GapRule::sum() const
{
    switch (kind_) {
    case Kind::ReciprocalDifference: return (b_ + Scalar(1)).reciprocal();
    case Kind::Alternating: {
        auto s0 = parts_[0].sum();
        auto s1 = parts_[1].sum();
        if (s0 && s1) {
            return *s0 + *s1;
        }
        return std::nullopt;
    }
    default: return std::nullopt;
    }
}

namespace {

Extremum combine_inf(const Extremum& x, const Extremum& y)
{
    if (x.kind == Extremum::Kind::Infinite) {
        return x;
    }
    if (y.kind == Extremum::Kind::Infinite) {
        return y;
    }
    if (x.value != y.value) {
        return x.value < y.value ? x : y;
    }
    return x.kind == Extremum::Kind::Attained ? x : y;
}

Extremum combine_sup(const Extremum& x, const Extremum& y)
{
    if (x.kind == Extremum::Kind::Infinite) {
        return x;
    }
    if (y.kind == Extremum::Kind::Infinite) {
        return y;
    }
    if (x.value != y.value) {
        return x.value > y.value ? x : y;
    }
    return x.kind == Extremum::Kind::Attained ? x : y;
}

bool positive_integer(const Scalar& s) { return s.is_integer() && s.sign() > 0; }

struct RationalFunction {
    Polynomial num;
    Polynomial den;
};

RationalFunction as_rational(const GapRule& r)
{
    const Polynomial one = Polynomial::constant(Scalar(1));
    switch (r.kind()) {
    case GapRule::Kind::Constant: return {Polynomial::constant(r.b()), one};
    case GapRule::Kind::Affine: return {Polynomial::linear(r.a(), r.b()), one};
    case GapRule::Kind::Reciprocal: return {one, Polynomial::linear(Scalar(1), r.b())};
    case GapRule::Kind::ReciprocalDifference:
        return {one, Polynomial::linear(Scalar(1), r.b()) * Polynomial::linear(Scalar(1), r.b() + Scalar(1))};
    case GapRule::Kind::Alternating: break;
    }
    return {Polynomial{}, one};
}

std::string signed_term(const Scalar& c)
{
    if (c.is_zero()) {
        return "";
    }
    return c.sign() > 0 ? "+" + c.str() : c.str();
}

}  // namespace

Extremum GapRule::infimum() const
{
    switch (kind_) {
    case Kind::Constant: return Extremum::attained(b_);
    case Kind::Affine: return Extremum::attained(a_ + b_);
    case Kind::Reciprocal:
    case Kind::ReciprocalDifference: return Extremum::not_attained(Scalar(0));
    case Kind::Alternating: return combine_inf(parts_[0].infimum(), parts_[1].infimum());
    }
    return Extremum::infinite();
}

Extremum GapRule::supremum() const
{
    switch (kind_) {
    case Kind::Constant: return Extremum::attained(b_);
    case Kind::Affine: return a_.is_zero() ? Extremum::attained(b_) : Extremum::infinite();
    case Kind::Reciprocal:
    case Kind::ReciprocalDifference: return Extremum::attained(at(1));
    case Kind::Alternating: return combine_sup(parts_[0].supremum(), parts_[1].supremum());
    }
    return Extremum::infinite();
}

std::vector<std::uint64_t> GapRule::indices_of(const Scalar& v) const
{
    auto single = [](const Scalar& n) -> std::vector<std::uint64_t> {
        if (positive_integer(n)) {
            return {static_cast<std::uint64_t>(n.to_int64())};
        }
        return {};
    };
    switch (kind_) {
    case Kind::Constant: return v == b_ ? std::vector<std::uint64_t>{1} : std::vector<std::uint64_t>{};
    case Kind::Affine:
        if (a_.is_zero()) {
            return v == b_ ? std::vector<std::uint64_t>{1} : std::vector<std::uint64_t>{};
        }
        return single((v - b_) / a_);
    case Kind::Reciprocal:
        if (v.sign() <= 0) {
            return {};
        }
        return single(v.reciprocal() - b_);
    case Kind::ReciprocalDifference: {
        if (v.sign() <= 0) {
            return {};
        }
        // v = 1/(t(t+1)) with t = n + c  =>  t = (sqrt(1 + 4/v) - 1) / 2
        Scalar root;
        if (!(Scalar(1) + Scalar(4) / v).exact_sqrt(root)) {
            return {};
        }
        return single((root - Scalar(1)) / Scalar(2) - b_);
    }
    case Kind::Alternating: {
        std::vector<std::uint64_t> out;
        for (auto m : parts_[0].indices_of(v)) {
            out.push_back(2 * m - 1);
        }
        for (auto m : parts_[1].indices_of(v)) {
            out.push_back(2 * m);
        }
        return out;
    }
    }
    return {};
}

Multiplicity GapRule::count(const Scalar& v) const
{
    switch (kind_) {
    case Kind::Constant: return v == b_ ? Multiplicity::unbounded() : Multiplicity::finite(0);
    case Kind::Affine:
        if (a_.is_zero()) {
            return v == b_ ? Multiplicity::unbounded() : Multiplicity::finite(0);
        }
        break;
    case Kind::Alternating: {
        Multiplicity m = parts_[0].count(v);
        m += parts_[1].count(v);
        return m;
    }
    default: break;
    }
    return Multiplicity::finite(indices_of(v).size());
}

RuleComparison compare_rules(const GapRule& f, std::uint64_t fs, const GapRule& g, std::uint64_t gs)
{
    if (f.kind() == GapRule::Kind::Alternating || g.kind() == GapRule::Kind::Alternating) {
        return {Tri::Unknown, false};
    }
    const RationalFunction rf = as_rational(f);
    const RationalFunction rg = as_rational(g);
    const Scalar sf(static_cast<long>(fs));
    const Scalar sg(static_cast<long>(gs));
    // f <= g  <=>  Pg*Qf - Pf*Qg >= 0, denominators being positive on the index range.
    const Polynomial diff = rg.num.shifted(sg) * rf.den.shifted(sf) - rf.num.shifted(sf) * rg.den.shifted(sg);
    return {detail::nonnegative_on_positive_integers(diff), diff.is_zero()};
}

namespace {

Tri both(Tri x, Tri y)
{
    if (x == Tri::No || y == Tri::No) {
        return Tri::No;
    }
    if (x == Tri::Unknown || y == Tri::Unknown) {
        return Tri::Unknown;
    }
    return Tri::Yes;
}

}  // namespace

Tri GapRule::monotone(bool increasing, bool& strict) const
{
    if (kind_ != Kind::Alternating) {
        const RuleComparison c = increasing ? compare_rules(*this, 0, *this, 1) : compare_rules(*this, 1, *this, 0);
        strict = !c.identical;
        return c.leq;
    }
    const GapRule& odd = parts_[0];
    const GapRule& even = parts_[1];
    const RuleComparison c1 = increasing ? compare_rules(odd, 0, even, 0) : compare_rules(even, 0, odd, 0);
    const RuleComparison c2 = increasing ? compare_rules(even, 0, odd, 1) : compare_rules(odd, 1, even, 0);
    strict = !(c1.identical && c2.identical);
    return both(c1.leq, c2.leq);
}

std::string GapRule::str() const
{
    switch (kind_) {
    case Kind::Constant: return "const(" + b_.str() + ")";
    case Kind::Affine: {
        std::string lin = a_ == Scalar(1) ? "n" : a_.str() + "*n";
        if (a_.is_zero()) {
            return "affine(" + b_.str() + ")";
        }
        return "affine(" + lin + signed_term(b_) + ")";
    }
    case Kind::Reciprocal: return "recip(n" + signed_term(b_) + ")";
    case Kind::ReciprocalDifference: return "recipdiff(n" + signed_term(b_) + ")";
    case Kind::Alternating: return "alt(" + parts_[0].str() + "," + parts_[1].str() + ")";
    }
    return "?";
}

Scalar GapList::at(std::uint64_t n) const
{
    if (n <= prefix.size()) {
        return prefix[n - 1];
    }
    return tail->at(n - prefix.size());
}

std::optional<Scalar> GapList::sum() const
{
    Scalar total;
    for (const auto& v : prefix) {
        total += v;
    }
    if (!tail) {
        return total;
    }
    auto t = tail->sum();
    if (!t) {
        return std::nullopt;
    }
    return total + *t;
}

GapList GapList::dropped_first() const
{
    GapList out = *this;
    if (!out.prefix.empty()) {
        out.prefix.erase(out.prefix.begin());
    } else if (out.tail) {
        out.tail = out.tail->shifted(1);
    }
    return out;
}

GapList GapList::with_front(const Scalar& v) const
{
    GapList out = *this;
    out.prefix.insert(out.prefix.begin(), v);
    return out;
}

std::string GapList::validate(bool allow_zero) const
{
    for (const auto& v : prefix) {
        if (v.sign() < 0 || (!allow_zero && v.is_zero())) {
            return "list entries must be positive, got " + v.str();
        }
    }
    return tail ? tail->validate() : std::string{};
}

std::string GapList::str() const
{
    if (prefix.empty()) {
        return tail ? tail->str() : std::string("[]");
    }
    std::string out = "[";
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        out += (i == 0 ? "" : ",") + prefix[i].str();
    }
    out += "]";
    if (tail) {
        out += "+" + tail->str();
    }
    return out;
}

}  // namespace plasti
