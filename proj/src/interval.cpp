#include "plasti/interval.hpp"

#include <cctype>

namespace plasti {

Interval Interval::closed(Scalar a, Scalar b)
{
    return {Endpoint::finite(std::move(a), true), Endpoint::finite(std::move(b), true)};
}

Interval Interval::open(Scalar a, Scalar b)
{
    return {Endpoint::finite(std::move(a), false), Endpoint::finite(std::move(b), false)};
}

Interval Interval::make(Scalar a, bool lo_closed, Scalar b, bool hi_closed)
{
    return {Endpoint::finite(std::move(a), lo_closed), Endpoint::finite(std::move(b), hi_closed)};
}

bool Interval::valid() const
{
    if (lo.kind == Endpoint::Kind::PosInf || hi.kind == Endpoint::Kind::NegInf) {
        return false;
    }
    if ((!lo.is_finite() && lo.closed) || (!hi.is_finite() && hi.closed)) {
        return false;
    }
    if (lo.is_finite() && hi.is_finite()) {
        if (lo.value < hi.value) {
            return true;
        }
        return lo.value == hi.value && lo.closed && hi.closed;
    }
    return true;
}

bool Interval::degenerate() const { return lo.is_finite() && hi.is_finite() && lo.value == hi.value; }

bool Interval::contains(const Scalar& x) const
{
    if (lo.is_finite() && (x < lo.value || (x == lo.value && !lo.closed))) {
        return false;
    }
    if (hi.is_finite() && (x > hi.value || (x == hi.value && !hi.closed))) {
        return false;
    }
    return true;
}

bool Interval::contains(const Interval& other) const
{
    return !lower_before(other.lo, lo) && !upper_before(hi, other.hi);
}

Scalar Interval::midpoint() const { return (lo.value + hi.value) / Scalar(2); }

Scalar Interval::length() const { return hi.value - lo.value; }

namespace {

std::string endpoint_text(const Endpoint& e)
{
    switch (e.kind) {
    case Endpoint::Kind::NegInf: return "-inf";
    case Endpoint::Kind::PosInf: return "+inf";
    case Endpoint::Kind::Finite: break;
    }
    return e.value.str();
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<Endpoint> parse_endpoint(std::string_view text, bool closed)
{
    text = trim(text);
    if (text == "-inf") {
        return closed ? std::nullopt : std::optional<Endpoint>(Endpoint::neg_inf());
    }
    if (text == "+inf" || text == "inf") {
        return closed ? std::nullopt : std::optional<Endpoint>(Endpoint::pos_inf());
    }
    Scalar v;
    if (!Scalar::try_parse(text, v)) {
        return std::nullopt;
    }
    return Endpoint::finite(v, closed);
}

// Order on lower endpoints by the set of points they admit: smaller admits more.
int lower_cmp(const Endpoint& a, const Endpoint& b)
{
    auto rank = [](const Endpoint& e) { return e.kind == Endpoint::Kind::NegInf ? 0 : (e.is_finite() ? 1 : 2); };
    if (rank(a) != rank(b)) {
        return rank(a) < rank(b) ? -1 : 1;
    }
    if (!a.is_finite()) {
        return 0;
    }
    if (a.value != b.value) {
        return a.value < b.value ? -1 : 1;
    }
    if (a.closed == b.closed) {
        return 0;
    }
    return a.closed ? -1 : 1;
}

int upper_cmp(const Endpoint& a, const Endpoint& b)
{
    auto rank = [](const Endpoint& e) { return e.kind == Endpoint::Kind::NegInf ? 0 : (e.is_finite() ? 1 : 2); };
    if (rank(a) != rank(b)) {
        return rank(a) < rank(b) ? -1 : 1;
    }
    if (!a.is_finite()) {
        return 0;
    }
    if (a.value != b.value) {
        return a.value < b.value ? -1 : 1;
    }
    if (a.closed == b.closed) {
        return 0;
    }
    return a.closed ? 1 : -1;
}

}  // namespace

std::string Interval::str() const
{
    std::string out;
    out += lo.closed ? '[' : '(';
    out += endpoint_text(lo);
    out += ',';
    out += endpoint_text(hi);
    out += hi.closed ? ']' : ')';
    return out;
}

std::optional<Interval> Interval::parse(std::string_view text)
{
    text = trim(text);
    if (text.size() < 5) {
        return std::nullopt;
    }
    const char open_c = text.front();
    const char close_c = text.back();
    if ((open_c != '[' && open_c != '(') || (close_c != ']' && close_c != ')')) {
        return std::nullopt;
    }
    const std::string_view body = text.substr(1, text.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
        return std::nullopt;
    }
    auto lo = parse_endpoint(body.substr(0, comma), open_c == '[');
    auto hi = parse_endpoint(body.substr(comma + 1), close_c == ']');
    if (!lo || !hi) {
        return std::nullopt;
    }
    Interval out{*lo, *hi};
    if (!out.valid()) {
        return std::nullopt;
    }
    return out;
}

bool lower_before(const Endpoint& a, const Endpoint& b) { return lower_cmp(a, b) < 0; }

bool upper_before(const Endpoint& a, const Endpoint& b) { return upper_cmp(a, b) < 0; }

std::optional<Interval> intersect(const Interval& a, const Interval& b)
{
    Interval out{lower_before(a.lo, b.lo) ? b.lo : a.lo, upper_before(a.hi, b.hi) ? a.hi : b.hi};
    if (!out.valid()) {
        return std::nullopt;
    }
    return out;
}

bool overlaps(const Interval& a, const Interval& b) { return intersect(a, b).has_value(); }

std::vector<Interval> subtract(const Interval& a, const Interval& b)
{
    if (!overlaps(a, b)) {
        return {a};
    }
    std::vector<Interval> out;
    if (b.lo.is_finite()) {
        Interval left{a.lo, Endpoint::finite(b.lo.value, !b.lo.closed)};
        if (auto part = intersect(a, left)) {
            out.push_back(*part);
        }
    }
    if (b.hi.is_finite()) {
        Interval right{Endpoint::finite(b.hi.value, !b.hi.closed), a.hi};
        if (auto part = intersect(a, right)) {
            out.push_back(*part);
        }
    }
    return out;
}

Interval affine_image(const Interval& dom, const Scalar& slope, const Scalar& intercept)
{
    auto map_end = [&](const Endpoint& e, bool flip) -> Endpoint {
        if (!e.is_finite()) {
            const bool neg = (e.kind == Endpoint::Kind::NegInf) != flip;
            return neg ? Endpoint::neg_inf() : Endpoint::pos_inf();
        }
        return Endpoint::finite(slope * e.value + intercept, e.closed);
    };
    if (slope.is_zero()) {
        return Interval::point(intercept);
    }
    if (slope.sign() > 0) {
        return {map_end(dom.lo, false), map_end(dom.hi, false)};
    }
    return {map_end(dom.hi, true), map_end(dom.lo, true)};
}

Interval negate(const Interval& i) { return affine_image(i, Scalar(-1), Scalar(0)); }

}  // namespace plasti
