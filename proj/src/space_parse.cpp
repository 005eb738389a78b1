#include "plasti/space_parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "text.hpp"

namespace plasti {

using detail::fail_at;

namespace {

/// Recursive-descent reader over one rule or list value.
class RuleReader {
public:
    RuleReader(std::string_view text, int line, int column) : text_(text), line_(line), column_(column) {}

    GapList list()
    {
        GapList out;
        if (peek() == '[') {
            ++pos_;
            if (peek() != ']') {
                for (;;) {
                    out.prefix.push_back(scalar());
                    if (peek() == ',') {
                        ++pos_;
                        continue;
                    }
                    break;
                }
            }
            expect(']');
            if (peek() == '+') {
                ++pos_;
                out.tail = rule();
            }
        } else {
            out.tail = rule();
        }
        finish();
        return out;
    }

    GapRule single()
    {
        GapRule r = rule();
        finish();
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& message) const
    {
        fail_at(line_, column_ + static_cast<int>(pos_), message);
    }

    [[nodiscard]] char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c)
    {
        if (peek() != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    void finish() const
    {
        if (pos_ != text_.size()) {
            fail("unexpected trailing text '" + std::string(text_.substr(pos_)) + "'");
        }
    }

    Scalar scalar()
    {
        const std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') {
            ++pos_;
        }
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0 || peek() == '/') {
            ++pos_;
        }
        Scalar s;
        if (!Scalar::try_parse(text_.substr(start, pos_ - start), s)) {
            pos_ = start;
            fail("expected a rational number");
        }
        return s;
    }

    /// Linear expression in n: returns (coefficient of n, constant).
    std::pair<Scalar, Scalar> linear()
    {
        Scalar a;
        Scalar b;
        bool first = true;
        while (first || peek() == '+' || peek() == '-') {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            first = false;
            if (peek() == 'n') {
                ++pos_;
                a += Scalar(sign);
                continue;
            }
            const Scalar v = scalar() * Scalar(sign);
            if (peek() == '*') {
                ++pos_;
                expect('n');
                a += v;
            } else if (peek() == 'n') {
                ++pos_;
                a += v;
            } else {
                b += v;
            }
        }
        return {a, b};
    }

    Scalar shift_argument(const char* name)
    {
        const std::size_t at = pos_;
        const auto [a, b] = linear();
        if (a != Scalar(1)) {
            pos_ = at;
            fail(std::string(name) + "(n+c) needs the index with coefficient 1");
        }
        return b;
    }

    GapRule rule()
    {
        const std::size_t start = pos_;
        while (std::isalpha(static_cast<unsigned char>(peek())) != 0) {
            ++pos_;
        }
        const std::string name(text_.substr(start, pos_ - start));
        expect('(');
        GapRule r;
        if (name == "const") {
            r = GapRule::constant(scalar());
        } else if (name == "affine") {
            const auto [a, b] = linear();
            r = GapRule::affine(a, b);
        } else if (name == "recip") {
            r = GapRule::reciprocal(shift_argument("recip"));
        } else if (name == "recipdiff") {
            r = GapRule::reciprocal_difference(shift_argument("recipdiff"));
        } else if (name == "alt") {
            GapRule odd = rule();
            expect(',');
            GapRule even = rule();
            r = GapRule::alternating(std::move(odd), std::move(even));
        } else {
            pos_ = start;
            fail("unknown rule '" + name + "' (catalog: const, affine, recip, recipdiff, alt)");
        }
        expect(')');
        if (auto why = r.validate(); !why.empty()) {
            pos_ = start;
            fail(why);
        }
        return r;
    }

    std::string_view text_;
    int line_;
    int column_;
    std::size_t pos_ = 0;
};

GapList list_at(const detail::KeyValue& kv, int line)
{
    return RuleReader(kv.value, line, kv.value_column).list();
}

using detail::Handler;
using detail::keyed;

Scalar scalar_key(const Handler& h, const detail::DirectiveLine& l, const char* key, const std::optional<Scalar>& fallback)
{
    const auto it = h.find(key);
    if (it == h.end()) {
        if (!fallback) {
            fail_at(l.line, l.rest_column, std::string("missing ") + key + "=");
        }
        return *fallback;
    }
    return detail::scalar_at(it->second.value, l.line, it->second.value_column);
}

template <typename Parse>
auto enum_key(const Handler& h, const detail::DirectiveLine& l, const char* key, Parse parse, decltype(parse("")) fallback)
{
    const auto it = h.find(key);
    if (it == h.end()) {
        return fallback;
    }
    try {
        return parse(it->second.value);
    } catch (const Error& e) {
        fail_at(l.line, it->second.value_column, e.what());
    }
}

GapList list_key(const Handler& h, const detail::DirectiveLine& l, const char* key)
{
    const auto it = h.find(key);
    return it == h.end() ? GapList{} : list_at(it->second, l.line);
}

std::optional<Interval> interval_token(const detail::DirectiveLine& l, const detail::Token& t)
{
    auto i = Interval::parse(t.text);
    if (!i) {
        fail_at(l.line, t.column, "expected an interval like [0,1) or (2,+inf), got '" + t.text + "'");
    }
    return i;
}

BoundDeclaration bound_value(const detail::KeyValue& kv, int line)
{
    const std::string& v = kv.value;
    if (v == "unbounded") {
        return {BoundDeclaration::Kind::Unbounded, Scalar{}};
    }
    for (const auto& [word, kind] : {std::pair{std::string("attained("), BoundDeclaration::Kind::Attained},
                                     std::pair{std::string("unattained("), BoundDeclaration::Kind::Unattained}}) {
        if (v.rfind(word, 0) == 0 && v.back() == ')') {
            const std::string inner = v.substr(word.size(), v.size() - word.size() - 1);
            return {kind, detail::scalar_at(inner, line, kv.value_column + static_cast<int>(word.size()))};
        }
    }
    fail_at(line, kv.value_column, "expected attained(x), unattained(x) or unbounded");
}

void parse_meta(const detail::DirectiveLine& l, Metadata& meta)
{
    for (const auto& t : l.tokens) {
        if (t.text == "no-accum") {
            meta.declared_no_accumulation = true;
            continue;
        }
        const auto kv = detail::key_value(t);
        if (!kv) {
            fail_at(l.line, t.column, "unknown meta declaration '" + t.text + "'");
        }
        if (kv->key == "accum") {
            meta.accumulation_points.push_back(detail::scalar_at(kv->value, l.line, kv->value_column));
        } else if (kv->key == "bounded-below") {
            meta.below = bound_value(*kv, l.line);
        } else if (kv->key == "bounded-above") {
            meta.above = bound_value(*kv, l.line);
        } else {
            fail_at(l.line, t.column, "unknown meta key '" + kv->key + "'");
        }
    }
}

Component parse_component(const detail::DirectiveLine& l)
{
    const std::string& d = l.directive;
    if (d == "points") {
        FinitePoints f;
        for (const auto& t : l.tokens) {
            std::size_t start = 0;
            while (start <= t.text.size()) {
                const std::size_t comma = std::min(t.text.find(',', start), t.text.size());
                if (comma > start) {
                    f.points.push_back(detail::scalar_at(t.text.substr(start, comma - start), l.line,
                                                         t.column + static_cast<int>(start)));
                }
                start = comma + 1;
            }
        }
        std::sort(f.points.begin(), f.points.end());
        return f;
    }
    if (d == "interval") {
        IntervalList out;
        for (const auto& t : l.tokens) {
            out.intervals.push_back(*interval_token(l, t));
        }
        std::sort(out.intervals.begin(), out.intervals.end(),
                  [](const Interval& a, const Interval& b) { return lower_before(a.lo, b.lo); });
        return out;
    }
    if (d == "halfline") {
        if (l.tokens.size() != 1) {
            fail_at(l.line, l.rest_column, "halfline takes exactly one interval");
        }
        return HalfLine{*interval_token(l, l.tokens.front())};
    }
    if (d == "arith") {
        const Handler h = keyed(l, {"anchor", "step", "dir"});
        return ArithmeticProgression{scalar_key(h, l, "anchor", Scalar(0)), scalar_key(h, l, "step", std::nullopt),
                                     enum_key(h, l, "dir", parse_direction, Direction::Both)};
    }
    if (d == "gapseq") {
        const Handler h = keyed(l, {"anchor", "right", "left"});
        return GapSequence{scalar_key(h, l, "anchor", Scalar(0)), list_key(h, l, "right"), list_key(h, l, "left")};
    }
    if (d == "periodic") {
        const Handler h = keyed(l, {"len", "gap", "anchor", "topo", "dir"});
        return PeriodicIntervals{scalar_key(h, l, "len", std::nullopt), scalar_key(h, l, "gap", std::nullopt),
                                 scalar_key(h, l, "anchor", Scalar(0)),
                                 enum_key(h, l, "topo", parse_topology, Topology::Closed),
                                 enum_key(h, l, "dir", parse_direction, Direction::Both)};
    }
    if (d == "intervalseq") {
        const Handler h = keyed(l, {"anchor", "lenr", "gapr", "lenl", "gapl", "topo"});
        return IntervalSequence{scalar_key(h, l, "anchor", Scalar(0)), list_key(h, l, "lenr"), list_key(h, l, "gapr"),
                                list_key(h, l, "lenl"),                list_key(h, l, "gapl"),
                                enum_key(h, l, "topo", parse_topology, Topology::Closed)};
    }
    fail_at(l.line, l.directive_column, "unknown directive '" + d + "'");
}

}  // namespace

Direction parse_direction(std::string_view text)
{
    if (text == "left") {
        return Direction::Left;
    }
    if (text == "right") {
        return Direction::Right;
    }
    if (text == "both") {
        return Direction::Both;
    }
    throw Error(ErrorKind::ParseError, "direction must be left, right or both, got '" + std::string(text) + "'");
}

Topology parse_topology(std::string_view text)
{
    for (const Topology t : {Topology::Open, Topology::Closed, Topology::LeftClosed, Topology::RightClosed}) {
        if (text == to_string(t)) {
            return t;
        }
    }
    throw Error(ErrorKind::ParseError,
                "topology must be open, closed, left-closed or right-closed, got '" + std::string(text) + "'");
}

GapRule parse_gap_rule(std::string_view text) { return RuleReader(text, 1, 1).single(); }

GapList parse_gap_list(std::string_view text) { return RuleReader(text, 1, 1).list(); }

SubspaceDescription parse_space(std::string_view text)
{
    SubspaceDescription out;
    for (const auto& l : detail::split_directives(text)) {
        if (l.directive == "meta") {
            parse_meta(l, out.meta);
            continue;
        }
        Component c = parse_component(l);
        const SubspaceDescription single = make_space({c});
        if (auto why = single.validate(); !why.empty()) {
            fail_at(l.line, l.directive_column, why.substr(why.find(": ") + 2));
        }
        out.components.push_back(std::move(c));
    }
    if (out.components.empty()) {
        fail_at(1, 1, "the space file declares no components");
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::PreconditionFailed, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SubspaceDescription load_space(const std::string& path) { return parse_space(read_file(path)); }

}  // namespace plasti
