#include "plasti/maps.hpp"
#include "plasti/space_parse.hpp"
#include "text.hpp"

namespace plasti {

using detail::fail_at;

namespace {

std::int64_t integer_at(const detail::KeyValue& kv, int line)
{
    const Scalar s = detail::scalar_at(kv.value, line, kv.value_column);
    if (!s.is_integer()) {
        fail_at(line, kv.value_column, "expected an integer, got '" + kv.value + "'");
    }
    return s.to_int64();
}

std::optional<std::size_t> component_at(const detail::Handler& h, int line)
{
    const auto it = h.find("comp");
    if (it == h.end() || it->second.value == "all") {
        return std::nullopt;
    }
    const std::int64_t c = integer_at(it->second, line);
    if (c < 1) {
        fail_at(line, it->second.value_column, "component selectors start at 1");
    }
    return static_cast<std::size_t>(c - 1);
}

TableRule table_rule(const detail::DirectiveLine& l)
{
    TableRule out;
    for (const detail::Token& t : l.tokens) {
        const auto arrow = t.text.find("->");
        if (arrow == std::string::npos) {
            fail_at(l.line, t.column, "expected x->y, got '" + t.text + "'");
        }
        Scalar x = detail::scalar_at(t.text.substr(0, arrow), l.line, t.column);
        Scalar y = detail::scalar_at(t.text.substr(arrow + 2), l.line, t.column + static_cast<int>(arrow) + 2);
        for (const auto& [k, v] : out.entries) {
            if (k == x) {
                fail_at(l.line, t.column, "duplicate table entry for " + x.str());
            }
        }
        out.entries.emplace_back(std::move(x), std::move(y));
    }
    if (out.entries.empty()) {
        fail_at(l.line, l.rest_column, "table needs at least one entry");
    }
    return out;
}

AffinePieceRule piece_rule(const detail::DirectiveLine& l)
{
    const auto h = detail::keyed(l, {"dom", "comp", "slope", "icpt"});
    AffinePieceRule out;
    if (const auto it = h.find("dom"); it != h.end()) {
        out.dom = Interval::parse(it->second.value);
        if (!out.dom || !out.dom->valid()) {
            fail_at(l.line, it->second.value_column, "expected an interval, got '" + it->second.value + "'");
        }
    }
    out.component = component_at(h, l.line);
    for (const char* key : {"slope", "icpt"}) {
        const auto it = h.find(key);
        if (it == h.end()) {
            fail_at(l.line, l.rest_column, std::string("missing ") + key + "=");
        }
        (std::string(key) == "slope" ? out.slope : out.intercept) =
            detail::scalar_at(it->second.value, l.line, it->second.value_column);
    }
    return out;
}

IndexShiftRule shift_rule(const detail::DirectiveLine& l)
{
    const auto h = detail::keyed(l, {"comp", "k"});
    IndexShiftRule out;
    out.component = component_at(h, l.line);
    const auto it = h.find("k");
    if (it == h.end()) {
        fail_at(l.line, l.rest_column, "missing k=");
    }
    out.k = integer_at(it->second, l.line);
    return out;
}

struct Builder {
    MapDescription map;
    bool mode_set = false;
    std::optional<MapDescription> gallery_inverse;
};

void apply(Builder& b, const detail::DirectiveLine& l, const GalleryResolver& resolver)
{
    if (l.directive == "table") {
        b.map.rules.emplace_back(table_rule(l));
    } else if (l.directive == "piece") {
        b.map.rules.emplace_back(piece_rule(l));
    } else if (l.directive == "idxshift") {
        b.map.rules.emplace_back(shift_rule(l));
    } else if (l.directive == "mode") {
        if (l.tokens.size() != 1) {
            fail_at(l.line, l.rest_column, "expected exclusive or first-match");
        }
        const std::string& v = l.tokens[0].text;
        if (v == "first-match") {
            b.map.mode = MapDescription::Mode::FirstMatch;
        } else if (v == "exclusive") {
            b.map.mode = MapDescription::Mode::Exclusive;
        } else {
            fail_at(l.line, l.tokens[0].column, "unknown mode '" + v + "'");
        }
        b.mode_set = true;
    } else if (l.directive == "gallery") {
        if (l.tokens.size() != 1) {
            fail_at(l.line, l.rest_column, "expected one gallery id");
        }
        const std::string& id = l.tokens[0].text;
        std::optional<MapDescription> m = resolver ? resolver(id) : std::nullopt;
        if (!m) {
            throw Error(ErrorKind::UnknownGalleryId, "line " + std::to_string(l.line) + ": no gallery map '" + id + "'");
        }
        for (MapRule& r : m->rules) {
            b.map.rules.push_back(std::move(r));
        }
        if (!b.mode_set) {
            b.map.mode = m->mode;
        }
        if (m->has_inverse()) {
            b.gallery_inverse = m->inverse();
        }
        b.map.name = b.map.name.empty() ? id : b.map.name + "+" + id;
    } else {
        fail_at(l.line, l.directive_column, "unknown map directive '" + l.directive + "'");
    }
}

}  // namespace

MapDescription parse_map(std::string_view text, const GalleryResolver& resolver)
{
    Builder fwd;
    Builder inv;
    bool has_inverse = false;
    for (const detail::DirectiveLine& l : detail::split_directives(text)) {
        if (l.directive == "inverse") {
            const detail::DirectiveLine nested = detail::nested_directive(l);
            if (nested.directive == "inverse") {
                fail_at(l.line, nested.directive_column, "nested inverse");
            }
            apply(inv, nested, resolver);
            has_inverse = true;
        } else {
            apply(fwd, l, resolver);
        }
    }
    if (fwd.map.rules.empty()) {
        throw ParseError(1, 1, "map has no rules");
    }
    if (has_inverse) {
        fwd.map.set_inverse(std::move(inv.map));
    } else if (fwd.gallery_inverse) {
        fwd.map.set_inverse(std::move(*fwd.gallery_inverse));
    }
    return fwd.map;
}

MapDescription load_map(const std::string& path, const GalleryResolver& resolver)
{
    return parse_map(read_file(path), resolver);
}

}  // namespace plasti
