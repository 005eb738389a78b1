#include "text.hpp"

#include <cctype>

namespace plasti::detail {

namespace {

bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

DirectiveLine parse_line(std::string_view body, int line, int column_offset)
{
    DirectiveLine out;
    out.line = line;
    std::size_t i = 0;
    while (i < body.size() && space(body[i])) {
        ++i;
    }
    const std::size_t colon = body.find(':', i);
    if (colon == std::string_view::npos) {
        fail_at(line, column_offset + static_cast<int>(i), "expected 'directive:'");
    }
    std::size_t end = colon;
    while (end > i && space(body[end - 1])) {
        --end;
    }
    out.directive = std::string(body.substr(i, end - i));
    out.directive_column = column_offset + static_cast<int>(i);
    if (out.directive.empty()) {
        fail_at(line, out.directive_column, "missing directive name");
    }
    out.rest = std::string(body.substr(colon + 1));
    out.rest_column = column_offset + static_cast<int>(colon) + 1;
    out.tokens = tokenize(out.rest, out.rest_column);
    return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, int first_column)
{
    std::vector<Token> out;
    std::size_t i = 0;
    const auto skip = [&] {
        while (i < text.size() && space(text[i])) {
            ++i;
        }
    };
    const auto joiner_ahead = [&]() -> std::size_t {
        std::size_t j = i;
        while (j < text.size() && space(text[j])) {
            ++j;
        }
        if (j < text.size() && text[j] == '=') {
            return j;
        }
        if (j + 1 < text.size() && text[j] == '-' && text[j + 1] == '>') {
            return j;
        }
        return std::string_view::npos;
    };
    // `[1,2] + rule` stays one token.
    const auto list_plus_ahead = [&](const std::string& token) -> std::size_t {
        if (token.empty() || token.back() != ']') {
            return std::string_view::npos;
        }
        std::size_t j = i;
        while (j < text.size() && space(text[j])) {
            ++j;
        }
        return j < text.size() && text[j] == '+' ? j : std::string_view::npos;
    };
    skip();
    while (i < text.size()) {
        Token t;
        t.column = first_column + static_cast<int>(i);
        int depth = 0;
        for (;;) {
            while (i < text.size() && (depth > 0 || !space(text[i]))) {
                const char c = text[i];
                if (c == '(' || c == '[' || c == '{') {
                    ++depth;
                } else if ((c == ')' || c == ']' || c == '}') && depth > 0) {
                    --depth;
                }
                if (!space(c)) {
                    t.text += c;
                }
                ++i;
            }
            const bool dangling = !t.text.empty() && (t.text.back() == '=' || t.text.back() == '+' ||
                                                      t.text.ends_with("->"));
            if (const std::size_t j = joiner_ahead(); j != std::string_view::npos && !dangling) {
                i = j;
                continue;
            }
            if (const std::size_t j = list_plus_ahead(t.text); j != std::string_view::npos) {
                i = j;
                continue;
            }
            if (dangling) {
                skip();
                if (i < text.size()) {
                    continue;
                }
            }
            break;
        }
        out.push_back(std::move(t));
        skip();
    }
    return out;
}

std::vector<DirectiveLine> split_directives(std::string_view text)
{
    std::vector<DirectiveLine> out;
    int line = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        ++line;
        std::size_t stop = text.find('\n', start);
        if (stop == std::string_view::npos) {
            stop = text.size();
        }
        std::string_view body = text.substr(start, stop - start);
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            body = body.substr(0, hash);
        }
        if (!body.empty() && body.back() == '\r') {
            body.remove_suffix(1);
        }
        bool blank = true;
        for (const char c : body) {
            blank = blank && space(c);
        }
        if (!blank) {
            out.push_back(parse_line(body, line, 1));
        }
        if (stop == text.size()) {
            break;
        }
        start = stop + 1;
    }
    return out;
}

DirectiveLine nested_directive(const DirectiveLine& outer) { return parse_line(outer.rest, outer.line, outer.rest_column); }

std::optional<KeyValue> key_value(const Token& t)
{
    const auto eq = t.text.find('=');
    if (eq == std::string::npos) {
        return std::nullopt;
    }
    return KeyValue{t.text.substr(0, eq), t.text.substr(eq + 1), t.column + static_cast<int>(eq) + 1};
}

Scalar scalar_at(std::string_view text, int line, int column)
{
    Scalar s;
    if (!Scalar::try_parse(text, s)) {
        fail_at(line, column, "expected a rational number, got '" + std::string(text) + "'");
    }
    return s;
}

Handler keyed(const DirectiveLine& l, std::initializer_list<const char*> allowed)
{
    Handler out;
    for (const auto& t : l.tokens) {
        const auto kv = key_value(t);
        if (!kv) {
            fail_at(l.line, t.column, "expected key=value, got '" + t.text + "'");
        }
        bool known = false;
        for (const char* k : allowed) {
            known = known || kv->key == k;
        }
        if (!known) {
            fail_at(l.line, t.column, "unknown key '" + kv->key + "' for " + l.directive);
        }
        if (out.count(kv->key) != 0) {
            fail_at(l.line, t.column, "duplicate key '" + kv->key + "'");
        }
        out[kv->key] = *kv;
    }
    return out;
}

}  // namespace plasti::detail
