#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plasti/error.hpp"
#include "plasti/scalar.hpp"

namespace plasti::detail {

struct Token {
    std::string text;
    int column = 1;  // 1-based column of the first character
};

/// One `directive: tokens...` line. Whitespace inside brackets and around `=`/`->` is dropped.
struct DirectiveLine {
    int line = 1;
    std::string directive;
    int directive_column = 1;
    std::vector<Token> tokens;
    std::string rest;  // text after the colon, comment removed
    int rest_column = 1;
};

std::vector<DirectiveLine> split_directives(std::string_view text);
/// Re-splits `rest` of a line as a nested directive (used for `inverse:` prefixes).
DirectiveLine nested_directive(const DirectiveLine& outer);

std::vector<Token> tokenize(std::string_view text, int first_column);

/// `key=value` split; nullopt when the token has no `=`.
struct KeyValue {
    std::string key;
    std::string value;
    int value_column = 1;
};
std::optional<KeyValue> key_value(const Token& t);

Scalar scalar_at(std::string_view text, int line, int column);

using Handler = std::map<std::string, KeyValue>;

/// Collects key=value tokens, rejecting keys outside `allowed` and duplicates.
Handler keyed(const DirectiveLine& l, std::initializer_list<const char*> allowed);

[[noreturn]] inline void fail_at(int line, int column, const std::string& message)
{
    throw ParseError(line, column, message);
}

}  // namespace plasti::detail
