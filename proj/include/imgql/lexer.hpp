#pragma once

#include <string>
#include <vector>

#include "imgql/errors.hpp"

namespace imgql {

struct Token {
    enum class Kind { Ident, Number, String, Op, LParen, RParen, Comma, End };

    Kind kind;
    std::string text;  // identifier, operator symbol, or string contents
    double number = 0.0;
    SourcePos pos;
};

// Identifiers are [A-Za-z][A-Za-z0-9]*, numbers are decimal with an optional
// fraction, strings are double-quoted with no escapes, `//` starts a line
// comment. Operators are matched with maximal munch (so `>=` is one token).
std::vector<Token> tokenize(const std::string& source, const std::string& filename);

} // namespace imgql
