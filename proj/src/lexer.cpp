#include "imgql/lexer.hpp"

#include <cctype>
#include <charconv>

namespace imgql {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_cont(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

} // namespace

std::vector<Token> tokenize(const std::string& src, const std::string& filename) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;

    auto pos_here = [&]() { return SourcePos{filename, line, col}; };
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j) {
            if (src[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }

        SourcePos pos = pos_here();
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_cont(src[j])) ++j;
            out.push_back({Token::Kind::Ident, src.substr(i, j - i), 0.0, pos});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                if (j >= src.size() || !std::isdigit(static_cast<unsigned char>(src[j])))
                    throw Error(Phase::Lex, "digits expected after decimal point", pos);
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            double value = 0.0;
            std::from_chars(src.data() + i, src.data() + j, value);
            out.push_back({Token::Kind::Number, src.substr(i, j - i), value, pos});
            advance(j - i);
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != '"')
                throw Error(Phase::Lex, "unterminated string", pos);
            out.push_back({Token::Kind::String, src.substr(i + 1, j - i - 1), 0.0, pos});
            advance(j - i + 1);
            continue;
        }
        if (c == '(') {
            out.push_back({Token::Kind::LParen, "(", 0.0, pos});
            advance(1);
            continue;
        }
        if (c == ')') {
            out.push_back({Token::Kind::RParen, ")", 0.0, pos});
            advance(1);
            continue;
        }
        if (c == ',') {
            out.push_back({Token::Kind::Comma, ",", 0.0, pos});
            advance(1);
            continue;
        }
        // operator symbols, maximal munch
        if ((c == '>' || c == '<') && i + 1 < src.size() && src[i + 1] == '=') {
            out.push_back({Token::Kind::Op, src.substr(i, 2), 0.0, pos});
            advance(2);
            continue;
        }
        if (c == '|' || c == '&' || c == '!' || c == '+' || c == '-' || c == '*' ||
            c == '/' || c == '>' || c == '<' || c == '=') {
            out.push_back({Token::Kind::Op, std::string(1, c), 0.0, pos});
            advance(1);
            continue;
        }
        throw Error(Phase::Lex, std::string("illegal character '") + c + "'", pos);
    }
    out.push_back({Token::Kind::End, "", 0.0, pos_here()});
    return out;
}

} // namespace imgql
