#include <charconv>
#include <cstdio>
#include <sstream>

#include "imgql/ast.hpp"

namespace imgql {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

// Numeric literals must re-parse, and the grammar has no exponent syntax.
std::string literal(double v) {
    std::string s = format_double(v);
    if (s.find('e') == std::string::npos && s.find('E') == std::string::npos) return s;
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.17f", v);
    std::string fixed(buf);
    std::size_t last = fixed.find_last_not_of('0');
    if (fixed[last] == '.') ++last;
    return fixed.substr(0, last + 1);
}

int precedence_of(const std::string& op) {
    if (op == "|") return 1;
    if (op == "&") return 2;
    if (op == ">" || op == "<" || op == ">=" || op == "<=" || op == "=") return 3;
    if (op == "+" || op == "-") return 4;
    if (op == "*" || op == "/") return 5;
    if (op == "!") return 6;
    return 7;
}

void print_expr(std::ostringstream& os, const Expr& e, int parent_prec) {
    switch (e.kind) {
        case Expr::Kind::Number:
            os << literal(e.number);
            return;
        case Expr::Kind::Ident:
            os << e.name;
            return;
        case Expr::Kind::LoadRef:
            os << "<model \"" << e.path << "\">";
            return;
        case Expr::Kind::Apply:
            break;
    }
    if (e.name == "!" && e.args.size() == 1) {
        os << "!";
        print_expr(os, *e.args[0], precedence_of("!"));
        return;
    }
    if (is_operator_symbol(e.name) && e.args.size() == 2) {
        int prec = precedence_of(e.name);
        bool parens = prec < parent_prec;
        if (parens) os << "(";
        print_expr(os, *e.args[0], prec);
        os << " " << e.name << " ";
        // left-associative: the right child needs strictly tighter binding
        print_expr(os, *e.args[1], prec + 1);
        if (parens) os << ")";
        return;
    }
    os << e.name << "(";
    for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ",";
        print_expr(os, *e.args[i], 0);
    }
    os << ")";
}

} // namespace

std::string pretty_print(const Expr& e) {
    std::ostringstream os;
    print_expr(os, e, 0);
    return os.str();
}

std::string pretty_print(const Command& c) {
    std::ostringstream os;
    switch (c.kind) {
        case Command::Kind::Let:
            os << "let " << c.name;
            if (!c.params.empty()) {
                os << "(";
                for (std::size_t i = 0; i < c.params.size(); ++i) {
                    if (i) os << ",";
                    os << c.params[i];
                }
                os << ")";
            }
            os << " = " << pretty_print(*c.body);
            break;
        case Command::Kind::Load:
            os << "load " << c.name << " = \"" << c.str << "\"";
            break;
        case Command::Kind::Save:
            os << "save \"" << c.str << "\" " << pretty_print(*c.body);
            break;
        case Command::Kind::Print:
            os << "print \"" << c.str << "\" " << pretty_print(*c.body);
            break;
        case Command::Kind::Import:
            os << "import \"" << c.str << "\"";
            break;
    }
    return os.str();
}

std::string pretty_print(const Program& p) {
    std::string out;
    for (const Command& c : p) {
        out += pretty_print(c);
        out += "\n";
    }
    return out;
}

} // namespace imgql
