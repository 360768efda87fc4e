#include "imgql/parser.hpp"

#include <set>

namespace imgql {

ExprPtr Expr::make_number(double v, SourcePos p) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->number = v;
    e->pos = std::move(p);
    return e;
}
ExprPtr Expr::make_ident(std::string n, SourcePos p) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Ident;
    e->name = std::move(n);
    e->pos = std::move(p);
    return e;
}
ExprPtr Expr::make_apply(std::string n, std::vector<ExprPtr> a, SourcePos p) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Apply;
    e->name = std::move(n);
    e->args = std::move(a);
    e->pos = std::move(p);
    return e;
}
ExprPtr Expr::make_load(std::string path, SourcePos p) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::LoadRef;
    e->path = std::move(path);
    e->pos = std::move(p);
    return e;
}

bool is_operator_symbol(const std::string& name) {
    static const std::set<std::string> syms = {"|", "&", "!", "+", "-",
                                               "*", "/", ">", "<", ">=", "<=", "="};
    return syms.count(name) != 0;
}

namespace {

const std::set<std::string> kKeywords = {"let", "load", "save", "print", "import"};

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

    Program parse() {
        Program prog;
        while (!at_end()) prog.push_back(command());
        return prog;
    }

private:
    const std::vector<Token>& toks_;
    std::size_t i_ = 0;

    const Token& cur() const { return toks_[i_]; }
    bool at_end() const { return cur().kind == Token::Kind::End; }
    const Token& take() { return toks_[i_++]; }

    [[noreturn]] void fail(const std::string& expected) {
        const Token& t = cur();
        std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw Error(Phase::Parse, "expected " + expected + ", found " + got, t.pos);
    }

    bool is_keyword(const Token& t, const char* kw) const {
        return t.kind == Token::Kind::Ident && t.text == kw;
    }

    std::string expect_ident(const char* what) {
        if (cur().kind != Token::Kind::Ident) fail(what);
        if (kKeywords.count(cur().text))
            throw Error(Phase::Parse, "'" + cur().text + "' is a keyword", cur().pos);
        return take().text;
    }

    std::string expect_string(const char* what) {
        if (cur().kind != Token::Kind::String) fail(what);
        return take().text;
    }

    void expect_op(const char* sym) {
        if (cur().kind != Token::Kind::Op || cur().text != sym) fail("'" + std::string(sym) + "'");
        take();
    }

    void expect(Token::Kind k, const char* what) {
        if (cur().kind != k) fail(what);
        take();
    }

    Command command() {
        const Token& t = cur();
        if (is_keyword(t, "let")) return let_command();
        if (is_keyword(t, "load")) return load_command();
        if (is_keyword(t, "save")) return save_command();
        if (is_keyword(t, "print")) return print_command();
        if (is_keyword(t, "import")) return import_command();
        fail("a command (let, load, save, print or import)");
    }

    Command let_command() {
        Command c;
        c.kind = Command::Kind::Let;
        c.pos = take().pos;
        // user-defined infixes may only rename a built-in operator symbol
        if (cur().kind == Token::Kind::Op) {
            c.name = take().text;
        } else {
            c.name = expect_ident("a name after 'let'");
        }
        if (cur().kind == Token::Kind::LParen) {
            take();
            c.params.push_back(expect_ident("a parameter name"));
            while (cur().kind == Token::Kind::Comma) {
                take();
                c.params.push_back(expect_ident("a parameter name"));
            }
            expect(Token::Kind::RParen, "')'");
            for (std::size_t a = 0; a < c.params.size(); ++a)
                for (std::size_t b = a + 1; b < c.params.size(); ++b)
                    if (c.params[a] == c.params[b])
                        throw Error(Phase::Parse,
                                    "duplicate parameter '" + c.params[a] + "'", c.pos);
        }
        expect_op("=");
        c.body = expr();
        return c;
    }

    Command load_command() {
        Command c;
        c.kind = Command::Kind::Load;
        c.pos = take().pos;
        c.name = expect_ident("a name after 'load'");
        expect_op("=");
        c.str = expect_string("a file path string");
        return c;
    }

    Command save_command() {
        Command c;
        c.kind = Command::Kind::Save;
        c.pos = take().pos;
        c.str = expect_string("a file path string");
        c.body = expr();
        return c;
    }

    Command print_command() {
        Command c;
        c.kind = Command::Kind::Print;
        c.pos = take().pos;
        c.str = expect_string("a label string");
        c.body = expr();
        return c;
    }

    Command import_command() {
        Command c;
        c.kind = Command::Kind::Import;
        c.pos = take().pos;
        c.str = expect_string("a file path string");
        return c;
    }

    bool cur_is_op_of(std::initializer_list<const char*> syms) const {
        if (cur().kind != Token::Kind::Op) return false;
        for (const char* s : syms)
            if (cur().text == s) return true;
        return false;
    }

    ExprPtr expr() { return or_expr(); }

    ExprPtr or_expr() {
        ExprPtr lhs = and_expr();
        while (cur_is_op_of({"|"})) {
            Token op = take();
            lhs = Expr::make_apply(op.text, {lhs, and_expr()}, op.pos);
        }
        return lhs;
    }

    ExprPtr and_expr() {
        ExprPtr lhs = cmp_expr();
        while (cur_is_op_of({"&"})) {
            Token op = take();
            lhs = Expr::make_apply(op.text, {lhs, cmp_expr()}, op.pos);
        }
        return lhs;
    }

    ExprPtr cmp_expr() {
        ExprPtr lhs = add_expr();
        while (cur_is_op_of({">", "<", ">=", "<=", "="})) {
            Token op = take();
            lhs = Expr::make_apply(op.text, {lhs, add_expr()}, op.pos);
        }
        return lhs;
    }

    ExprPtr add_expr() {
        ExprPtr lhs = mul_expr();
        while (cur_is_op_of({"+", "-"})) {
            Token op = take();
            lhs = Expr::make_apply(op.text, {lhs, mul_expr()}, op.pos);
        }
        return lhs;
    }

    ExprPtr mul_expr() {
        ExprPtr lhs = unary_expr();
        while (cur_is_op_of({"*", "/"})) {
            Token op = take();
            lhs = Expr::make_apply(op.text, {lhs, unary_expr()}, op.pos);
        }
        return lhs;
    }

    ExprPtr unary_expr() {
        if (cur_is_op_of({"!"})) {
            Token op = take();
            return Expr::make_apply("!", {unary_expr()}, op.pos);
        }
        return atom();
    }

    ExprPtr atom() {
        const Token& t = cur();
        if (t.kind == Token::Kind::Number) {
            take();
            return Expr::make_number(t.number, t.pos);
        }
        if (t.kind == Token::Kind::LParen) {
            take();
            ExprPtr e = expr();
            expect(Token::Kind::RParen, "')'");
            return e;
        }
        if (t.kind == Token::Kind::Ident) {
            if (kKeywords.count(t.text))
                throw Error(Phase::Parse, "unexpected keyword '" + t.text + "'", t.pos);
            Token name = take();
            if (cur().kind == Token::Kind::LParen) {
                take();
                std::vector<ExprPtr> args;
                args.push_back(expr());
                while (cur().kind == Token::Kind::Comma) {
                    take();
                    args.push_back(expr());
                }
                expect(Token::Kind::RParen, "')'");
                return Expr::make_apply(name.text, std::move(args), name.pos);
            }
            return Expr::make_ident(name.text, name.pos);
        }
        fail("an expression");
    }
};

} // namespace

Program parse_program(const std::vector<Token>& tokens) { return Parser(tokens).parse(); }

Program parse_source(const std::string& source, const std::string& filename) {
    return parse_program(tokenize(source, filename));
}

} // namespace imgql
