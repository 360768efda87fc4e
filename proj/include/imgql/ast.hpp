#pragma once

#include <memory>
#include <string>
#include <vector>

#include "imgql/errors.hpp"

namespace imgql {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression node. Infix and prefix operator applications are stored as
// Apply nodes whose name is the operator symbol; parenthesized
// sub-expressions collapse at parse time.
struct Expr {
    enum class Kind { Number, Ident, Apply, LoadRef };

    Kind kind;
    double number = 0.0;        // Number
    std::string name;           // Ident / Apply (function or operator symbol)
    std::vector<ExprPtr> args;  // Apply
    std::string path;           // LoadRef: synthesized for `load` commands
    SourcePos pos;

    static ExprPtr make_number(double v, SourcePos p);
    static ExprPtr make_ident(std::string n, SourcePos p);
    static ExprPtr make_apply(std::string n, std::vector<ExprPtr> a, SourcePos p);
    static ExprPtr make_load(std::string path, SourcePos p);
};

struct Command {
    enum class Kind { Let, Load, Save, Print, Import };

    Kind kind;
    std::string name;                 // Let: bound name; Load: bound name
    std::vector<std::string> params;  // Let: empty for a constant
    ExprPtr body;                     // Let / Save / Print
    std::string str;                  // Load/Import: path; Save: path; Print: label
    SourcePos pos;
};

using Program = std::vector<Command>;

bool is_operator_symbol(const std::string& name);

// Shortest round-trip decimal form.
std::string format_double(double v);

// Canonical text form; parsing its own output is a fixed point.
std::string pretty_print(const Expr& e);
std::string pretty_print(const Command& c);
std::string pretty_print(const Program& p);

} // namespace imgql
