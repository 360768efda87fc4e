#pragma once

#include <vector>

#include "imgql/ast.hpp"
#include "imgql/lexer.hpp"

namespace imgql {

// Precedence, weakest to strongest: `|`, `&`, comparisons, `+ -`, `* /`,
// prefix `!`, application. Binary operators are left-associative.
Program parse_program(const std::vector<Token>& tokens);

Program parse_source(const std::string& source, const std::string& filename);

} // namespace imgql
