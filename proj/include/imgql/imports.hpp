#pragma once

#include <string>
#include <vector>

#include "imgql/ast.hpp"

namespace imgql {

// Expands import commands depth-first, inlining each imported file at most
// once (so import cycles terminate). Imports are looked up relative to the
// importing file's directory, then in the include paths. Imported files may
// only contain let and import commands.
Program resolve_imports(const Program& program, const std::string& program_path,
                        const std::vector<std::string>& include_paths);

} // namespace imgql
