#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imgql/errors.hpp"
#include "imgql/types.hpp"

namespace imgql {

// One hash-consed closed expression: the unit of memoized evaluation. No two
// structurally equal formulas exist in a graph, so UIDs identify work.
//
// UIDs start at 0, are contiguous, and are ordered so that every argument's
// UID is strictly greater than its dependent's: iterating UIDs downwards from
// the maximum visits dependencies first.
struct Formula {
    std::uint32_t uid = 0;
    std::string op;                   // builtin name, or "num" / "load"
    double number = 0.0;              // payload for "num"
    std::string str;                  // payload for "load": the file path
    std::vector<std::uint32_t> args;  // argument UIDs, all > uid
    SourcePos pos;                    // first construction site
    ValueType type;                   // assigned by type_check
};

struct Goal {
    enum class Kind { Save, Print };

    Kind kind;
    std::string target; // file path (save) or label (print)
    std::uint32_t uid = 0;
    SourcePos pos;
};

struct TaskGraph {
    std::vector<Formula> formulas; // indexed by uid
    std::vector<Goal> goals;       // in command order
    bool typed = false;
};

} // namespace imgql
