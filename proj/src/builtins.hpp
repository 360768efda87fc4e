#pragma once

#include <functional>
#include <string>
#include <vector>

#include "imgql/engine.hpp"
#include "imgql/fields.hpp"
#include "imgql/formula.hpp"
#include "imgql/value.hpp"

namespace imgql {

struct EvalContext {
    const RunConfig& config;
    std::string script_dir;
};

struct Signature {
    std::vector<ValueType> params;
    ValueType result;
};

// DistCompare builtins (distlt and friends) are rewritten during elaboration
// into a shared distance-transform node plus a threshold, so several interval
// bounds over the same mask compute the transform once.
enum class BuiltinKind { Op, DistCompare };

struct Builtin {
    std::string name;
    BuiltinKind kind = BuiltinKind::Op;
    int arity = 0;
    std::vector<Signature> sigs;
    std::function<Value(EvalContext&, const Formula&, const std::vector<Value>&)> eval;
    CompareOp dist_op = CompareOp::Lt; // DistCompare only
};

const Builtin* find_builtin(const std::string& name);
const std::vector<Builtin>& builtin_list();

} // namespace imgql
