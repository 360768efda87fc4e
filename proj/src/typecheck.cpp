#include "builtins.hpp"
#include "imgql/engine.hpp"

namespace imgql {

namespace {

std::string types_str(const TaskGraph& g, const Formula& f) {
    std::string s = "(";
    for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) s += ", ";
        s += g.formulas[f.args[i]].type.str();
    }
    s += ")";
    return s;
}

std::string expected_str(const Builtin& b) {
    std::string s;
    for (std::size_t i = 0; i < b.sigs.size(); ++i) {
        if (i) s += " or ";
        s += "(";
        for (std::size_t j = 0; j < b.sigs[i].params.size(); ++j) {
            if (j) s += ", ";
            s += b.sigs[i].params[j].str();
        }
        s += ")";
    }
    return s;
}

} // namespace

void type_check(TaskGraph& g) {
    // Arguments carry strictly greater UIDs, so a descending sweep sees
    // every argument's type before the formula that uses it.
    for (std::uint32_t uid = static_cast<std::uint32_t>(g.formulas.size()); uid-- > 0;) {
        Formula& f = g.formulas[uid];
        if (f.op == "num") {
            f.type = kNumber;
            continue;
        }
        if (f.op == "load") {
            f.type = kModel;
            continue;
        }
        const Builtin* b = find_builtin(f.op);
        if (!b) throw Error(Phase::Type, "unknown operator '" + f.op + "'", f.pos);
        bool matched = false;
        for (const Signature& sig : b->sigs) {
            if (sig.params.size() != f.args.size()) continue;
            bool ok = true;
            for (std::size_t i = 0; i < sig.params.size() && ok; ++i)
                ok = sig.params[i] == g.formulas[f.args[i]].type;
            if (ok) {
                f.type = sig.result;
                matched = true;
                break;
            }
        }
        if (!matched)
            throw Error(Phase::Type, "operator '" + f.op + "' cannot be applied to " +
                                         types_str(g, f) + "; expected " + expected_str(*b),
                        f.pos);
    }

    for (const Goal& goal : g.goals) {
        const ValueType& t = g.formulas[goal.uid].type;
        if (goal.kind == Goal::Kind::Print && !(t == kNumber || t == kBool))
            throw Error(Phase::Type,
                        "print needs a Number or Bool result, got " + t.str(), goal.pos);
        if (goal.kind == Goal::Kind::Save && !(t == kBoolField || t == kNumberField))
            throw Error(Phase::Type,
                        "save needs a Valuation(Bool) or Valuation(Number) result, got " +
                            t.str(),
                        goal.pos);
    }
    g.typed = true;
}

} // namespace imgql
