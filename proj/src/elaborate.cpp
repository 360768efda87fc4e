#include <map>
#include <unordered_map>

#include "builtins.hpp"
#include "imgql/engine.hpp"

namespace imgql {

namespace {

struct Env;
using EnvPtr = std::shared_ptr<const Env>;

// A binding closes over the environment it was defined in, so a later
// rebinding of the same name never changes earlier definitions.
struct Binding {
    std::vector<std::string> params; // empty: constant or parameter thunk
    ExprPtr body;
    EnvPtr env;

    bool is_function() const { return !params.empty(); }
};
using BindingPtr = std::shared_ptr<const Binding>;

struct Env {
    std::string name;
    BindingPtr binding;
    EnvPtr parent;
};

EnvPtr push(EnvPtr parent, std::string name, Binding binding) {
    auto e = std::make_shared<Env>();
    e->name = std::move(name);
    e->binding = std::make_shared<const Binding>(std::move(binding));
    e->parent = std::move(parent);
    return e;
}

BindingPtr lookup(const EnvPtr& env, const std::string& name) {
    for (const Env* e = env.get(); e != nullptr; e = e->parent.get())
        if (e->name == name) return e->binding;
    return nullptr;
}

class Elaborator {
public:
    TaskGraph run(const Program& prog) {
        EnvPtr env;
        for (const Command& c : prog) {
            switch (c.kind) {
                case Command::Kind::Let:
                    env = push(env, c.name, Binding{c.params, c.body, env});
                    envs_.push_back(env);
                    break;
                case Command::Kind::Load: {
                    ExprPtr ref = Expr::make_load(c.str, c.pos);
                    if (!ref_model_) ref_model_ = ref;
                    loads_.push_back(ref);
                    env = push(env, c.name, Binding{{}, ref, nullptr});
                    envs_.push_back(env);
                    break;
                }
                case Command::Kind::Save:
                    goals_.push_back(
                        {Goal::Kind::Save, c.str, elaborate_expr(c.body, env), c.pos});
                    break;
                case Command::Kind::Print:
                    goals_.push_back(
                        {Goal::Kind::Print, c.str, elaborate_expr(c.body, env), c.pos});
                    break;
                case Command::Kind::Import:
                    throw Error(Phase::Elaborate, "imports must be resolved before elaboration",
                                c.pos);
            }
        }
        return freeze();
    }

private:
    struct Node {
        std::string op;
        double number = 0.0;
        std::string str;
        std::vector<std::uint32_t> args;
        SourcePos pos;
    };

    std::vector<Node> nodes_; // in creation order: dependencies first
    std::unordered_map<std::string, std::uint32_t> cons_;
    std::map<std::pair<const Expr*, const Env*>, std::uint32_t> memo_;
    std::vector<EnvPtr> envs_; // keeps every environment alive while memo_ holds raw keys
    std::vector<ExprPtr> loads_;
    ExprPtr ref_model_;
    std::vector<Goal> goals_;

    std::uint32_t cons(std::string op, double number, std::string str,
                       std::vector<std::uint32_t> args, const SourcePos& pos) {
        std::string key = op;
        key.push_back('\0');
        key.append(reinterpret_cast<const char*>(&number), sizeof(number));
        key += str;
        key.push_back('\0');
        key.append(reinterpret_cast<const char*>(args.data()), args.size() * sizeof(args[0]));
        auto it = cons_.find(key);
        if (it != cons_.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back({std::move(op), number, std::move(str), std::move(args), pos});
        cons_.emplace(std::move(key), id);
        return id;
    }

    std::uint32_t elaborate_expr(const ExprPtr& expr, const EnvPtr& env) {
        auto key = std::make_pair(expr.get(), env.get());
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        std::uint32_t id = elaborate_uncached(expr, env);
        memo_.emplace(key, id);
        return id;
    }

    std::uint32_t elaborate_uncached(const ExprPtr& expr, const EnvPtr& env) {
        const Expr& e = *expr;
        switch (e.kind) {
            case Expr::Kind::Number:
                return cons("num", e.number, "", {}, e.pos);
            case Expr::Kind::LoadRef:
                return cons("load", 0.0, e.path, {}, e.pos);
            case Expr::Kind::Ident: {
                if (BindingPtr b = lookup(env, e.name)) {
                    if (b->is_function())
                        throw Error(Phase::Elaborate,
                                    "'" + e.name + "' is a function of " +
                                        std::to_string(b->params.size()) +
                                        " argument(s) and cannot be used bare",
                                    e.pos);
                    return elaborate_expr(b->body, b->env);
                }
                if (e.name == "border") {
                    if (!ref_model_)
                        throw Error(Phase::Elaborate,
                                    "'border' needs an image to be loaded first", e.pos);
                    std::uint32_t model = elaborate_expr(ref_model_, nullptr);
                    return cons("border", 0.0, "", {model}, e.pos);
                }
                if (const Builtin* bi = find_builtin(e.name))
                    throw Error(Phase::Elaborate,
                                "operator '" + e.name + "' needs " +
                                    std::to_string(bi->arity) + " argument(s)",
                                e.pos);
                throw Error(Phase::Elaborate, "unbound name '" + e.name + "'", e.pos);
            }
            case Expr::Kind::Apply: {
                if (BindingPtr b = lookup(env, e.name)) {
                    if (!b->is_function())
                        throw Error(Phase::Elaborate,
                                    "'" + e.name + "' is a constant and takes no arguments",
                                    e.pos);
                    if (b->params.size() != e.args.size())
                        throw Error(Phase::Elaborate,
                                    "'" + e.name + "' needs " +
                                        std::to_string(b->params.size()) +
                                        " argument(s), got " + std::to_string(e.args.size()),
                                    e.pos);
                    // call-by-name: parameters become thunks over the caller's env
                    EnvPtr call_env = b->env;
                    for (std::size_t i = 0; i < e.args.size(); ++i) {
                        call_env = push(call_env, b->params[i], Binding{{}, e.args[i], env});
                        envs_.push_back(call_env);
                    }
                    return elaborate_expr(b->body, call_env);
                }
                if (const Builtin* bi = find_builtin(e.name)) {
                    if (static_cast<int>(e.args.size()) != bi->arity)
                        throw Error(Phase::Elaborate,
                                    "operator '" + e.name + "' needs " +
                                        std::to_string(bi->arity) + " argument(s), got " +
                                        std::to_string(e.args.size()),
                                    e.pos);
                    if (bi->kind == BuiltinKind::DistCompare) {
                        std::uint32_t r = elaborate_expr(e.args[0], env);
                        std::uint32_t phi = elaborate_expr(e.args[1], env);
                        std::uint32_t dist = cons("dt", 0.0, "", {phi}, e.pos);
                        const char* sym = bi->dist_op == CompareOp::Lt    ? "<"
                                          : bi->dist_op == CompareOp::Leq ? "<="
                                          : bi->dist_op == CompareOp::Gt  ? ">"
                                                                          : ">=";
                        return cons(sym, 0.0, "", {dist, r}, e.pos);
                    }
                    std::vector<std::uint32_t> args;
                    args.reserve(e.args.size());
                    for (const ExprPtr& a : e.args) args.push_back(elaborate_expr(a, env));
                    return cons(e.name, 0.0, "", std::move(args), e.pos);
                }
                throw Error(Phase::Elaborate, "unbound name '" + e.name + "'", e.pos);
            }
        }
        throw Error(Phase::Elaborate, "malformed expression", e.pos);
    }

    // Final UIDs reverse creation order, making every argument's UID strictly
    // greater than its dependent's while staying contiguous from 0.
    TaskGraph freeze() {
        TaskGraph g;
        const std::uint32_t n = static_cast<std::uint32_t>(nodes_.size());
        g.formulas.resize(n);
        for (std::uint32_t c = 0; c < n; ++c) {
            Node& node = nodes_[c];
            Formula f;
            f.uid = n - 1 - c;
            f.op = std::move(node.op);
            f.number = node.number;
            f.str = std::move(node.str);
            f.args.reserve(node.args.size());
            for (std::uint32_t a : node.args) f.args.push_back(n - 1 - a);
            f.pos = node.pos;
            g.formulas[f.uid] = std::move(f);
        }
        g.goals = std::move(goals_);
        for (Goal& goal : g.goals) goal.uid = n - 1 - goal.uid;
        return g;
    }
};

} // namespace

TaskGraph elaborate(const Program& program) { return Elaborator().run(program); }

} // namespace imgql
