#include "builtins.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "imgql/metrics.hpp"
#include "imgql/spatial.hpp"
#include "imgql/stats.hpp"

namespace imgql {

namespace {

const ValueType N = kNumber;
const ValueType B = kBool;
const ValueType M = kModel;
const ValueType VN = kNumberField;
const ValueType VB = kBoolField;

Value eval_arith(ArithOp op, const std::vector<Value>& a) {
    if (a[0].is_number() && a[1].is_number())
        return Value(scalar_arith(op, a[0].number(), a[1].number()));
    if (a[0].is_num_field() && a[1].is_number())
        return Value::of(pointwise_arith(op, a[0].num_field(), a[1].number()));
    if (a[0].is_number() && a[1].is_num_field())
        return Value::of(pointwise_arith(op, a[0].number(), a[1].num_field()));
    return Value::of(pointwise_arith(op, a[0].num_field(), a[1].num_field()));
}

CompareOp mirror(CompareOp op) {
    switch (op) {
        case CompareOp::Gt: return CompareOp::Lt;
        case CompareOp::Lt: return CompareOp::Gt;
        case CompareOp::Geq: return CompareOp::Leq;
        case CompareOp::Leq: return CompareOp::Geq;
        case CompareOp::Eq: return CompareOp::Eq;
    }
    return op;
}

Value eval_compare(CompareOp op, const std::vector<Value>& a) {
    if (a[0].is_number() && a[1].is_number())
        return Value(scalar_compare(op, a[0].number(), a[1].number()));
    if (a[0].is_num_field())
        return Value::of(pointwise_compare(op, a[0].num_field(), a[1].number()));
    return Value::of(pointwise_compare(mirror(op), a[1].num_field(), a[0].number()));
}

std::int64_t integer_argument(double v, const char* what) {
    double r = std::round(v);
    if (!(std::abs(v - r) < 1e-9) || !std::isfinite(v))
        throw Error(Phase::Eval, std::string(what) + " must be an integer, got " +
                                     format_double(v));
    return static_cast<std::int64_t>(r);
}

std::vector<Builtin> make_table() {
    std::vector<Builtin> t;

    auto add = [&t](Builtin b) { t.push_back(std::move(b)); };

    // arithmetic
    for (auto [sym, op] : std::initializer_list<std::pair<const char*, ArithOp>>{
             {"+", ArithOp::Add}, {"-", ArithOp::Sub}, {"*", ArithOp::Mul}, {"/", ArithOp::Div}}) {
        Builtin b;
        b.name = sym;
        b.arity = 2;
        b.sigs = {{{N, N}, N}, {{VN, N}, VN}, {{N, VN}, VN}, {{VN, VN}, VN}};
        ArithOp o = op;
        b.eval = [o](EvalContext&, const Formula&, const std::vector<Value>& a) {
            return eval_arith(o, a);
        };
        add(std::move(b));
    }

    // comparisons (thresholding)
    for (auto [sym, op] : std::initializer_list<std::pair<const char*, CompareOp>>{
             {">", CompareOp::Gt},
             {"<", CompareOp::Lt},
             {">=", CompareOp::Geq},
             {"<=", CompareOp::Leq},
             {"=", CompareOp::Eq}}) {
        Builtin b;
        b.name = sym;
        b.arity = 2;
        b.sigs = {{{VN, N}, VB}, {{N, VN}, VB}, {{N, N}, B}};
        CompareOp o = op;
        b.eval = [o](EvalContext&, const Formula&, const std::vector<Value>& a) {
            return eval_compare(o, a);
        };
        add(std::move(b));
    }

    // boolean connectives
    {
        Builtin b;
        b.name = "|";
        b.arity = 2;
        b.sigs = {{{VB, VB}, VB}, {{B, B}, B}};
        b.eval = [](EvalContext&, const Formula&, const std::vector<Value>& a) {
            if (a[0].is_bool()) return Value(a[0].boolean() || a[1].boolean());
            return Value::of(pointwise_bool(BoolOp::Or, a[0].bool_field(), a[1].bool_field()));
        };
        add(std::move(b));
    }
    {
        Builtin b;
        b.name = "&";
        b.arity = 2;
        b.sigs = {{{VB, VB}, VB}, {{B, B}, B}};
        b.eval = [](EvalContext&, const Formula&, const std::vector<Value>& a) {
            if (a[0].is_bool()) return Value(a[0].boolean() && a[1].boolean());
            return Value::of(pointwise_bool(BoolOp::And, a[0].bool_field(), a[1].bool_field()));
        };
        add(std::move(b));
    }
    {
        Builtin b;
        b.name = "!";
        b.arity = 1;
        b.sigs = {{{VB}, VB}, {{B}, B}};
        b.eval = [](EvalContext&, const Formula&, const std::vector<Value>& a) {
            if (a[0].is_bool()) return Value(!a[0].boolean());
            return Value::of(pointwise_not(a[0].bool_field()));
        };
        add(std::move(b));
    }

    // spatial operators
    {
        Builtin b;
        b.name = "near";
        b.arity = 1;
        b.sigs = {{{VB}, VB}};
        b.eval = [](EvalContext& ctx, const Formula&, const std::vector<Value>& a) {
            return Value::of(near(a[0].bool_field(), ctx.config.workers));
        };
        add(std::move(b));
    }
    {
        Builtin b;
        b.name = "mayReach";
        b.arity = 2;
        b.sigs = {{{VB, VB}, VB}};
        b.eval = [](EvalContext& ctx, const Formula&, const std::vector<Value>& a) {
            return Value::of(may_reach(a[0].bool_field(), a[1].bool_field(), ctx.config.workers));
        };
        add(std::move(b));
    }
    {
        Builtin b;
        b.name = "surrounded";
        b.arity = 2;
        b.sigs = {{{VB, VB}, VB}};
        b.eval = [](EvalContext& ctx, const Formula&, const std::vector<Value>& a) {
            return Value::of(surrounded(a[0].bool_field(), a[1].bool_field(), ctx.config.workers));
        };
        add(std::move(b));
    }
    {
        Builtin b;
        b.name = "dt";
        b.arity = 1;
        b.sigs = {{{VB}, VN}};
        b.eval = [](EvalContext& ctx, const Formula&, const std::vector<Value>& a) {
            return Value::of(distance_transform(a[0].bool_field(), ctx.config.workers));
        };
        add(std::move(b));
    }
    for (auto [name, op] : std::initializer_list<std::pair<const char*, CompareOp>>{
             {"distlt", CompareOp::Lt},
             {"distleq", CompareOp::Leq},
             {"distgt", CompareOp::Gt},
             {"distgeq", CompareOp::Geq}}) {
        Builtin b;
        b.name = name;
        b.kind = BuiltinKind::DistCompare;
        b.arity = 2;
        b.sigs = {{{N, VB}, VB}};
        b.dist_op = op;
        add(std::move(b));
    }

    // aggregates
    {
        Builtin b;
        b.name = "volume";
        b.arity = 1;
        b.sigs = {{{VB}, N}};
        b.eval = [](EvalContext&, const Formula&, const std::vector<Value>& a) {
            return Value(static_cast<double>(aggregate_volume(a[0].bool_field())));
        };
        add(std::move(b));
    }
    {
        Builtin b;
        b.name = "min";
        b.arity = 1;
        b.sigs = {{{VN}, N}};
        b.eval = [](EvalContext&, const Formula&, const std::vector<Value>& a) {
            return Value(aggregate_min(a[0].num_field()));
        };
        add(std::move(b));
    }
    {
        Builtin b;
        b.name = "max";
        b.arity = 1;
        b.sigs = {{{VN}, N}};
        b.eval = [](EvalContext&, const Formula&, const std::vector<Value>& a) {
            return Value(aggregate_max(a[0].num_field()));
        };
        add(std::move(b));
    }
    {
        Builtin b;
        b.name = "border";
        b.arity = 0; // implicit: the geometry of the first loaded image
        b.sigs = {{{M}, VB}};
        b.eval = [](EvalContext&, const Formula&, const std::vector<Value>& a) {
            return Value::of(border(a[0].model().geometry));
        };
        add(std::move(b));
    }

    // channels
    {
        Builtin b;
        b.name = "intensity";
        b.arity = 1;
        b.sigs = {{{M}, VN}};
        b.eval = [](EvalContext&, const Formula&, const std::vector<Value>& a) {
            return Value::of(channel_intensity(a[0].model()));
        };
        add(std::move(b));
    }
    for (int comp = 0; comp < 3; ++comp) {
        static const char* names[] = {"red", "green", "blue"};
        Builtin b;
        b.name = names[comp];
        b.arity = 1;
        b.sigs = {{{M}, VN}};
        int c = comp;
        b.eval = [c](EvalContext&, const Formula&, const std::vector<Value>& a) {
            return Value::of(channel_component(a[0].model(), c));
        };
        add(std::move(b));
    }

    // statistics
    {
        Builtin b;
        b.name = "percentiles";
        b.arity = 2;
        b.sigs = {{{VN, VB}, VN}};
        b.eval = [](EvalContext& ctx, const Formula&, const std::vector<Value>& a) {
            return Value::of(percentiles(a[0].num_field(), a[1].bool_field(),
                                         ctx.config.workers));
        };
        add(std::move(b));
    }
    {
        Builtin b;
        b.name = "crossCorrelation";
        b.arity = 7;
        b.sigs = {{{N, VN, VN, VB, N, N, N}, VN}};
        b.eval = [](EvalContext& ctx, const Formula&, const std::vector<Value>& a) {
            CrossCorrParams p;
            p.radius_mm = a[0].number();
            p.values = &a[1].num_field();
            p.reference = &a[2].num_field();
            p.region = &a[3].bool_field();
            p.m = a[4].number();
            p.M = a[5].number();
            p.k = static_cast<int>(integer_argument(a[6].number(), "crossCorrelation bin count"));
            return Value::of(cross_correlation_map(p, ctx.config.workers));
        };
        add(std::move(b));
    }

    // similarity indexes between a segmentation and a reference mask
    for (int which = 0; which < 3; ++which) {
        static const char* names[] = {"diceIndex", "sensitivityIndex", "specificityIndex"};
        Builtin b;
        b.name = names[which];
        b.arity = 2;
        b.sigs = {{{VB, VB}, N}};
        int w = which;
        b.eval = [w](EvalContext&, const Formula&, const std::vector<Value>& a) {
            SimilarityIndexes idx = indexes(confusion(a[0].bool_field(), a[1].bool_field()));
            const std::optional<double>& v =
                w == 0 ? idx.dice : w == 1 ? idx.sensitivity : idx.specificity;
            if (!v)
                throw Error(Phase::Eval, std::string(names[w]) +
                                             " is undefined for these masks (zero denominator)");
            return Value(*v);
        };
        add(std::move(b));
    }

    return t;
}

const std::unordered_map<std::string, const Builtin*>& table_index() {
    static const auto index = [] {
        std::unordered_map<std::string, const Builtin*> m;
        for (const Builtin& b : builtin_list()) m[b.name] = &b;
        return m;
    }();
    return index;
}

} // namespace

const std::vector<Builtin>& builtin_list() {
    static const std::vector<Builtin> t = make_table();
    return t;
}

const Builtin* find_builtin(const std::string& name) {
    const auto& idx = table_index();
    auto it = idx.find(name);
    return it == idx.end() ? nullptr : it->second;
}

std::vector<std::string> builtin_signatures() {
    std::vector<std::string> out;
    for (const Builtin& b : builtin_list()) {
        for (const Signature& s : b.sigs) {
            std::string line = b.name;
            if (b.name == "border") {
                line += "  ->  " + s.result.str() + "   (geometry of the first loaded image)";
                out.push_back(std::move(line));
                continue;
            }
            line += "(";
            for (std::size_t i = 0; i < s.params.size(); ++i) {
                if (i) line += ", ";
                line += s.params[i].str();
            }
            line += ")  ->  " + s.result.str();
            out.push_back(std::move(line));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace imgql
