#include "imgql/fields.hpp"

#include <cmath>

#include "imgql/errors.hpp"
#include "imgql/kernels.hpp"

namespace imgql {

BoolField::BoolField(GridGeometry geometry, std::vector<std::uint8_t> data)
    : geo_(std::move(geometry)), data_(std::move(data)) {
    if (static_cast<std::int64_t>(data_.size()) != geo_.voxel_count())
        throw Error(Phase::Eval, "mask data length does not match geometry");
}

BoolField BoolField::constant(const GridGeometry& geometry, bool value) {
    return BoolField(geometry,
                     std::vector<std::uint8_t>(geometry.voxel_count(), value ? 1 : 0));
}

NumField::NumField(GridGeometry geometry, std::vector<double> data)
    : geo_(std::move(geometry)), data_(std::move(data)) {
    if (static_cast<std::int64_t>(data_.size()) != geo_.voxel_count())
        throw Error(Phase::Eval, "field data length does not match geometry");
}

NumField NumField::constant(const GridGeometry& geometry, double value) {
    return NumField(geometry, std::vector<double>(geometry.voxel_count(), value));
}

void require_same_geometry(const GridGeometry& a, const GridGeometry& b, const char* what) {
    if (a != b)
        throw Error(Phase::Eval, std::string(what) + ": geometry mismatch (" + a.str() +
                                     " vs " + b.str() + ")");
}

namespace {

[[noreturn]] void throw_nan(ArithOp op) {
    const char* sym = op == ArithOp::Add   ? "+"
                      : op == ArithOp::Sub ? "-"
                      : op == ArithOp::Mul ? "*"
                                           : "/";
    throw Error(Phase::Eval, std::string("'") + sym +
                                 "' produced an undefined value (such as 0/0 or inf-inf)");
}

} // namespace

NumField pointwise_arith(ArithOp op, const NumField& a, const NumField& b) {
    require_same_geometry(a.geometry(), b.geometry(), "arithmetic");
    const auto& k = kern::active_ops();
    std::vector<double> out(a.size());
    bool nan = false;
    switch (op) {
        case ArithOp::Add: nan = k.add_ff(a.data(), b.data(), out.data(), out.size()); break;
        case ArithOp::Sub: nan = k.sub_ff(a.data(), b.data(), out.data(), out.size()); break;
        case ArithOp::Mul: nan = k.mul_ff(a.data(), b.data(), out.data(), out.size()); break;
        case ArithOp::Div: nan = k.div_ff(a.data(), b.data(), out.data(), out.size()); break;
    }
    if (nan) throw_nan(op);
    return NumField(a.geometry(), std::move(out));
}

NumField pointwise_arith(ArithOp op, const NumField& a, double b) {
    const auto& k = kern::active_ops();
    std::vector<double> out(a.size());
    bool nan = false;
    switch (op) {
        case ArithOp::Add: nan = k.add_fs(a.data(), b, out.data(), out.size()); break;
        case ArithOp::Sub: nan = k.sub_fs(a.data(), b, out.data(), out.size()); break;
        case ArithOp::Mul: nan = k.mul_fs(a.data(), b, out.data(), out.size()); break;
        case ArithOp::Div: nan = k.div_fs(a.data(), b, out.data(), out.size()); break;
    }
    if (nan) throw_nan(op);
    return NumField(a.geometry(), std::move(out));
}

NumField pointwise_arith(ArithOp op, double a, const NumField& b) {
    const auto& k = kern::active_ops();
    std::vector<double> out(b.size());
    bool nan = false;
    switch (op) {
        case ArithOp::Add: nan = k.add_fs(b.data(), a, out.data(), out.size()); break;
        case ArithOp::Mul: nan = k.mul_fs(b.data(), a, out.data(), out.size()); break;
        case ArithOp::Sub: nan = k.sub_sf(a, b.data(), out.data(), out.size()); break;
        case ArithOp::Div: nan = k.div_sf(a, b.data(), out.data(), out.size()); break;
    }
    if (nan) throw_nan(op);
    return NumField(b.geometry(), std::move(out));
}

double scalar_arith(ArithOp op, double a, double b) {
    double r = 0;
    switch (op) {
        case ArithOp::Add: r = a + b; break;
        case ArithOp::Sub: r = a - b; break;
        case ArithOp::Mul: r = a * b; break;
        case ArithOp::Div: r = a / b; break;
    }
    if (std::isnan(r)) throw_nan(op);
    return r;
}

BoolField pointwise_compare(CompareOp op, const NumField& a, double c) {
    const auto& k = kern::active_ops();
    std::vector<std::uint8_t> out(a.size());
    switch (op) {
        case CompareOp::Gt: k.cmp_gt(a.data(), c, out.data(), out.size()); break;
        case CompareOp::Lt: k.cmp_lt(a.data(), c, out.data(), out.size()); break;
        case CompareOp::Geq: k.cmp_geq(a.data(), c, out.data(), out.size()); break;
        case CompareOp::Leq: k.cmp_leq(a.data(), c, out.data(), out.size()); break;
        case CompareOp::Eq: k.cmp_eq(a.data(), c, out.data(), out.size()); break;
    }
    return BoolField(a.geometry(), std::move(out));
}

bool scalar_compare(CompareOp op, double a, double b) {
    switch (op) {
        case CompareOp::Gt: return a > b;
        case CompareOp::Lt: return a < b;
        case CompareOp::Geq: return a >= b;
        case CompareOp::Leq: return a <= b;
        case CompareOp::Eq: return a == b;
    }
    return false;
}

BoolField pointwise_bool(BoolOp op, const BoolField& a, const BoolField& b) {
    require_same_geometry(a.geometry(), b.geometry(), "boolean operator");
    const auto& k = kern::active_ops();
    std::vector<std::uint8_t> out(a.size());
    if (op == BoolOp::And)
        k.and_bb(a.data(), b.data(), out.data(), out.size());
    else
        k.or_bb(a.data(), b.data(), out.data(), out.size());
    return BoolField(a.geometry(), std::move(out));
}

BoolField pointwise_not(const BoolField& a) {
    const auto& k = kern::active_ops();
    std::vector<std::uint8_t> out(a.size());
    k.not_b(a.data(), out.data(), out.size());
    return BoolField(a.geometry(), std::move(out));
}

double aggregate_min(const NumField& f) {
    return kern::active_ops().reduce_min(f.data(), f.size());
}

double aggregate_max(const NumField& f) {
    return kern::active_ops().reduce_max(f.data(), f.size());
}

std::int64_t aggregate_volume(const BoolField& f) {
    return kern::active_ops().count_true(f.data(), f.size());
}

BoolField border(const GridGeometry& g) {
    std::vector<std::uint8_t> out(g.voxel_count(), 0);
    const std::int64_t nx = g.dim(0), ny = g.dim(1), nz = g.dim(2);
    std::int64_t i = 0;
    for (std::int64_t z = 0; z < nz; ++z)
        for (std::int64_t y = 0; y < ny; ++y)
            for (std::int64_t x = 0; x < nx; ++x, ++i) {
                bool edge = x == 0 || x == nx - 1 || y == 0 || y == ny - 1;
                if (g.rank() == 3) edge = edge || z == 0 || z == nz - 1;
                out[i] = edge ? 1 : 0;
            }
    return BoolField(g, std::move(out));
}

} // namespace imgql
