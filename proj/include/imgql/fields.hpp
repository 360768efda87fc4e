#pragma once

#include <cstdint>
#include <vector>

#include "imgql/geometry.hpp"

namespace imgql {

// Per-voxel boolean mask over one geometry. Treated as immutable once built;
// the engine shares fields between workers without copying.
class BoolField {
public:
    BoolField() = default;
    BoolField(GridGeometry geometry, std::vector<std::uint8_t> data);
    static BoolField constant(const GridGeometry& geometry, bool value);

    const GridGeometry& geometry() const { return geo_; }
    std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }
    bool at(std::int64_t i) const { return data_[i] != 0; }

    const std::uint8_t* data() const { return data_.data(); }
    std::uint8_t* data() { return data_.data(); }
    const std::vector<std::uint8_t>& raw() const { return data_; }

    bool operator==(const BoolField& o) const { return geo_ == o.geo_ && data_ == o.data_; }

private:
    GridGeometry geo_;
    std::vector<std::uint8_t> data_; // 0 or 1 per voxel
};

// Per-voxel 64-bit real value over one geometry. Values may be +inf (an empty
// region has infinite distance everywhere); NaN is never produced by a
// built-in and is rejected where it could leak in.
class NumField {
public:
    NumField() = default;
    NumField(GridGeometry geometry, std::vector<double> data);
    static NumField constant(const GridGeometry& geometry, double value);

    const GridGeometry& geometry() const { return geo_; }
    std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }
    double at(std::int64_t i) const { return data_[i]; }

    const double* data() const { return data_.data(); }
    double* data() { return data_.data(); }
    const std::vector<double>& raw() const { return data_; }

private:
    GridGeometry geo_;
    std::vector<double> data_;
};

enum class ArithOp { Add, Sub, Mul, Div };
enum class CompareOp { Gt, Lt, Geq, Leq, Eq };
enum class BoolOp { And, Or, Not };
enum class AggregateKind { Min, Max, Volume };

// Pointwise algebra. Geometry mismatches and NaN-producing arithmetic
// (0/0, inf-inf, 0*inf) raise Error(Phase::Eval).
NumField pointwise_arith(ArithOp op, const NumField& a, const NumField& b);
NumField pointwise_arith(ArithOp op, const NumField& a, double b);
NumField pointwise_arith(ArithOp op, double a, const NumField& b);
double scalar_arith(ArithOp op, double a, double b);

BoolField pointwise_compare(CompareOp op, const NumField& a, double c);
bool scalar_compare(CompareOp op, double a, double b);

BoolField pointwise_bool(BoolOp op, const BoolField& a, const BoolField& b);
BoolField pointwise_not(const BoolField& a);

double aggregate_min(const NumField& f);
double aggregate_max(const NumField& f);
std::int64_t aggregate_volume(const BoolField& f);

// True exactly where some coordinate is 0 or dim-1 on a real axis.
BoolField border(const GridGeometry& g);

void require_same_geometry(const GridGeometry& a, const GridGeometry& b, const char* what);

} // namespace imgql
