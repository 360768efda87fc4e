#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "imgql/fields.hpp"

namespace imgql {

// Connected-component labels of a mask: 0 for background, 1..count for the
// components, numbered in first-encounter scan order.
class LabelField {
public:
    LabelField() = default;
    LabelField(GridGeometry geometry, std::vector<std::int32_t> labels, std::int32_t count);

    const GridGeometry& geometry() const { return geo_; }
    std::int32_t count() const { return count_; }
    std::int32_t at(std::int64_t i) const { return labels_[i]; }
    const std::int32_t* data() const { return labels_.data(); }
    std::int64_t size() const { return static_cast<std::int64_t>(labels_.size()); }

private:
    GridGeometry geo_;
    std::vector<std::int32_t> labels_;
    std::int32_t count_ = 0;
};

// Distance interval in millimetres; the upper bound may be +inf.
struct Interval {
    double lower = 0.0;
    bool lower_strict = false; // false: d >= lower, true: d > lower
    double upper = std::numeric_limits<double>::infinity();
    bool upper_strict = true; // true: d < upper, false: d <= upper

    bool contains(double d) const {
        bool lo = lower_strict ? d > lower : d >= lower;
        bool hi = upper_strict ? d < upper : d <= upper;
        return lo && hi;
    }
};

// Closure of phi under the geometry's adjacency: a voxel is true iff it or
// one of its neighbors is true in phi.
BoolField near(const BoolField& phi, int workers = 1);

LabelField connected_components(const BoolField& phi);

// True at x iff some path starting at x ends in phi1 with every strictly
// intermediate point in phi2. Computed from the connected components of phi2:
// the result is near(phi1) united with near(psi), where psi collects the
// phi2-components that meet near(phi1).
BoolField may_reach(const BoolField& phi1, const BoolField& phi2, int workers = 1);

// phi1-voxels from which every path leaving phi1 hits phi2 first:
// phi1 & !may_reach(!(phi1|phi2), !phi2).
BoolField surrounded(const BoolField& phi1, const BoolField& phi2, int workers = 1);

// Exact Euclidean distance in millimetres from each voxel center to the
// nearest true voxel center; 0 on true voxels, +inf everywhere when phi is
// empty. Honors anisotropic spacing.
NumField distance_transform(const BoolField& phi, int workers = 1);

// Threshold of distance_transform(phi) against r.
BoolField dist_compare(CompareOp op, double r_mm, const BoolField& phi, int workers = 1);

// Voxels whose distance to phi falls inside the interval: the conjunction of
// two dist_compare thresholds over one shared distance transform.
BoolField dist_interval(const Interval& interval, const BoolField& phi, int workers = 1);

// phi1-voxels lying on a phi1-path that reaches phi2.
BoolField touch(const BoolField& phi1, const BoolField& phi2, int workers = 1);

// phi1 plus the phi2-components touching phi1.
BoolField grow(const BoolField& phi1, const BoolField& phi2, int workers = 1);

// Keeps only areas of phi that contain a ball of radius r (in mm), smoothing
// their outline: distlt(r, distgeq(r, !phi)).
BoolField flt(double r_mm, const BoolField& phi, int workers = 1);

} // namespace imgql
