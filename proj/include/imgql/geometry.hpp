#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace imgql {

enum class Adjacency { Orthogonal, Orthodiagonal };

const char* adjacency_name(Adjacency a);

// Geometry of a 2D or 3D voxel grid: extents, physical voxel spacing in
// millimetres (possibly anisotropic), and the adjacency convention that
// generates the closure operator.
//
// Grids are stored row-major with x fastest. 2D grids are carried with a
// trailing extent of 1 so index arithmetic is uniform; `rank()` preserves the
// true dimensionality for I/O and for the border predicate.
class GridGeometry {
public:
    GridGeometry() = default;
    GridGeometry(std::vector<std::int64_t> dims, std::vector<double> spacing,
                 Adjacency adjacency);

    int rank() const { return rank_; }
    Adjacency adjacency() const { return adjacency_; }

    std::int64_t dim(int axis) const { return dims_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }

    std::int64_t voxel_count() const { return dims_[0] * dims_[1] * dims_[2]; }

    std::int64_t index_of(std::int64_t x, std::int64_t y, std::int64_t z = 0) const {
        return x + dims_[0] * (y + dims_[1] * z);
    }
    std::array<std::int64_t, 3> coords_of(std::int64_t index) const {
        std::int64_t x = index % dims_[0];
        std::int64_t r = index / dims_[0];
        return {x, r % dims_[1], r / dims_[1]};
    }
    bool in_bounds(std::int64_t x, std::int64_t y, std::int64_t z) const {
        return x >= 0 && x < dims_[0] && y >= 0 && y < dims_[1] && z >= 0 && z < dims_[2];
    }

    bool operator==(const GridGeometry& o) const;
    bool operator!=(const GridGeometry& o) const { return !(*this == o); }

    std::string str() const;

    // Self plus all in-bounds voxels adjacent under the geometry's relation.
    // Throws on an out-of-range index.
    std::vector<std::int64_t> neighbors(std::int64_t index) const;

private:
    int rank_ = 0;
    std::array<std::int64_t, 3> dims_{0, 0, 0};
    std::array<double, 3> spacing_{1.0, 1.0, 1.0};
    Adjacency adjacency_ = Adjacency::Orthodiagonal;
};

} // namespace imgql
