#include "imgql/geometry.hpp"

#include <sstream>

#include "imgql/errors.hpp"

namespace imgql {

const char* adjacency_name(Adjacency a) {
    return a == Adjacency::Orthogonal ? "orthogonal" : "orthodiagonal";
}

GridGeometry::GridGeometry(std::vector<std::int64_t> dims, std::vector<double> spacing,
                           Adjacency adjacency)
    : adjacency_(adjacency) {
    if (dims.size() < 2 || dims.size() > 3)
        throw Error(Phase::Eval, "grid must have 2 or 3 axes, got " + std::to_string(dims.size()));
    if (spacing.size() != dims.size())
        throw Error(Phase::Eval, "spacing must have one entry per axis");
    rank_ = static_cast<int>(dims.size());
    for (int i = 0; i < rank_; ++i) {
        if (dims[i] < 1)
            throw Error(Phase::Eval, "grid extent must be >= 1 on every axis");
        if (!(spacing[i] > 0.0))
            throw Error(Phase::Eval, "voxel spacing must be > 0 on every axis");
        dims_[i] = dims[i];
        spacing_[i] = spacing[i];
    }
    for (int i = rank_; i < 3; ++i) {
        dims_[i] = 1;
        spacing_[i] = 1.0;
    }
}

bool GridGeometry::operator==(const GridGeometry& o) const {
    return rank_ == o.rank_ && dims_ == o.dims_ && spacing_ == o.spacing_ &&
           adjacency_ == o.adjacency_;
}

std::string GridGeometry::str() const {
    std::ostringstream os;
    for (int i = 0; i < rank_; ++i) os << (i ? "x" : "") << dims_[i];
    os << " @ (";
    for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << spacing_[i];
    os << ") mm, " << adjacency_name(adjacency_);
    return os.str();
}

std::vector<std::int64_t> GridGeometry::neighbors(std::int64_t index) const {
    if (index < 0 || index >= voxel_count())
        throw Error(Phase::Eval, "voxel index out of range");
    auto c = coords_of(index);
    std::vector<std::int64_t> out;
    out.reserve(27);
    if (adjacency_ == Adjacency::Orthodiagonal) {
        for (std::int64_t dz = -1; dz <= 1; ++dz)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dx = -1; dx <= 1; ++dx) {
                    std::int64_t x = c[0] + dx, y = c[1] + dy, z = c[2] + dz;
                    if (in_bounds(x, y, z)) out.push_back(index_of(x, y, z));
                }
    } else {
        out.push_back(index);
        static const std::int64_t steps[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                                 {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
        for (const auto& s : steps) {
            std::int64_t x = c[0] + s[0], y = c[1] + s[1], z = c[2] + s[2];
            if (in_bounds(x, y, z)) out.push_back(index_of(x, y, z));
        }
    }
    return out;
}

} // namespace imgql
