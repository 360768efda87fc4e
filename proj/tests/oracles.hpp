#pragma once

// Brute-force reference implementations for the spatial and statistical
// operators, written directly from the path/definition semantics. They share
// no code with the optimized implementations (which go through connected
// components, separable transforms and incremental histogram updates).

#include <vector>

#include "imgql/fields.hpp"
#include "imgql/spatial.hpp"
#include "imgql/stats.hpp"

namespace oracle {

// Path search: x is true iff some path from x ends in a phi1 voxel with all
// strictly intermediate voxels in phi2.
imgql::BoolField may_reach(const imgql::BoolField& phi1, const imgql::BoolField& phi2);

// Direct surrounded semantics: x is true iff x is in phi1 and every path that
// leaves phi1 passes a phi2 voxel first. The escape search enumerates paths
// with visited-set pruning.
imgql::BoolField surrounded(const imgql::BoolField& phi1, const imgql::BoolField& phi2);

imgql::BoolField touch(const imgql::BoolField& phi1, const imgql::BoolField& phi2);
imgql::BoolField grow(const imgql::BoolField& phi1, const imgql::BoolField& phi2);

// O(n * m) pairwise Euclidean distance in physical coordinates.
imgql::NumField distance_transform(const imgql::BoolField& phi);

// Scan-order BFS flood fill labelling.
imgql::LabelField connected_components(const imgql::BoolField& phi);

// Full per-voxel window recomputation with the textbook correlation formula.
imgql::NumField cross_correlation_map(const imgql::CrossCorrParams& p);

// Per-voxel linear counting of smaller/equal masked values.
imgql::NumField percentiles(const imgql::NumField& f, const imgql::BoolField& mask);

} // namespace oracle
