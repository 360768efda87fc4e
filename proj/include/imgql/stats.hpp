#pragma once

#include <cstdint>
#include <vector>

#include "imgql/fields.hpp"

namespace imgql {

// Histogram of k bins over [lo, hi]. Bin j (0-based) counts values v with
// lo + j*delta <= v < lo + (j+1)*delta; values equal to hi land in the last
// bin, values outside [lo, hi] are not counted.
struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::int64_t> counts;

    int bins() const { return static_cast<int>(counts.size()); }
};

// Bin of value v, or -1 when v falls outside [m, M].
inline int bin_index(double v, double m, double M, int k) {
    if (!(v >= m) || v > M) return -1;
    if (v == M) return k - 1;
    int i = static_cast<int>((v - m) * static_cast<double>(k) / (M - m));
    return i >= k ? k - 1 : i;
}

Histogram histogram(const NumField& values, const BoolField& region, double m, double M, int k);

// Pearson cross-correlation of the bin vectors, in [-1, 1]. A histogram with
// zero variance across bins yields 0.
double cross_correlation(const Histogram& h1, const Histogram& h2);

struct CrossCorrParams {
    double radius_mm = 0.0;       // half edge of the window hyperrectangle
    const NumField* values = nullptr;      // attribute sampled inside the window
    const NumField* reference = nullptr;   // attribute sampled over the region
    const BoolField* region = nullptr;
    double m = 0.0;
    double M = 1.0;
    int k = 1;
};

// Per voxel, the cross-correlation between the histogram of `values` over the
// axis-aligned window of half-width radius_mm (clipped at the bounds) and the
// fixed histogram of `reference` over `region`. The window walk updates the
// histogram incrementally along a serpentine path, one hyperface at a time,
// with one preallocated histogram buffer per slab; results are exact integer
// counts, so the output does not depend on the slab partitioning.
NumField cross_correlation_map(const CrossCorrParams& p, int workers = 1);

// Percentile rank in [0, 1] of each masked voxel's value within the masked
// population: (count_below + 0.5 * count_equal) / population. Off-mask voxels
// are 0. An empty mask is an error.
NumField percentiles(const NumField& f, const BoolField& mask, int workers = 1);

} // namespace imgql
