#include "imgql/stats.hpp"

#include <algorithm>
#include <cmath>

#include "imgql/errors.hpp"
#include "imgql/kernels.hpp"
#include "imgql/parallel.hpp"

namespace imgql {

Histogram histogram(const NumField& values, const BoolField& region, double m, double M, int k) {
    require_same_geometry(values.geometry(), region.geometry(), "histogram");
    if (!(m < M)) throw Error(Phase::Eval, "histogram needs m < M");
    if (k < 1) throw Error(Phase::Eval, "histogram needs at least one bin");
    Histogram h;
    h.lo = m;
    h.hi = M;
    h.counts.assign(k, 0);
    const double* v = values.data();
    const std::uint8_t* r = region.data();
    const std::int64_t n = values.size();
    for (std::int64_t i = 0; i < n; ++i) {
        if (!r[i]) continue;
        int b = bin_index(v[i], m, M, k);
        if (b >= 0) ++h.counts[b];
    }
    return h;
}

double cross_correlation(const Histogram& h1, const Histogram& h2) {
    if (h1.bins() != h2.bins())
        throw Error(Phase::Eval, "cross-correlation needs histograms with equal bin counts");
    const int k = h1.bins();
    double m1 = 0, m2 = 0;
    for (int i = 0; i < k; ++i) {
        m1 += static_cast<double>(h1.counts[i]);
        m2 += static_cast<double>(h2.counts[i]);
    }
    m1 /= k;
    m2 /= k;
    double num = 0, s1 = 0, s2 = 0;
    for (int i = 0; i < k; ++i) {
        double d1 = static_cast<double>(h1.counts[i]) - m1;
        double d2 = static_cast<double>(h2.counts[i]) - m2;
        num += d1 * d2;
        s1 += d1 * d1;
        s2 += d2 * d2;
    }
    if (s1 == 0.0 || s2 == 0.0) return 0.0;
    return num / (std::sqrt(s1) * std::sqrt(s2));
}

namespace {

// Incremental window walker for one slab. Keeps the histogram of the window
// around the current centre together with the exact count sum and sum of
// squared counts, updated in integer arithmetic as the window slides.
struct SlabWalker {
    const GridGeometry& g;
    const double* values;
    double m, M;
    int k;
    std::int64_t w[3];   // window half-width in voxels per axis
    std::int64_t c[3];   // current centre
    std::vector<std::int32_t> counts;
    std::int64_t csum = 0;
    std::int64_t csum2 = 0;

    SlabWalker(const GridGeometry& geom, const double* vals, const CrossCorrParams& p,
               const std::int64_t* half)
        : g(geom), values(vals), m(p.m), M(p.M), k(p.k), counts(p.k, 0) {
        for (int a = 0; a < 3; ++a) w[a] = half[a];
    }

    void bump(double v, int delta) {
        int b = bin_index(v, m, M, k);
        if (b < 0) return;
        std::int32_t old = counts[b];
        counts[b] = old + delta;
        csum += delta;
        csum2 += delta > 0 ? (2 * static_cast<std::int64_t>(old) + 1)
                           : (1 - 2 * static_cast<std::int64_t>(old));
    }

    std::int64_t lo(int a) const { return std::max<std::int64_t>(0, c[a] - w[a]); }
    std::int64_t hi(int a) const { return std::min<std::int64_t>(g.dim(a) - 1, c[a] + w[a]); }

    void fill_initial(std::int64_t x, std::int64_t y, std::int64_t z) {
        c[0] = x;
        c[1] = y;
        c[2] = z;
        std::fill(counts.begin(), counts.end(), 0);
        csum = csum2 = 0;
        for (std::int64_t zz = lo(2); zz <= hi(2); ++zz)
            for (std::int64_t yy = lo(1); yy <= hi(1); ++yy)
                for (std::int64_t xx = lo(0); xx <= hi(0); ++xx)
                    bump(values[g.index_of(xx, yy, zz)], +1);
    }

    // Adds or removes the plane of the window at `plane` along `axis`.
    void apply_plane(int axis, std::int64_t plane, int delta) {
        std::int64_t r0[3], r1[3];
        for (int a = 0; a < 3; ++a) {
            r0[a] = lo(a);
            r1[a] = hi(a);
        }
        r0[axis] = r1[axis] = plane;
        for (std::int64_t zz = r0[2]; zz <= r1[2]; ++zz)
            for (std::int64_t yy = r0[1]; yy <= r1[1]; ++yy)
                for (std::int64_t xx = r0[0]; xx <= r1[0]; ++xx)
                    bump(values[g.index_of(xx, yy, zz)], delta);
    }

    // Moves the centre one voxel along `axis`; the ranges on the other axes
    // are unchanged, so the window gains and loses at most one plane each.
    void move(int axis, int step) {
        std::int64_t lo_old = lo(axis), hi_old = hi(axis);
        c[axis] += step;
        std::int64_t lo_new = lo(axis), hi_new = hi(axis);
        if (step > 0) {
            for (std::int64_t p = hi_old + 1; p <= hi_new; ++p) apply_plane(axis, p, +1);
            for (std::int64_t p = lo_old; p <= lo_new - 1; ++p) apply_plane(axis, p, -1);
        } else {
            for (std::int64_t p = lo_new; p <= lo_old - 1; ++p) apply_plane(axis, p, +1);
            for (std::int64_t p = hi_new + 1; p <= hi_old; ++p) apply_plane(axis, p, -1);
        }
    }
};

} // namespace

NumField cross_correlation_map(const CrossCorrParams& p, int workers) {
    if (!p.values || !p.reference || !p.region)
        throw Error(Phase::Eval, "cross-correlation map needs three operands");
    const GridGeometry& g = p.values->geometry();
    require_same_geometry(g, p.reference->geometry(), "crossCorrelation");
    require_same_geometry(g, p.region->geometry(), "crossCorrelation");
    if (!(p.radius_mm > 0)) throw Error(Phase::Eval, "crossCorrelation radius must be > 0");
    if (p.k < 1) throw Error(Phase::Eval, "crossCorrelation needs at least one bin");
    // bounded so k * sum(counts^2) stays well inside int64
    if (p.k > 65536)
        throw Error(Phase::Eval, "crossCorrelation supports at most 65536 bins, got " +
                                     std::to_string(p.k));
    if (!(p.m < p.M)) throw Error(Phase::Eval, "crossCorrelation needs m < M");

    Histogram hb = histogram(*p.reference, *p.region, p.m, p.M, p.k);
    const int k = p.k;
    double mean_b = 0;
    for (int i = 0; i < k; ++i) mean_b += static_cast<double>(hb.counts[i]);
    mean_b /= k;
    std::vector<double> B(k);
    double sumB = 0, norm2_b = 0;
    for (int i = 0; i < k; ++i) {
        B[i] = static_cast<double>(hb.counts[i]) - mean_b;
        sumB += B[i];
        norm2_b += B[i] * B[i];
    }
    if (norm2_b == 0.0) return NumField::constant(g, 0.0);
    const double norm_b = std::sqrt(norm2_b);

    std::int64_t half[3];
    for (int a = 0; a < 3; ++a)
        half[a] = static_cast<std::int64_t>(std::floor(p.radius_mm / g.spacing(a)));

    // One contiguous slab per worker along the slowest real axis; a
    // serpentine walk inside each slab keeps consecutive centres adjacent.
    const int outer = g.dim(2) > 1 ? 2 : 1;
    const int mid = outer == 2 ? 1 : 2;
    const std::int64_t nx = g.dim(0), nmid = g.dim(mid), nouter = g.dim(outer);

    std::vector<double> out(g.voxel_count());
    const double* vals = p.values->data();
    const auto& kops = kern::active_ops();

    parallel_chunks(nouter, workers, [&](std::int64_t o0, std::int64_t o1) {
        SlabWalker walk(g, vals, p, half);
        std::int64_t pos[3] = {0, 0, 0};
        pos[outer] = o0;
        walk.fill_initial(pos[0], pos[1], pos[2]);
        std::int64_t dx = 1, dmid = 1;
        for (;;) {
            double dot = kops.dot_counts(walk.counts.data(), B.data(), k);
            double mean_a = static_cast<double>(walk.csum) / k;
            double num = dot - mean_a * sumB;
            double r;
            if (static_cast<std::int64_t>(k) * walk.csum2 == walk.csum * walk.csum) {
                r = 0.0; // all bins equal: zero variance
            } else {
                double var_a =
                    static_cast<double>(walk.csum2) -
                    static_cast<double>(walk.csum) * static_cast<double>(walk.csum) / k;
                r = num / (std::sqrt(var_a) * norm_b);
            }
            out[g.index_of(pos[0], pos[1], pos[2])] = r;

            if (pos[0] + dx >= 0 && pos[0] + dx < nx) {
                walk.move(0, static_cast<int>(dx));
                pos[0] += dx;
            } else if (pos[mid] + dmid >= 0 && pos[mid] + dmid < nmid) {
                walk.move(mid, static_cast<int>(dmid));
                pos[mid] += dmid;
                dx = -dx;
            } else if (pos[outer] + 1 < o1) {
                walk.move(outer, 1);
                pos[outer] += 1;
                dmid = -dmid;
                dx = -dx;
            } else {
                break;
            }
        }
    });
    return NumField(g, std::move(out));
}

NumField percentiles(const NumField& f, const BoolField& mask, int workers) {
    require_same_geometry(f.geometry(), mask.geometry(), "percentiles");
    const std::int64_t n = f.size();
    std::vector<double> population;
    for (std::int64_t i = 0; i < n; ++i)
        if (mask.at(i)) population.push_back(f.at(i));
    if (population.empty()) throw Error(Phase::Eval, "percentiles over an empty mask");
    std::sort(population.begin(), population.end());
    const double N = static_cast<double>(population.size());

    std::vector<double> out(n, 0.0);
    parallel_chunks(n, workers, [&](std::int64_t b, std::int64_t e) {
        for (std::int64_t i = b; i < e; ++i) {
            if (!mask.at(i)) continue;
            double v = f.at(i);
            auto lo = std::lower_bound(population.begin(), population.end(), v);
            auto hi = std::upper_bound(lo, population.end(), v);
            double below = static_cast<double>(lo - population.begin());
            double equal = static_cast<double>(hi - lo);
            out[i] = (below + 0.5 * equal) / N;
        }
    });
    return NumField(f.geometry(), std::move(out));
}

} // namespace imgql
