#include "imgql/spatial.hpp"

#include <cmath>
#include <limits>

#include "imgql/errors.hpp"
#include "imgql/kernels.hpp"
#include "imgql/parallel.hpp"

namespace imgql {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct AxisView {
    std::int64_t extent;   // voxels along the axis
    std::int64_t stride;   // linear step along the axis
    std::int64_t lines;    // number of independent lines
    std::int64_t lo_size;  // combined extent of axes below `axis`

    AxisView(const GridGeometry& g, int axis) {
        const std::int64_t d[3] = {g.dim(0), g.dim(1), g.dim(2)};
        const std::int64_t s[3] = {1, d[0], d[0] * d[1]};
        extent = d[axis];
        stride = s[axis];
        lines = g.voxel_count() / extent;
        lo_size = s[axis]; // axes below `axis` are exactly the stride
    }

    // Start offset of the k-th line, enumerating lines in row-major order of
    // the remaining axes.
    std::int64_t line_start(std::int64_t k) const {
        std::int64_t lo = k % lo_size;
        std::int64_t hi = k / lo_size;
        return lo + hi * lo_size * extent;
    }
};

// One-step dilation along a single axis (includes the identity).
std::vector<std::uint8_t> dilate_axis(const GridGeometry& g,
                                      const std::vector<std::uint8_t>& in, int axis,
                                      int workers) {
    AxisView v(g, axis);
    std::vector<std::uint8_t> out(in.size());
    if (v.extent == 1) {
        out = in;
        return out;
    }
    parallel_chunks(v.lines, workers, [&](std::int64_t k0, std::int64_t k1) {
        for (std::int64_t k = k0; k < k1; ++k) {
            const std::int64_t base = v.line_start(k);
            const std::int64_t st = v.stride, n = v.extent;
            out[base] = in[base] | in[base + st];
            for (std::int64_t i = 1; i < n - 1; ++i) {
                std::int64_t p = base + i * st;
                out[p] = in[p - st] | in[p] | in[p + st];
            }
            out[base + (n - 1) * st] = in[base + (n - 2) * st] | in[base + (n - 1) * st];
        }
    });
    return out;
}

} // namespace

LabelField::LabelField(GridGeometry geometry, std::vector<std::int32_t> labels,
                       std::int32_t count)
    : geo_(std::move(geometry)), labels_(std::move(labels)), count_(count) {
    if (static_cast<std::int64_t>(labels_.size()) != geo_.voxel_count())
        throw Error(Phase::Eval, "label data length does not match geometry");
}

BoolField near(const BoolField& phi, int workers) {
    const GridGeometry& g = phi.geometry();
    if (g.adjacency() == Adjacency::Orthodiagonal) {
        // Box dilation is separable: one pass per axis.
        std::vector<std::uint8_t> acc = dilate_axis(g, phi.raw(), 0, workers);
        acc = dilate_axis(g, acc, 1, workers);
        if (g.dim(2) > 1) acc = dilate_axis(g, acc, 2, workers);
        return BoolField(g, std::move(acc));
    }
    // Cross dilation: union of the per-axis dilations of the original.
    std::vector<std::uint8_t> acc = dilate_axis(g, phi.raw(), 0, workers);
    for (int axis = 1; axis < 3; ++axis) {
        if (g.dim(axis) == 1) continue;
        std::vector<std::uint8_t> d = dilate_axis(g, phi.raw(), axis, workers);
        kern::active_ops().or_bb(acc.data(), d.data(), acc.data(), acc.size());
    }
    return BoolField(g, std::move(acc));
}

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;

    explicit UnionFind(std::int64_t n) : parent(n, -1) {}

    std::int32_t find(std::int32_t x) {
        std::int32_t r = x;
        while (parent[r] != r) r = parent[r];
        while (parent[x] != r) {
            std::int32_t next = parent[x];
            parent[x] = r;
            x = next;
        }
        return r;
    }

    // Keeps the smaller index as root so component roots follow scan order.
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b)
            parent[b] = a;
        else
            parent[a] = b;
    }
};

} // namespace

LabelField connected_components(const BoolField& phi) {
    const GridGeometry& g = phi.geometry();
    const std::int64_t n = g.voxel_count();
    const std::int64_t nx = g.dim(0), ny = g.dim(1), nz = g.dim(2);
    const std::uint8_t* mask = phi.data();

    UnionFind uf(n);
    // Forward half-stencil: offsets with positive linear step.
    std::int64_t offs[13][3];
    int noffs = 0;
    if (g.adjacency() == Adjacency::Orthodiagonal) {
        for (std::int64_t dz = 0; dz <= 1; ++dz)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dx = -1; dx <= 1; ++dx) {
                    if (dz == 0 && (dy < 0 || (dy == 0 && dx <= 0))) continue;
                    offs[noffs][0] = dx;
                    offs[noffs][1] = dy;
                    offs[noffs][2] = dz;
                    ++noffs;
                }
    } else {
        offs[noffs][0] = 1; offs[noffs][1] = 0; offs[noffs][2] = 0; ++noffs;
        offs[noffs][0] = 0; offs[noffs][1] = 1; offs[noffs][2] = 0; ++noffs;
        offs[noffs][0] = 0; offs[noffs][1] = 0; offs[noffs][2] = 1; ++noffs;
    }

    std::int64_t i = 0;
    for (std::int64_t z = 0; z < nz; ++z)
        for (std::int64_t y = 0; y < ny; ++y)
            for (std::int64_t x = 0; x < nx; ++x, ++i) {
                if (!mask[i]) continue;
                if (uf.parent[i] < 0) uf.parent[i] = static_cast<std::int32_t>(i);
                for (int o = 0; o < noffs; ++o) {
                    std::int64_t qx = x + offs[o][0], qy = y + offs[o][1], qz = z + offs[o][2];
                    if (!g.in_bounds(qx, qy, qz)) continue;
                    std::int64_t q = g.index_of(qx, qy, qz);
                    if (!mask[q]) continue;
                    if (uf.parent[q] < 0) uf.parent[q] = static_cast<std::int32_t>(q);
                    uf.unite(static_cast<std::int32_t>(i), static_cast<std::int32_t>(q));
                }
            }

    std::vector<std::int32_t> labels(n, 0);
    std::vector<std::int32_t> root_label(n, 0);
    std::int32_t next = 0;
    for (std::int64_t p = 0; p < n; ++p) {
        if (!mask[p]) continue;
        std::int32_t r = uf.find(static_cast<std::int32_t>(p));
        if (root_label[r] == 0) root_label[r] = ++next;
        labels[p] = root_label[r];
    }
    return LabelField(g, std::move(labels), next);
}

BoolField may_reach(const BoolField& phi1, const BoolField& phi2, int workers) {
    require_same_geometry(phi1.geometry(), phi2.geometry(), "mayReach");
    const GridGeometry& g = phi1.geometry();
    BoolField near1 = near(phi1, workers);

    LabelField comps = connected_components(phi2);
    std::vector<std::uint8_t> flagged(static_cast<std::size_t>(comps.count()) + 1, 0);
    for (std::int64_t i = 0; i < comps.size(); ++i)
        if (near1.at(i) && comps.at(i) != 0) flagged[comps.at(i)] = 1;

    std::vector<std::uint8_t> psi(g.voxel_count());
    parallel_chunks(g.voxel_count(), workers, [&](std::int64_t b, std::int64_t e) {
        for (std::int64_t i = b; i < e; ++i) psi[i] = flagged[comps.at(i)];
    });
    BoolField near_psi = near(BoolField(g, std::move(psi)), workers);
    return pointwise_bool(BoolOp::Or, near1, near_psi);
}

BoolField surrounded(const BoolField& phi1, const BoolField& phi2, int workers) {
    require_same_geometry(phi1.geometry(), phi2.geometry(), "surrounded");
    BoolField escape_zone = pointwise_not(pointwise_bool(BoolOp::Or, phi1, phi2));
    BoolField corridor = pointwise_not(phi2);
    BoolField escapes = may_reach(escape_zone, corridor, workers);
    return pointwise_bool(BoolOp::And, phi1, pointwise_not(escapes));
}

namespace {

// 1D squared-distance transform along one line with physical sample spacing,
// by lower envelope of parabolas. Positions with f = +inf do not contribute.
void envelope_1d(const double* f, double* out, std::int64_t n, double sp,
                 std::int32_t* vbuf, double* zbuf, double* fbuf) {
    std::int32_t k = -1;
    for (std::int64_t q = 0; q < n; ++q) {
        double fq = f[q];
        if (fq == kInf) continue;
        double xq = static_cast<double>(q) * sp;
        double s = 0;
        while (k >= 0) {
            double xv = static_cast<double>(vbuf[k]) * sp;
            s = ((fq + xq * xq) - (fbuf[k] + xv * xv)) / (2.0 * (xq - xv));
            if (s > zbuf[k]) break;
            --k;
        }
        if (k < 0) {
            k = 0;
            vbuf[0] = static_cast<std::int32_t>(q);
            fbuf[0] = fq;
            zbuf[0] = -kInf;
        } else {
            ++k;
            vbuf[k] = static_cast<std::int32_t>(q);
            fbuf[k] = fq;
            zbuf[k] = s;
        }
    }
    if (k < 0) {
        for (std::int64_t p = 0; p < n; ++p) out[p] = kInf;
        return;
    }
    std::int32_t j = 0;
    for (std::int64_t p = 0; p < n; ++p) {
        double xp = static_cast<double>(p) * sp;
        while (j < k && zbuf[j + 1] < xp) ++j;
        double dx = xp - static_cast<double>(vbuf[j]) * sp;
        out[p] = dx * dx + fbuf[j];
    }
}

} // namespace

NumField distance_transform(const BoolField& phi, int workers) {
    const GridGeometry& g = phi.geometry();
    const std::int64_t n = g.voxel_count();
    std::vector<double> dist(n);
    for (std::int64_t i = 0; i < n; ++i) dist[i] = phi.at(i) ? 0.0 : kInf;

    std::int64_t max_extent = std::max({g.dim(0), g.dim(1), g.dim(2)});
    for (int axis = 0; axis < 3; ++axis) {
        if (g.dim(axis) == 1) continue;
        AxisView v(g, axis);
        const double sp = g.spacing(axis);
        parallel_chunks(v.lines, workers, [&, sp](std::int64_t k0, std::int64_t k1) {
            std::vector<double> fline(max_extent), oline(max_extent), zbuf(max_extent + 1),
                fbuf(max_extent);
            std::vector<std::int32_t> vbuf(max_extent);
            for (std::int64_t k = k0; k < k1; ++k) {
                const std::int64_t base = v.line_start(k);
                for (std::int64_t i = 0; i < v.extent; ++i) fline[i] = dist[base + i * v.stride];
                envelope_1d(fline.data(), oline.data(), v.extent, sp, vbuf.data(), zbuf.data(),
                            fbuf.data());
                for (std::int64_t i = 0; i < v.extent; ++i) dist[base + i * v.stride] = oline[i];
            }
        });
    }

    parallel_chunks(n, workers, [&](std::int64_t b, std::int64_t e) {
        for (std::int64_t i = b; i < e; ++i) dist[i] = std::sqrt(dist[i]);
    });
    return NumField(g, std::move(dist));
}

BoolField dist_compare(CompareOp op, double r_mm, const BoolField& phi, int workers) {
    if (!std::isfinite(r_mm))
        throw Error(Phase::Eval, "distance threshold must be finite");
    return pointwise_compare(op, distance_transform(phi, workers), r_mm);
}

BoolField dist_interval(const Interval& interval, const BoolField& phi, int workers) {
    if (!(interval.lower <= interval.upper))
        throw Error(Phase::Eval, "distance interval needs lower <= upper");
    // IEEE comparisons against +inf do the right thing for empty-region
    // distances: inf < inf is false, inf <= inf is true.
    NumField dist = distance_transform(phi, workers);
    BoolField lo = pointwise_compare(interval.lower_strict ? CompareOp::Gt : CompareOp::Geq,
                                     dist, interval.lower);
    BoolField hi = pointwise_compare(interval.upper_strict ? CompareOp::Lt : CompareOp::Leq,
                                     dist, interval.upper);
    return pointwise_bool(BoolOp::And, lo, hi);
}

BoolField touch(const BoolField& phi1, const BoolField& phi2, int workers) {
    require_same_geometry(phi1.geometry(), phi2.geometry(), "touch");
    return pointwise_bool(BoolOp::And, phi1, may_reach(phi2, phi1, workers));
}

BoolField grow(const BoolField& phi1, const BoolField& phi2, int workers) {
    require_same_geometry(phi1.geometry(), phi2.geometry(), "grow");
    return pointwise_bool(BoolOp::Or, phi1, touch(phi2, phi1, workers));
}

BoolField flt(double r_mm, const BoolField& phi, int workers) {
    if (!(r_mm > 0)) throw Error(Phase::Eval, "flt radius must be > 0");
    BoolField core = dist_compare(CompareOp::Geq, r_mm, pointwise_not(phi), workers);
    return dist_compare(CompareOp::Lt, r_mm, core, workers);
}

} // namespace imgql
