#include "oracles.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace oracle {

using imgql::BoolField;
using imgql::GridGeometry;
using imgql::LabelField;
using imgql::NumField;

BoolField may_reach(const BoolField& phi1, const BoolField& phi2) {
    const GridGeometry& g = phi1.geometry();
    const std::int64_t n = g.voxel_count();
    std::vector<std::uint8_t> out(n, 0);

    for (std::int64_t x = 0; x < n; ++x) {
        if (phi1.at(x)) { // path of length 0
            out[x] = 1;
            continue;
        }
        std::vector<std::uint8_t> visited(n, 0);
        std::deque<std::int64_t> queue;
        bool reached = false;
        // first step: no constraint on the voxel we stand on
        for (std::int64_t s : g.neighbors(x)) {
            if (phi1.at(s)) {
                reached = true;
                break;
            }
            if (phi2.at(s) && !visited[s]) {
                visited[s] = 1;
                queue.push_back(s);
            }
        }
        while (!reached && !queue.empty()) {
            std::int64_t u = queue.front();
            queue.pop_front();
            for (std::int64_t w : g.neighbors(u)) {
                if (phi1.at(w)) {
                    reached = true;
                    break;
                }
                if (phi2.at(w) && !visited[w]) {
                    visited[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        out[x] = reached ? 1 : 0;
    }
    return BoolField(g, std::move(out));
}

BoolField surrounded(const BoolField& phi1, const BoolField& phi2) {
    const GridGeometry& g = phi1.geometry();
    const std::int64_t n = g.voxel_count();
    std::vector<std::uint8_t> out(n, 0);

    for (std::int64_t x = 0; x < n; ++x) {
        if (!phi1.at(x)) continue;
        // escape: a path whose voxels after the start all avoid phi2 and
        // whose endpoint leaves phi1
        std::vector<std::uint8_t> visited(n, 0);
        std::deque<std::int64_t> queue;
        bool escapes = false;
        for (std::int64_t s : g.neighbors(x)) {
            if (phi2.at(s) || visited[s]) continue;
            if (!phi1.at(s)) {
                escapes = true;
                break;
            }
            visited[s] = 1;
            queue.push_back(s);
        }
        while (!escapes && !queue.empty()) {
            std::int64_t u = queue.front();
            queue.pop_front();
            for (std::int64_t w : g.neighbors(u)) {
                if (phi2.at(w) || visited[w]) continue;
                if (!phi1.at(w)) {
                    escapes = true;
                    break;
                }
                visited[w] = 1;
                queue.push_back(w);
            }
        }
        out[x] = escapes ? 0 : 1;
    }
    return BoolField(g, std::move(out));
}

BoolField touch(const BoolField& phi1, const BoolField& phi2) {
    BoolField reach = oracle::may_reach(phi2, phi1);
    const std::int64_t n = phi1.size();
    std::vector<std::uint8_t> out(n, 0);
    for (std::int64_t i = 0; i < n; ++i) out[i] = (phi1.at(i) && reach.at(i)) ? 1 : 0;
    return BoolField(phi1.geometry(), std::move(out));
}

BoolField grow(const BoolField& phi1, const BoolField& phi2) {
    BoolField t = oracle::touch(phi2, phi1);
    const std::int64_t n = phi1.size();
    std::vector<std::uint8_t> out(n, 0);
    for (std::int64_t i = 0; i < n; ++i) out[i] = (phi1.at(i) || t.at(i)) ? 1 : 0;
    return BoolField(phi1.geometry(), std::move(out));
}

NumField distance_transform(const BoolField& phi) {
    const GridGeometry& g = phi.geometry();
    const std::int64_t n = g.voxel_count();
    std::vector<std::int64_t> seeds;
    for (std::int64_t i = 0; i < n; ++i)
        if (phi.at(i)) seeds.push_back(i);

    std::vector<double> out(n, std::numeric_limits<double>::infinity());
    for (std::int64_t i = 0; i < n; ++i) {
        auto c = g.coords_of(i);
        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t s : seeds) {
            auto cs = g.coords_of(s);
            double d2 = 0;
            for (int a = 0; a < 3; ++a) {
                double d = static_cast<double>(c[a] - cs[a]) * g.spacing(a);
                d2 += d * d;
            }
            best = std::min(best, std::sqrt(d2));
        }
        out[i] = best;
    }
    return NumField(g, std::move(out));
}

LabelField connected_components(const BoolField& phi) {
    const GridGeometry& g = phi.geometry();
    const std::int64_t n = g.voxel_count();
    std::vector<std::int32_t> labels(n, 0);
    std::int32_t next = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        if (!phi.at(i) || labels[i] != 0) continue;
        ++next;
        std::deque<std::int64_t> queue{i};
        labels[i] = next;
        while (!queue.empty()) {
            std::int64_t u = queue.front();
            queue.pop_front();
            for (std::int64_t w : g.neighbors(u)) {
                if (phi.at(w) && labels[w] == 0) {
                    labels[w] = next;
                    queue.push_back(w);
                }
            }
        }
    }
    return LabelField(g, std::move(labels), next);
}

NumField cross_correlation_map(const imgql::CrossCorrParams& p) {
    const GridGeometry& g = p.values->geometry();
    const std::int64_t n = g.voxel_count();
    const int k = p.k;
    const double delta = (p.M - p.m) / k;

    auto bin_of = [&](double v) -> int {
        if (v < p.m || v > p.M) return -1;
        if (v == p.M) return k - 1;
        int b = static_cast<int>(std::floor((v - p.m) / delta));
        return b >= k ? k - 1 : b;
    };

    std::vector<double> hb(k, 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        if (!p.region->at(i)) continue;
        int b = bin_of(p.reference->at(i));
        if (b >= 0) hb[b] += 1.0;
    }

    std::int64_t half[3];
    for (int a = 0; a < 3; ++a)
        half[a] = static_cast<std::int64_t>(std::floor(p.radius_mm / g.spacing(a)));

    std::vector<double> out(n, 0.0);
    std::vector<double> ha(k);
    for (std::int64_t i = 0; i < n; ++i) {
        auto c = g.coords_of(i);
        std::fill(ha.begin(), ha.end(), 0.0);
        for (std::int64_t z = std::max<std::int64_t>(0, c[2] - half[2]);
             z <= std::min(g.dim(2) - 1, c[2] + half[2]); ++z)
            for (std::int64_t y = std::max<std::int64_t>(0, c[1] - half[1]);
                 y <= std::min(g.dim(1) - 1, c[1] + half[1]); ++y)
                for (std::int64_t x = std::max<std::int64_t>(0, c[0] - half[0]);
                     x <= std::min(g.dim(0) - 1, c[0] + half[0]); ++x) {
                    int b = bin_of(p.values->at(g.index_of(x, y, z)));
                    if (b >= 0) ha[b] += 1.0;
                }

        double ma = 0, mb = 0;
        for (int b = 0; b < k; ++b) {
            ma += ha[b];
            mb += hb[b];
        }
        ma /= k;
        mb /= k;
        double num = 0, sa = 0, sb = 0;
        for (int b = 0; b < k; ++b) {
            num += (ha[b] - ma) * (hb[b] - mb);
            sa += (ha[b] - ma) * (ha[b] - ma);
            sb += (hb[b] - mb) * (hb[b] - mb);
        }
        out[i] = (sa == 0 || sb == 0) ? 0.0 : num / (std::sqrt(sa) * std::sqrt(sb));
    }
    return NumField(g, std::move(out));
}

NumField percentiles(const NumField& f, const BoolField& mask) {
    const std::int64_t n = f.size();
    std::vector<double> population;
    for (std::int64_t i = 0; i < n; ++i)
        if (mask.at(i)) population.push_back(f.at(i));
    std::vector<double> out(n, 0.0);
    const double N = static_cast<double>(population.size());
    for (std::int64_t i = 0; i < n; ++i) {
        if (!mask.at(i)) continue;
        double below = 0, equal = 0;
        for (double v : population) {
            if (v < f.at(i)) below += 1;
            if (v == f.at(i)) equal += 1;
        }
        out[i] = (below + 0.5 * equal) / N;
    }
    return NumField(f.geometry(), std::move(out));
}

} // namespace oracle
