#include <cmath>
#include <doctest.h>
#include <limits>
#include <random>

#include "imgql/errors.hpp"
#include "imgql/spatial.hpp"
#include "oracles.hpp"

using namespace imgql;

namespace {

GridGeometry grid2(std::int64_t nx, std::int64_t ny,
                   Adjacency adj = Adjacency::Orthodiagonal) {
    return GridGeometry({nx, ny}, {1.0, 1.0}, adj);
}

BoolField mask_of(const GridGeometry& g, std::initializer_list<std::int64_t> idx) {
    std::vector<std::uint8_t> data(g.voxel_count(), 0);
    for (auto i : idx) data[i] = 1;
    return BoolField(g, std::move(data));
}

BoolField random_mask(const GridGeometry& g, std::mt19937& rng, double density) {
    std::bernoulli_distribution bit(density);
    std::vector<std::uint8_t> data(g.voxel_count());
    for (auto& v : data) v = bit(rng) ? 1 : 0;
    return BoolField(g, std::move(data));
}

bool subset(const BoolField& a, const BoolField& b) {
    for (std::int64_t i = 0; i < a.size(); ++i)
        if (a.at(i) && !b.at(i)) return false;
    return true;
}

} // namespace

TEST_CASE("near: closure axioms") {
    GridGeometry g = grid2(3, 3, Adjacency::Orthogonal);

    // C(empty) = empty
    BoolField empty = BoolField::constant(g, false);
    CHECK(aggregate_volume(near(empty)) == 0);

    // centre dilates to a plus shape under orthogonal adjacency
    BoolField centre = mask_of(g, {g.index_of(1, 1)});
    BoolField n = near(centre);
    CHECK(aggregate_volume(n) == 5);
    CHECK(n.at(g.index_of(1, 1)));
    CHECK(n.at(g.index_of(0, 1)));
    CHECK(n.at(g.index_of(2, 1)));
    CHECK(n.at(g.index_of(1, 0)));
    CHECK(n.at(g.index_of(1, 2)));
    CHECK_FALSE(n.at(g.index_of(0, 0)));

    // phi is contained in near(phi); near distributes over union
    std::mt19937 rng(5);
    for (int it = 0; it < 40; ++it) {
        Adjacency adj = it % 2 ? Adjacency::Orthogonal : Adjacency::Orthodiagonal;
        GridGeometry gr = it % 3 == 0 ? GridGeometry({4, 3, 3}, {1, 1, 1}, adj)
                                      : grid2(5, 4, adj);
        BoolField a = random_mask(gr, rng, 0.3);
        BoolField b = random_mask(gr, rng, 0.3);
        CHECK(subset(a, near(a)));
        BoolField lhs = near(pointwise_bool(BoolOp::Or, a, b));
        BoolField rhs = pointwise_bool(BoolOp::Or, near(a), near(b));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("connected components: labels and adjacency sensitivity") {
    // two 2x2 blocks separated by a false column
    GridGeometry g = grid2(5, 2, Adjacency::Orthogonal);
    BoolField blocks = mask_of(g, {g.index_of(0, 0), g.index_of(1, 0), g.index_of(0, 1),
                                   g.index_of(1, 1), g.index_of(3, 0), g.index_of(4, 0),
                                   g.index_of(3, 1), g.index_of(4, 1)});
    LabelField l = connected_components(blocks);
    CHECK(l.count() == 2);

    // all-true 3x3 grid is a single component
    CHECK(connected_components(BoolField::constant(grid2(3, 3), true)).count() == 1);

    // diagonal pair: one component orthodiagonally, two orthogonally
    GridGeometry gd = grid2(2, 2);
    CHECK(connected_components(mask_of(gd, {0, 3})).count() == 1);
    GridGeometry go = grid2(2, 2, Adjacency::Orthogonal);
    CHECK(connected_components(mask_of(go, {0, 3})).count() == 2);
}

TEST_CASE("connected components match the flood-fill oracle exactly") {
    std::mt19937 rng(17);
    for (int it = 0; it < 60; ++it) {
        Adjacency adj = it % 2 ? Adjacency::Orthogonal : Adjacency::Orthodiagonal;
        GridGeometry g = it % 3 == 0 ? GridGeometry({4, 4, 3}, {1, 1, 1}, adj)
                                     : grid2(6, 6, adj);
        BoolField phi = random_mask(g, rng, 0.45);
        LabelField got = connected_components(phi);
        LabelField want = oracle::connected_components(phi);
        CHECK(got.count() == want.count());
        for (std::int64_t i = 0; i < got.size(); ++i) CHECK(got.at(i) == want.at(i));
    }
}

TEST_CASE("mayReach: 1D corridor examples") {
    GridGeometry g = grid2(5, 1, Adjacency::Orthogonal);
    BoolField phi1 = mask_of(g, {4});

    BoolField corridor = mask_of(g, {1, 2, 3});
    BoolField r = may_reach(phi1, corridor);
    CHECK(aggregate_volume(r) == 5); // every voxel reaches through the corridor

    BoolField gap = mask_of(g, {1, 3});
    CHECK(may_reach(phi1, gap) == oracle::may_reach(phi1, gap));
}

TEST_CASE("mayReach: phi1 voxels always reach (zero-length path)") {
    std::mt19937 rng(23);
    GridGeometry g = grid2(6, 5);
    BoolField phi1 = random_mask(g, rng, 0.2);
    BoolField phi2 = random_mask(g, rng, 0.2);
    CHECK(subset(phi1, may_reach(phi1, phi2)));
}

TEST_CASE("mayReach is monotone in the corridor") {
    std::mt19937 rng(29);
    for (int it = 0; it < 30; ++it) {
        GridGeometry g = grid2(5, 5, it % 2 ? Adjacency::Orthogonal : Adjacency::Orthodiagonal);
        BoolField phi1 = random_mask(g, rng, 0.15);
        BoolField phi2 = random_mask(g, rng, 0.3);
        BoolField wider = pointwise_bool(BoolOp::Or, phi2, random_mask(g, rng, 0.2));
        CHECK(subset(may_reach(phi1, phi2), may_reach(phi1, wider)));
    }
}

TEST_CASE("mayReach over the full grid reaches everything from nonempty seeds") {
    GridGeometry g = grid2(4, 4);
    BoolField phi1 = mask_of(g, {5});
    BoolField everywhere = BoolField::constant(g, true);
    CHECK(aggregate_volume(may_reach(phi1, everywhere)) == g.voxel_count());
}

TEST_CASE("surrounded: ring examples") {
    GridGeometry g = grid2(5, 5);
    std::int64_t centre = g.index_of(2, 2);
    std::vector<std::int64_t> ring;
    for (std::int64_t y = 1; y <= 3; ++y)
        for (std::int64_t x = 1; x <= 3; ++x)
            if (!(x == 2 && y == 2)) ring.push_back(g.index_of(x, y));

    BoolField phi1 = mask_of(g, {centre});
    std::vector<std::uint8_t> ring_data(g.voxel_count(), 0);
    for (auto i : ring) ring_data[i] = 1;
    BoolField phi2(g, ring_data);

    BoolField s = surrounded(phi1, phi2);
    CHECK(aggregate_volume(s) == 1);
    CHECK(s.at(centre));
    CHECK(s == oracle::surrounded(phi1, phi2));

    // removing one ring voxel opens an escape
    ring_data[ring[0]] = 0;
    BoolField broken(g, ring_data);
    CHECK(aggregate_volume(surrounded(phi1, broken)) == 0);

    // nothing satisfies S when phi1 is empty
    CHECK(aggregate_volume(surrounded(BoolField::constant(g, false), phi2)) == 0);
}

TEST_CASE("reachability family equals path-semantics oracles on random grids") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<std::int64_t> dim(1, 6);
    for (int it = 0; it < 150; ++it) {
        Adjacency adj = it % 2 ? Adjacency::Orthogonal : Adjacency::Orthodiagonal;
        GridGeometry g = it % 4 == 0
                             ? GridGeometry({dim(rng), dim(rng), 2}, {1, 1, 1}, adj)
                             : grid2(dim(rng), dim(rng), adj);
        BoolField phi1 = random_mask(g, rng, 0.25);
        BoolField phi2 = random_mask(g, rng, 0.45);
        CHECK(may_reach(phi1, phi2) == oracle::may_reach(phi1, phi2));
        CHECK(surrounded(phi1, phi2) == oracle::surrounded(phi1, phi2));
        CHECK(touch(phi1, phi2) == oracle::touch(phi1, phi2));
        CHECK(grow(phi1, phi2) == oracle::grow(phi1, phi2));
    }
}

TEST_CASE("distance transform: examples") {
    // empty mask: all infinite
    GridGeometry g = grid2(3, 3);
    NumField dt_empty = distance_transform(BoolField::constant(g, false));
    for (std::int64_t i = 0; i < dt_empty.size(); ++i)
        CHECK(dt_empty.at(i) == std::numeric_limits<double>::infinity());

    // corner seed: opposite corner at 2*sqrt(2)
    NumField dt = distance_transform(mask_of(g, {g.index_of(0, 0)}));
    CHECK(dt.at(g.index_of(0, 0)) == 0.0);
    CHECK(dt.at(g.index_of(2, 2)) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

    // 1x3 with spacing 2mm
    GridGeometry g1({1, 3}, {1.0, 2.0}, Adjacency::Orthodiagonal);
    NumField dt1 = distance_transform(mask_of(g1, {0}));
    CHECK(dt1.at(0) == 0.0);
    CHECK(dt1.at(1) == doctest::Approx(2.0));
    CHECK(dt1.at(2) == doctest::Approx(4.0));
}

TEST_CASE("distance transform matches brute force on anisotropic grids") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<std::int64_t> dim(1, 12);
    std::uniform_real_distribution<double> sp(0.3, 3.0);
    std::uniform_real_distribution<double> density(0.0, 0.2);
    for (int it = 0; it < 25; ++it) {
        GridGeometry g = it % 2 ? GridGeometry({dim(rng), dim(rng), dim(rng)},
                                               {sp(rng), sp(rng), sp(rng)},
                                               Adjacency::Orthodiagonal)
                                : GridGeometry({dim(rng), dim(rng)}, {sp(rng), sp(rng)},
                                               Adjacency::Orthodiagonal);
        BoolField phi = random_mask(g, rng, density(rng));
        NumField got = distance_transform(phi, 2);
        NumField want = oracle::distance_transform(phi);
        for (std::int64_t i = 0; i < got.size(); ++i) {
            if (std::isinf(want.at(i)))
                CHECK(std::isinf(got.at(i)));
            else
                CHECK(std::abs(got.at(i) - want.at(i)) <= 1e-6);
        }
    }
}

TEST_CASE("distance comparisons") {
    GridGeometry g = grid2(3, 3);
    BoolField none = BoolField::constant(g, false);
    CHECK(aggregate_volume(dist_compare(CompareOp::Lt, 100.0, none)) == 0);
    CHECK(aggregate_volume(dist_compare(CompareOp::Geq, 0.0, none)) == g.voxel_count());

    BoolField seed = mask_of(g, {g.index_of(0, 0)});
    BoolField lt = dist_compare(CompareOp::Lt, 1.5, seed);
    CHECK(aggregate_volume(lt) == 4); // distances 0, 1, 1, sqrt(2)
    CHECK(lt.at(g.index_of(0, 0)));
    CHECK(lt.at(g.index_of(1, 0)));
    CHECK(lt.at(g.index_of(0, 1)));
    CHECK(lt.at(g.index_of(1, 1)));
}

TEST_CASE("distance intervals combine two thresholds over one transform") {
    GridGeometry g = grid2(7, 1);
    BoolField seed = mask_of(g, {0});

    Interval band{2.0, false, 4.0, true}; // 2 <= d < 4
    BoolField got = dist_interval(band, seed);
    for (std::int64_t x = 0; x < 7; ++x)
        CHECK(got.at(x) == band.contains(static_cast<double>(x)));

    // half-open with infinite upper bound, against an empty region
    BoolField none = BoolField::constant(g, false);
    Interval tail{1.0, true, std::numeric_limits<double>::infinity(), true};
    CHECK(aggregate_volume(dist_interval(tail, none)) == 0); // inf < inf fails
    Interval closed_tail{1.0, true, std::numeric_limits<double>::infinity(), false};
    CHECK(aggregate_volume(dist_interval(closed_tail, none)) == g.voxel_count());

    Interval bad{3.0, false, 2.0, false};
    CHECK_THROWS_AS((void)dist_interval(bad, seed), Error);
}

TEST_CASE("touch and grow: degenerate arguments") {
    GridGeometry g = grid2(4, 4);
    std::mt19937 rng(41);
    BoolField a = random_mask(g, rng, 0.4);
    BoolField none = BoolField::constant(g, false);

    CHECK(aggregate_volume(touch(a, none)) == 0); // nothing to reach
    CHECK(grow(a, none) == a);
    CHECK(aggregate_volume(grow(none, a)) == 0);
}

TEST_CASE("flt: minimum-diameter filter") {
    // a 3-voxel-wide stripe vanishes under flt(5.0, .)
    GridGeometry g = grid2(20, 20);
    std::vector<std::uint8_t> stripe(g.voxel_count(), 0);
    for (std::int64_t y = 8; y <= 10; ++y)
        for (std::int64_t x = 0; x < 20; ++x) stripe[g.index_of(x, y)] = 1;
    CHECK(aggregate_volume(flt(5.0, BoolField(g, stripe))) == 0);

    // an all-true grid is untouched for radii up to half the extent
    BoolField full = BoolField::constant(g, true);
    CHECK(flt(8.0, full) == full);

    // a single voxel sits exactly at distance 1 from its complement, so it
    // survives r = 1 and vanishes for any larger radius (values frozen from
    // the brute-force distance-transform composition below)
    BoolField single = mask_of(g, {g.index_of(10, 10)});
    CHECK(flt(1.0, single) == single);
    CHECK(aggregate_volume(flt(1.5, single)) == 0);
}

TEST_CASE("flt equals the brute-force distance-transform composition") {
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> radius(0.5, 4.0);
    for (int it = 0; it < 20; ++it) {
        GridGeometry g = grid2(9, 8, it % 2 ? Adjacency::Orthogonal : Adjacency::Orthodiagonal);
        std::bernoulli_distribution bit(0.5);
        std::vector<std::uint8_t> data(g.voxel_count());
        for (auto& v : data) v = bit(rng) ? 1 : 0;
        BoolField phi(g, data);
        double r = radius(rng);

        NumField dt_not = oracle::distance_transform(pointwise_not(phi));
        std::vector<std::uint8_t> eroded(g.voxel_count());
        for (std::int64_t i = 0; i < g.voxel_count(); ++i) eroded[i] = dt_not.at(i) >= r;
        NumField dt_core = oracle::distance_transform(BoolField(g, eroded));
        std::vector<std::uint8_t> want(g.voxel_count());
        for (std::int64_t i = 0; i < g.voxel_count(); ++i) want[i] = dt_core.at(i) < r;

        CHECK(flt(r, phi) == BoolField(g, want));
    }
}
