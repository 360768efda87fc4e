#include <doctest.h>
#include <random>

#include "imgql/errors.hpp"
#include "imgql/metrics.hpp"

using namespace imgql;

namespace {

GridGeometry grid(std::int64_t nx, std::int64_t ny) {
    return GridGeometry({nx, ny}, {1.0, 1.0}, Adjacency::Orthodiagonal);
}

BoolField random_mask(const GridGeometry& g, std::mt19937& rng, double density) {
    std::bernoulli_distribution bit(density);
    std::vector<std::uint8_t> v(g.voxel_count());
    for (auto& x : v) x = bit(rng) ? 1 : 0;
    return BoolField(g, std::move(v));
}

} // namespace

TEST_CASE("confusion counts") {
    GridGeometry g = grid(4, 1);
    BoolField seg(g, {1, 1, 0, 0});
    BoolField truth(g, {1, 0, 1, 0});
    ConfusionCounts c = confusion(seg, truth);
    CHECK(c.tp == 1);
    CHECK(c.fp == 1);
    CHECK(c.fn == 1);
    CHECK(c.tn == 1);
    CHECK(c.total() == g.voxel_count());

    ConfusionCounts same = confusion(seg, seg);
    CHECK(same.fp == 0);
    CHECK(same.fn == 0);

    ConfusionCounts inv = confusion(seg, pointwise_not(seg));
    CHECK(inv.tp == 0);
    CHECK(inv.tn == 0);

    BoolField other(grid(3, 1), {1, 0, 1});
    CHECK_THROWS_AS((void)confusion(seg, other), Error);
}

TEST_CASE("similarity indexes") {
    SimilarityIndexes idx = indexes({3, 10, 1, 1});
    CHECK(idx.dice == doctest::Approx(0.75));
    CHECK(idx.sensitivity == doctest::Approx(0.75));

    GridGeometry g = grid(5, 5);
    std::mt19937 rng(1);
    BoolField a = random_mask(g, rng, 0.4);
    SimilarityIndexes same = indexes(confusion(a, a));
    if (same.dice) CHECK(*same.dice == 1.0);
    if (same.sensitivity) CHECK(*same.sensitivity == 1.0);

    // disjoint nonempty masks
    BoolField l(grid(2, 1), {1, 0});
    BoolField r(grid(2, 1), {0, 1});
    CHECK(*indexes(confusion(l, r)).dice == 0.0);

    // undefined indexes are explicit, not NaN
    SimilarityIndexes empty = indexes({0, 4, 0, 0});
    CHECK_FALSE(empty.sensitivity.has_value());
    CHECK_FALSE(empty.dice.has_value());
    CHECK(empty.specificity.has_value());
}

TEST_CASE("dice equals the set formulation and is symmetric") {
    std::mt19937 rng(2);
    GridGeometry g = grid(9, 8);
    for (int it = 0; it < 30; ++it) {
        BoolField a = random_mask(g, rng, 0.35);
        BoolField b = random_mask(g, rng, 0.35);
        ConfusionCounts c = confusion(a, b);
        std::int64_t inter = aggregate_volume(pointwise_bool(BoolOp::And, a, b));
        std::int64_t va = aggregate_volume(a), vb = aggregate_volume(b);
        auto d = indexes(c).dice;
        if (va + vb == 0) {
            CHECK_FALSE(d.has_value());
            continue;
        }
        CHECK(*d == doctest::Approx(2.0 * inter / static_cast<double>(va + vb)));
        CHECK(*indexes(confusion(b, a)).dice == doctest::Approx(*d));

        // complementing both masks swaps sensitivity and specificity
        ConfusionCounts cc = confusion(pointwise_not(a), pointwise_not(b));
        auto i1 = indexes(c), i2 = indexes(cc);
        if (i1.sensitivity && i2.specificity)
            CHECK(*i1.sensitivity == doctest::Approx(*i2.specificity));
    }
}
