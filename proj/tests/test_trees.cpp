#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "m0n/json_io.hpp"
#include "m0n/tree.hpp"
#include "oracles.hpp"

using namespace m0n;

namespace {

Rational Q(long long p, long long q = 1) { return Rational(p, q); }

MarkedMetricTree caterpillar_15_2_34() {
    // cherry {1,5} -- leaf 2 -- cherry {3,4}, edge lengths 1 and 2
    return metric_tree_from_splits(
        5, {{Split::of_leaves({1, 5}, 5), Q(1)}, {Split::of_leaves({3, 4}, 5), Q(2)}});
}

} // namespace

TEST_CASE("splits store the side away from the last leaf") {
    Split s = Split::of_leaves({1, 5}, 5);
    CHECK(s.side_mask() == 0b01110u);   // complemented to {2,3,4}
    CHECK(s.side_size() == 3);
    CHECK(s.name() == "d15");           // displayed by the smaller side
    CHECK(!s.side_contains(1));
    CHECK(s.side_contains(2));
    CHECK(s.separates(1, 2));
    CHECK(!s.separates(2, 4));

    CHECK(Split::of_leaves({3, 4}, 4) == Split::of_leaves({1, 2}, 4));
    CHECK(Split::of_leaves({3, 4}, 4).name() == "d12");   // tie goes to leaf 1's side

    SUBCASE("bad inputs") {
        CHECK_THROWS_AS(Split::of_leaves({1, 2}, 3), std::invalid_argument);
        CHECK_THROWS_AS(Split::of_leaves({2}, 5), std::invalid_argument);
        CHECK_THROWS_AS(Split::of_leaves({1, 2, 3, 4}, 5), std::invalid_argument);
        CHECK_THROWS_AS(Split::of_leaves({0, 2}, 5), std::invalid_argument);
        CHECK_THROWS_AS(Split::of_leaves({2, 6}, 5), std::invalid_argument);
    }

    SUBCASE("ordering is by side size, then mask") {
        Split a = Split::of_leaves({2, 3}, 5);
        Split b = Split::of_leaves({1, 5}, 5);   // canonical side {2,3,4}
        CHECK(a < b);
        CHECK(Split::of_leaves({1, 2}, 5) < a);
    }
}

TEST_CASE("split compatibility is nested-or-disjoint") {
    Split d12 = Split::of_leaves({1, 2}, 5);
    Split d13 = Split::of_leaves({1, 3}, 5);
    Split d34 = Split::of_leaves({3, 4}, 5);
    Split d123 = Split::of_leaves({1, 2, 3}, 5);

    CHECK(d12.compatible(d34));    // disjoint sides
    CHECK(d12.compatible(d123));   // nested
    CHECK(!d34.compatible(d123));  // marks 1,3,4,5 would need both 34|15 and 13|45
    CHECK(!d12.compatible(d13));
    CHECK(d12.compatible(d12));

    CHECK_THROWS_AS((void)d12.compatible(Split::of_leaves({1, 2}, 6)), std::invalid_argument);
}

TEST_CASE("trees are rebuilt from their splits") {
    SUBCASE("two-cherry caterpillar") {
        MarkedTree t = tree_from_splits(
            5, {Split::of_leaves({1, 5}, 5), Split::of_leaves({3, 4}, 5)});
        CHECK(t.vertex_count == 8);   // 5 leaves + 3 path vertices
        auto back = splits_of_tree(t);
        REQUIRE(back.size() == 2);
        CHECK(back[0] == Split::of_leaves({3, 4}, 5));
        CHECK(back[1] == Split::of_leaves({1, 5}, 5));
        for (int v = 0; v < t.vertex_count; ++v)
            if (!t.is_leaf_vertex(v)) CHECK(t.degrees()[static_cast<size_t>(v)] == 3);
    }

    SUBCASE("no splits gives the star") {
        MarkedTree t = tree_from_splits(5, {});
        CHECK(t.vertex_count == 6);
        CHECK(splits_of_tree(t).empty());
    }

    SUBCASE("incompatible pairs are rejected by name") {
        try {
            tree_from_splits(5, {Split::of_leaves({1, 2}, 5), Split::of_leaves({1, 3}, 5)});
            FAIL("expected incompatible_splits_error");
        } catch (const incompatible_splits_error& e) {
            CHECK(e.first() == "d12");
            CHECK(e.second() == "d13");
        }
    }

    SUBCASE("repeated splits collapse") {
        Split s = Split::of_leaves({1, 2}, 5);
        CHECK(iso_equal(tree_from_splits(5, {s, s}), tree_from_splits(5, {s})));
    }

    SUBCASE("split order does not matter") {
        std::vector<Split> splits{Split::of_leaves({1, 2}, 6), Split::of_leaves({1, 2, 3}, 6),
                                  Split::of_leaves({5, 6}, 6)};
        MarkedTree ref = tree_from_splits(6, splits);
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 10; ++trial) {
            std::shuffle(splits.begin(), splits.end(), rng);
            CHECK(iso_equal(tree_from_splits(6, splits), ref));
        }
    }

    SUBCASE("round trip over every stable type, n <= 7") {
        for (int n = 4; n <= 7; ++n)
            for (const auto& set : enumerate_stable_split_sets(n)) {
                auto back = splits_of_tree(tree_from_splits(n, set));
                std::vector<Split> want = set;
                std::sort(want.begin(), want.end());
                CHECK(back == want);
            }
    }
}

TEST_CASE("enumeration counts match the closed forms") {
    CHECK(enumerate_stable_split_sets(3).size() == 1);
    CHECK(enumerate_stable_split_sets(4).size() == 4);
    CHECK(enumerate_stable_split_sets(5).size() == 26);
    CHECK(enumerate_stable_split_sets(6).size() == 236);
    CHECK(enumerate_stable_split_sets(7).size() == 2752);

    SUBCASE("trivalent types agree with leaf insertion") {
        for (int n = 4; n <= 6; ++n) {
            std::set<std::vector<std::uint32_t>> got;
            for (const auto& set : enumerate_stable_split_sets(n)) {
                if (set.size() != static_cast<size_t>(n - 3)) continue;
                std::vector<std::uint32_t> masks;
                for (const Split& s : set) masks.push_back(s.side_mask());
                std::sort(masks.begin(), masks.end());
                got.insert(masks);
            }
            CHECK(got == oracles::trivalent_shapes_by_insertion(n));
        }
    }

    CHECK_THROWS_AS(enumerate_stable_split_sets(2), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_stable_split_sets(10), std::invalid_argument);
}

TEST_CASE("isomorphism ignores vertex numbering") {
    MarkedTree a = tree_from_splits(4, {Split::of_leaves({1, 2}, 4)});

    MarkedTree b;   // same shape, scrambled ids
    b.n = 4;
    b.vertex_count = 6;
    b.edges = {{0, 5}, {1, 5}, {2, 4}, {3, 4}, {4, 5}};
    b.leaf_vertex = {0, 1, 2, 3};
    b.validate();
    CHECK(iso_equal(a, b));
    CHECK(canonical_form(a) == canonical_form(b));

    MarkedTree c = tree_from_splits(4, {Split::of_leaves({1, 3}, 4)});
    CHECK(!iso_equal(a, c));
}

TEST_CASE("tree validation names the violated condition") {
    MarkedTree t = tree_from_splits(4, {Split::of_leaves({1, 2}, 4)});

    SUBCASE("degree-2 internal vertex") {
        MarkedTree bad;
        bad.n = 3;
        bad.vertex_count = 5;
        bad.edges = {{0, 3}, {1, 3}, {3, 4}, {2, 4}};   // 4 is a bare path vertex
        bad.leaf_vertex = {0, 1, 2};
        CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("degree < 3"),
                             std::invalid_argument);
    }

    SUBCASE("disconnected") {
        MarkedTree bad = t;
        bad.vertex_count = 8;
        bad.edges.push_back({6, 7});
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }

    SUBCASE("metric layer rejects bad lengths") {
        MarkedMetricTree m{t, {}};
        CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("without length"),
                             std::invalid_argument);
        m.lengths[{4, 5}] = Q(0);
        CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("non-positive"),
                             std::invalid_argument);
        m.lengths[{4, 5}] = Q(1);
        m.validate();
        m.lengths[{0, 4}] = Q(1);   // leaf edge
        CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("non-internal"),
                             std::invalid_argument);
    }
}

TEST_CASE("leaf distances sum internal lengths only") {
    MarkedMetricTree t = caterpillar_15_2_34();
    DistanceMatrix d = distance_matrix(t);
    CHECK(d.at(1, 5) == Q(0));   // same cherry
    CHECK(d.at(3, 4) == Q(0));
    CHECK(d.at(1, 2) == Q(1));
    CHECK(d.at(2, 3) == Q(2));
    CHECK(d.at(1, 3) == Q(3));
    CHECK(d.at(5, 4) == Q(3));
    CHECK(d.at(4, 1) == d.at(1, 4));

    SUBCASE("agrees with Floyd-Warshall on random trees") {
        std::mt19937_64 rng(11);
        std::vector<Rational> grid{Q(1), Q(1, 2), Q(7, 3), Q(5)};
        for (int trial = 0; trial < 60; ++trial) {
            int n = 4 + static_cast<int>(rng() % 4);
            MarkedMetricTree r = oracles::random_metric_tree(n, rng, grid);
            DistanceMatrix mine = distance_matrix(r);
            DistanceMatrix ref = oracles::distance_by_floyd_warshall(r);
            for (int k = 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l) CHECK(mine.at(k, l) == ref.at(k, l));
        }
    }
}

TEST_CASE("four-point condition separates tree metrics from the rest") {
    std::mt19937_64 rng(13);
    std::vector<Rational> grid{Q(1), Q(1, 2), Q(7, 3)};
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        CHECK(four_point_check(distance_matrix(oracles::random_metric_tree(n, rng, grid))));
    }

    CHECK(four_point_check(DistanceMatrix::zero(5)));

    DistanceMatrix square = DistanceMatrix::zero(4);   // unit square, no tree realizes it
    square.at(1, 2) = square.at(2, 3) = square.at(3, 4) = square.at(1, 4) = Q(1);
    square.at(1, 3) = square.at(2, 4) = Q(2);
    CHECK(!four_point_check(square));

    DistanceMatrix lone = DistanceMatrix::zero(4);
    lone.at(1, 2) = Q(1);
    CHECK(!four_point_check(lone));
}

TEST_CASE("forgetting a leaf stabilizes the tree") {
    MarkedMetricTree t = caterpillar_15_2_34();

    SUBCASE("cherry leaf: partner edge is absorbed") {
        MarkedMetricTree f = forget_leaf(t, 5);
        auto sl = split_lengths(f);
        REQUIRE(sl.size() == 1);
        CHECK(sl[0].first == Split::of_leaves({3, 4}, 4));
        CHECK(sl[0].second == Q(2));
    }

    SUBCASE("path leaf: the two edges merge") {
        MarkedMetricTree f = forget_leaf(t, 2);   // labels 1,3,4,5 -> 1,2,3,4
        auto sl = split_lengths(f);
        REQUIRE(sl.size() == 1);
        CHECK(sl[0].first == Split::of_leaves({1, 4}, 4));
        CHECK(sl[0].second == Q(3));
    }

    SUBCASE("star stays a star") {
        MarkedMetricTree star{tree_from_splits(5, {}), {}};
        MarkedMetricTree f = forget_leaf(star, 3);
        CHECK(f.tree.n == 4);
        CHECK(splits_of_tree(f.tree).empty());
    }

    SUBCASE("splits with a starved side disappear") {
        MarkedMetricTree q = metric_tree_from_splits(4, {{Split::of_leaves({1, 2}, 4), Q(1)}});
        MarkedMetricTree f = forget_leaf(q, 4);
        CHECK(f.tree.n == 3);
        CHECK(splits_of_tree(f.tree).empty());
    }

    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(forget_leaf(t, 0), std::invalid_argument);
        CHECK_THROWS_AS(forget_leaf(t, 6), std::invalid_argument);
        MarkedMetricTree tiny{tree_from_splits(3, {}), {}};
        CHECK_THROWS_AS(forget_leaf(tiny, 1), std::invalid_argument);
    }
}

TEST_CASE("forgetting a leaf changes distances only through a lost cherry edge") {
    // Forgetting f leaves d unchanged unless f sits in a two-leaf cherry whose
    // stem has length d0; then the partner's row drops by d0.
    auto relabel = [](int g, int f) { return g > f ? g - 1 : g; };
    std::mt19937_64 rng(17);
    std::vector<Rational> grid{Q(1), Q(1, 2), Q(7, 3)};
    int cherry_cases = 0, flat_cases = 0;

    for (int trial = 0; trial < 80; ++trial) {
        int n = 5 + static_cast<int>(rng() % 2);
        MarkedMetricTree t = oracles::random_metric_tree(n, rng, grid);
        int f = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));

        auto adj = t.tree.adjacency();
        int vf = t.tree.leaf_vertex[static_cast<size_t>(f - 1)];
        int stem = adj[static_cast<size_t>(vf)][0];
        int partner = 0;
        Rational d0;
        if (adj[static_cast<size_t>(stem)].size() == 3) {
            std::vector<int> leaves, internals;
            for (int w : adj[static_cast<size_t>(stem)]) {
                if (w == vf) continue;
                (t.tree.is_leaf_vertex(w) ? leaves : internals).push_back(w);
            }
            if (leaves.size() == 1 && internals.size() == 1) {
                partner = t.tree.leaf_at(leaves[0]);
                d0 = t.length_of(stem, internals[0]);
            }
        }
        (partner != 0 ? cherry_cases : flat_cases)++;

        DistanceMatrix before = distance_matrix(t);
        DistanceMatrix after = distance_matrix(forget_leaf(t, f));
        for (int k = 1; k <= n; ++k) {
            if (k == f) continue;
            for (int l = k + 1; l <= n; ++l) {
                if (l == f) continue;
                Rational want = before.at(k, l);
                if (k == partner || l == partner) want = want - d0;
                CHECK(after.at(relabel(k, f), relabel(l, f)) == want);
            }
        }
    }
    CHECK(cherry_cases > 0);   // both regimes actually exercised
    CHECK(flat_cases > 0);
}

TEST_CASE("cherry orders list the subtrees hanging off the spine") {
    SUBCASE("caterpillar: singleton blocks in path order") {
        PartialLeafOrder o = cherry_order(caterpillar_15_2_34().tree, 1, 4);
        CHECK(o.i == 1);
        CHECK(o.j == 4);
        CHECK(o.blocks == std::vector<std::vector<int>>{{5}, {2}, {3}});
    }

    SUBCASE("star: a single fully-tied block") {
        PartialLeafOrder o = cherry_order(tree_from_splits(5, {}), 1, 4);
        CHECK(o.blocks == std::vector<std::vector<int>>{{2, 3, 5}});
    }

    SUBCASE("constructed orders always pass their own check") {
        for (int n = 4; n <= 6; ++n)
            for (const auto& set : enumerate_stable_split_sets(n)) {
                MarkedTree t = tree_from_splits(n, set);
                for (int i = 1; i <= n; ++i)
                    for (int j = i + 1; j <= n; ++j)
                        CHECK(check_cherry_property(t, i, j, cherry_order(t, i, j)));
            }
    }

    SUBCASE("double cherry seen from the far pair") {
        MarkedTree t = tree_from_splits(6, {Split::of_leaves({1, 2}, 6),
                                            Split::of_leaves({3, 4}, 6),
                                            Split::of_leaves({1, 2, 3, 4}, 6)});
        PartialLeafOrder o = cherry_order(t, 5, 6);
        CHECK(o.blocks == std::vector<std::vector<int>>{{1, 2, 3, 4}});

        PartialLeafOrder swapped{5, 6, {{2, 1, 4, 3}}};   // within-cherry swaps are fine
        CHECK(check_cherry_property(t, 5, 6, swapped));
        PartialLeafOrder reversed{5, 6, {{4, 3, 2, 1}}};
        CHECK(check_cherry_property(t, 5, 6, reversed));

        PartialLeafOrder interleaved{5, 6, {{1, 3, 2, 4}}};   // 1 < 3 < 2 breaks {1,2}
        CHECK(!check_cherry_property(t, 5, 6, interleaved));
        PartialLeafOrder split_up{5, 6, {{1, 2}, {3, 4}}};    // wrong block structure
        CHECK(!check_cherry_property(t, 5, 6, split_up));
        PartialLeafOrder missing{5, 6, {{1, 2, 3}}};
        CHECK(!check_cherry_property(t, 5, 6, missing));
        PartialLeafOrder wrong_ends{1, 6, {{2, 3, 4, 5}}};
        CHECK(!check_cherry_property(t, 5, 6, wrong_ends));
    }

    CHECK_THROWS_AS(cherry_order(tree_from_splits(5, {}), 2, 2), std::invalid_argument);
}

TEST_CASE("split lengths round trip through tree construction") {
    std::mt19937_64 rng(19);
    std::vector<Rational> grid{Q(1), Q(1, 2), Q(7, 3)};
    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        MarkedMetricTree t = oracles::random_metric_tree(n, rng, grid);
        MarkedMetricTree back = metric_tree_from_splits(n, split_lengths(t));
        CHECK(iso_equal(t.tree, back.tree));
        CHECK(split_lengths(back) == split_lengths(t));
    }
}

TEST_CASE("metric trees survive a JSON round trip") {
    MarkedMetricTree t = caterpillar_15_2_34();
    json j = to_json(t);
    CHECK(j["n"] == 5);
    CHECK(j["leaf_labels"].size() == 5);
    MarkedMetricTree back = tree_from_json(json::parse(j.dump()));
    CHECK(iso_equal(t.tree, back.tree));
    CHECK(split_lengths(back) == split_lengths(t));

    SUBCASE("star with no lengths") {
        MarkedMetricTree star{tree_from_splits(4, {}), {}};
        MarkedMetricTree back2 = tree_from_json(to_json(star));
        CHECK(iso_equal(star.tree, back2.tree));
        CHECK(back2.lengths.empty());
    }
}
