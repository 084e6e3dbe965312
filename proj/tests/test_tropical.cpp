#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "m0n/json_io.hpp"
#include "m0n/trop.hpp"
#include "oracles.hpp"

using namespace m0n;

namespace {

Rational Q(long long p, long long q = 1) { return Rational(p, q); }

MarkedMetricTree one_edge_tree(const Rational& l) {
    return metric_tree_from_splits(4, {{Split::of_leaves({1, 2}, 4), l}});
}

MarkedMetricTree caterpillar_15_2_34(const Rational& l15, const Rational& l34) {
    return metric_tree_from_splits(
        5, {{Split::of_leaves({1, 5}, 5), l15}, {Split::of_leaves({3, 4}, 5), l34}});
}

std::vector<Rational> random_marks(int n, std::mt19937_64& rng) {
    std::vector<Rational> a;
    for (int k = 0; k < n; ++k)
        a.push_back(Rational(static_cast<long long>(rng() % 19) - 9,
                             static_cast<long long>(rng() % 4) + 1));
    return a;
}

} // namespace

TEST_CASE("pair indexing walks the upper triangle") {
    CHECK(pair_index(1, 2, 5) == 0);
    CHECK(pair_index(1, 5, 5) == 3);
    CHECK(pair_index(2, 3, 5) == 4);
    CHECK(pair_index(4, 5, 5) == 9);
    CHECK(pair_index(5, 4, 5) == 9);   // unordered
    for (int idx = 0; idx < 10; ++idx) {
        auto [k, l] = pair_of_index(idx, 5);
        CHECK(pair_index(k, l, 5) == idx);
        CHECK(k < l);
    }
    CHECK(pair_symbol(3, 1) == "u13");
    CHECK_THROWS_AS(pair_of_index(10, 5), std::invalid_argument);
}

TEST_CASE("the distance representative is minus half the distances") {
    MarkedMetricTree t = one_edge_tree(Q(2));
    TropPoint x = plucker_vector(t);
    CHECK(!x.gauge);
    CHECK(x.at(1, 2) == Q(0));
    CHECK(x.at(3, 4) == Q(0));
    CHECK(x.at(1, 3) == Q(-1));
    CHECK(x.at(2, 4) == Q(-1));

    TropPoint star = plucker_vector({tree_from_splits(4, {}), {}});
    CHECK(std::all_of(star.coords.begin(), star.coords.end(),
                      [](const Rational& c) { return c.is_zero(); }));
}

TEST_CASE("gauge fixing kills the mark-sum directions") {
    std::mt19937_64 rng(23);
    std::vector<Rational> grid{Q(1), Q(1, 2), Q(7, 3)};

    SUBCASE("pivot coordinates vanish and the map is idempotent") {
        for (int trial = 0; trial < 20; ++trial) {
            int n = 4 + static_cast<int>(rng() % 4);
            TropPoint x = plucker_vector(oracles::random_metric_tree(n, rng, grid));
            TropPoint g = gauge_fix(x);
            CHECK(g.gauge);
            for (int j = 2; j <= n; ++j) CHECK(g.at(1, j).is_zero());
            CHECK(g.at(2, 3).is_zero());
            CHECK(gauge_fix(g).coords == g.coords);
        }
    }

    SUBCASE("pure mark-sum vectors collapse to zero") {
        TropPoint zero{5, std::vector<Rational>(10), false};
        for (int trial = 0; trial < 10; ++trial) {
            TropPoint lm = l_shift(zero, random_marks(5, rng));
            TropPoint g = gauge_fix(lm);
            CHECK(std::all_of(g.coords.begin(), g.coords.end(),
                              [](const Rational& c) { return c.is_zero(); }));
        }
    }

    SUBCASE("invariance under arbitrary shifts, one hundred draws") {
        for (int trial = 0; trial < 100; ++trial) {
            int n = 4 + static_cast<int>(rng() % 3);
            TropPoint x = plucker_vector(oracles::random_metric_tree(n, rng, grid));
            TropPoint shifted = l_shift(x, random_marks(n, rng));
            CHECK(gauge_fix(shifted).coords == gauge_fix(x).coords);
        }
    }

    CHECK_THROWS_AS(l_shift(TropPoint{4, std::vector<Rational>(6), false}, {Q(1)}),
                    std::invalid_argument);
}

TEST_CASE("the three resolved quadrangle trees embed to distinct points") {
    Rational l = Q(1);
    TropPoint g1 = gauge_fix(plucker_vector(one_edge_tree(l)));
    TropPoint g2 = gauge_fix(plucker_vector(
        metric_tree_from_splits(4, {{Split::of_leaves({1, 3}, 4), l}})));
    TropPoint g3 = gauge_fix(plucker_vector(
        metric_tree_from_splits(4, {{Split::of_leaves({1, 4}, 4), l}})));

    CHECK(g1.at(2, 4) == Q(0));
    CHECK(g1.at(3, 4) == l);
    CHECK(g2.at(2, 4) == l);
    CHECK(g2.at(3, 4) == Q(0));
    CHECK(g3.at(2, 4) == -l);
    CHECK(g3.at(3, 4) == -l);

    SUBCASE("injectivity over all types and grid lengths, n <= 6") {
        std::vector<Rational> grid{Q(1), Q(1, 2)};
        for (int n = 4; n <= 6; ++n) {
            std::set<std::vector<Rational>> images;
            size_t points = 0;
            for (const auto& set : enumerate_stable_split_sets(n)) {
                std::vector<size_t> pick(set.size(), 0);
                while (true) {
                    std::vector<std::pair<Split, Rational>> weighted;
                    for (size_t s = 0; s < set.size(); ++s)
                        weighted.emplace_back(set[s], grid[pick[s]]);
                    images.insert(
                        gauge_fix(plucker_vector(metric_tree_from_splits(n, weighted))).coords);
                    ++points;
                    size_t s = 0;
                    while (s < pick.size() && ++pick[s] == grid.size()) pick[s++] = 0;
                    if (s == pick.size()) break;
                }
            }
            CHECK(images.size() == points);
        }
    }
}

TEST_CASE("caterpillar charts index the pairs through the base leaves") {
    IndexSet i14 = caterpillar_index_set(4, 1, 4);
    CHECK(i14.members == std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 4}, {3, 4}});

    IndexSet i14_5 = caterpillar_index_set(5, 1, 4);
    CHECK(i14_5.members ==
          std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 5}, {2, 4}, {3, 4}, {4, 5}});
    CHECK(i14_5.members.size() == 2 * (5 - 2));

    CHECK_THROWS_AS(caterpillar_index_set(5, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(caterpillar_index_set(5, 0, 3), std::invalid_argument);
}

TEST_CASE("chart projection pins the base coordinate to zero") {
    SUBCASE("one-edge quadrangle tree") {
        TropPoint x = plucker_vector(one_edge_tree(Q(1)));
        auto p = local_projection(x, caterpillar_index_set(4, 1, 4));
        REQUIRE(p.size() == 4);
        CHECK(p[0] == std::pair{std::pair{1, 2}, Q(1, 2)});
        CHECK(p[1] == std::pair{std::pair{1, 3}, Q(0)});
        CHECK(p[2] == std::pair{std::pair{2, 4}, Q(0)});
        CHECK(p[3] == std::pair{std::pair{3, 4}, Q(1, 2)});
    }

    SUBCASE("five-leaf caterpillar") {
        TropPoint x = plucker_vector(caterpillar_15_2_34(Q(1), Q(2)));
        auto p = local_projection(x, caterpillar_index_set(5, 1, 4));
        REQUIRE(p.size() == 6);
        CHECK(p[0].second == Q(1));        // 12: half of l34
        CHECK(p[1].second == Q(0));        // 13
        CHECK(p[2].second == Q(3, 2));     // 15: half of l15 + l34
        CHECK(p[3].second == Q(1, 2));     // 24: half of l15
        CHECK(p[4].second == Q(3, 2));     // 34
        CHECK(p[5].second == Q(0));        // 45
    }

    SUBCASE("star projects to zero") {
        TropPoint x = plucker_vector({tree_from_splits(5, {}), {}});
        for (auto& [kl, val] : local_projection(x, caterpillar_index_set(5, 2, 5)))
            CHECK(val.is_zero());
    }

    SUBCASE("gauge representatives are rejected") {
        TropPoint g = gauge_fix(plucker_vector(one_edge_tree(Q(1))));
        CHECK_THROWS_AS(local_projection(g, caterpillar_index_set(4, 1, 4)),
                        std::invalid_argument);
    }
}

TEST_CASE("the fan of stable types stratifies by split sets") {
    ConeComplex c4 = cone_complex(4);
    CHECK(c4.cones.size() == 4);
    CHECK(c4.maximal_cones().size() == 3);
    CHECK(c4.find({}) >= 0);
    CHECK(c4.cones[static_cast<size_t>(c4.find({}))].dim == 0);

    ConeComplex c5 = cone_complex(5);
    CHECK(c5.cones.size() == 26);
    CHECK(c5.maximal_cones().size() == 15);
    int rays = 0;
    for (const auto& cone : c5.cones) rays += cone.dim == 1;
    CHECK(rays == 10);

    SUBCASE("faces of a maximal cone are its subsets") {
        int idx = c5.find({Split::of_leaves({1, 5}, 5), Split::of_leaves({3, 4}, 5)});
        REQUIRE(idx >= 0);
        auto faces = c5.faces_of(idx);
        REQUIRE(faces.size() == 4);   // itself, two rays, the origin
        std::set<int> dims;
        for (int f : faces) dims.insert(c5.cones[static_cast<size_t>(f)].dim);
        CHECK(dims == std::set<int>{0, 1, 2});
    }

    CHECK(c5.find({Split::of_leaves({1, 2}, 5), Split::of_leaves({1, 3}, 5)}) == -1);
    CHECK(cone_complex(6).maximal_cones().size() == 105);
    CHECK_THROWS_AS(cone_complex(9), std::invalid_argument);
}

TEST_CASE("section weights measure distances against the base pair") {
    MarkedMetricTree t = one_edge_tree(Q(1));
    MonomialValuation w = section_valuation(t, 1, 4);
    CHECK(w.weight_of("u12") == Q(-1, 2));
    CHECK(w.weight_of("u13") == Q(0));
    CHECK(w.weight_of("u14") == Q(0));
    CHECK(w.weight_of("u24") == Q(0));
    CHECK(w.weight_of("u34") == Q(-1, 2));
    CHECK(cross_ratio_weight(w, 1, 4, 2, 3) == Q(1));   // the edge length

    SUBCASE("named cross-ratios of the five-leaf caterpillar") {
        Rational l15 = Q(1, 2), l34 = Q(7, 3);
        MonomialValuation v = section_valuation(caterpillar_15_2_34(l15, l34), 1, 4);
        CHECK(cross_ratio_weight(v, 1, 4, 2, 3) == l34);
        CHECK(cross_ratio_weight(v, 1, 4, 5, 3) == l15 + l34);
        CHECK(cross_ratio_weight(v, 1, 4, 5, 2) == l15);
        CHECK(cross_ratio_weight(v, 1, 4, 3, 2) == -l34);   // swapped slots invert
    }

    SUBCASE("base pair only shifts the weights") {
        std::mt19937_64 rng(29);
        std::vector<Rational> grid{Q(1), Q(1, 2), Q(7, 3)};
        for (int trial = 0; trial < 12; ++trial) {
            int n = 4 + static_cast<int>(rng() % 3);
            MarkedMetricTree r = oracles::random_metric_tree(n, rng, grid);
            MonomialValuation ref = section_valuation(r, 1, n);
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    MonomialValuation other = section_valuation(r, i, j);
                    Rational shift = other.weights[0] - ref.weights[0];
                    for (size_t c = 0; c < ref.weights.size(); ++c)
                        CHECK(other.weights[c] - ref.weights[c] == shift);
                    for (int k = 1; k <= n; ++k)
                        for (int l = k + 1; l <= n; ++l) {
                            if (k == i || l == j || k == j || l == i) continue;
                            CHECK(cross_ratio_weight(other, i, j, k, l) ==
                                  cross_ratio_weight(ref, i, j, k, l));
                        }
                }
        }
    }

    CHECK_THROWS_AS(section_valuation(t, 2, 2), std::invalid_argument);
}

TEST_CASE("cross-ratio weights reduce to a four-leaf distance balance") {
    std::mt19937_64 rng(31);
    std::vector<Rational> grid{Q(1), Q(1, 2), Q(7, 3)};
    for (int trial = 0; trial < 10; ++trial) {
        int n = 5 + static_cast<int>(rng() % 2);
        MarkedMetricTree t = oracles::random_metric_tree(n, rng, grid);
        DistanceMatrix d = distance_matrix(t);
        int bi = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        int bj = bi % n + 1;
        MonomialValuation w = section_valuation(t, bi, bj);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    for (int l = 1; l <= n; ++l) {
                        std::set<int> distinct{i, j, k, l};
                        if (distinct.size() != 4) continue;
                        Rational want =
                            (d.at(i, l) + d.at(j, k) - d.at(i, k) - d.at(j, l)) / Q(2);
                        CHECK(cross_ratio_weight(w, i, j, k, l) == want);
                    }
    }
}

TEST_CASE("tree weight vectors pass the quadruple consistency check") {
    std::mt19937_64 rng(37);
    std::vector<Rational> grid{Q(1), Q(1, 2), Q(7, 3)};
    for (int trial = 0; trial < 25; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        MarkedMetricTree t = oracles::random_metric_tree(n, rng, grid);
        CHECK(tropical_plucker_check(section_valuation(t, 1, n)));
    }

    MonomialValuation zero = section_valuation({tree_from_splits(4, {}), {}}, 1, 4);
    CHECK(tropical_plucker_check(zero));

    MonomialValuation lone = zero;
    lone.weights[0] = Q(1);   // a bare u12 bump balances nothing
    CHECK(!tropical_plucker_check(lone));

    MonomialValuation ragged = zero;
    ragged.alphabet.pop_back();
    ragged.weights.pop_back();
    CHECK_THROWS_AS(tropical_plucker_check(ragged), std::invalid_argument);
}

TEST_CASE("tropical points survive a JSON round trip") {
    TropPoint x = plucker_vector(caterpillar_15_2_34(Q(1), Q(7, 3)));
    json j = to_json(x);
    TropPoint back = trop_point_from_json(json::parse(j.dump()));
    CHECK(back.n == x.n);
    CHECK(back.gauge == x.gauge);
    CHECK(back.coords == x.coords);

    TropPoint g = gauge_fix(x);
    TropPoint gback = trop_point_from_json(to_json(g));
    CHECK(gback.gauge);
    CHECK(gback.coords == g.coords);
}
