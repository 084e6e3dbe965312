#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "m0n/rational.hpp"
#include "m0n/split.hpp"

namespace m0n {

/// Stable n-marked tree of genus zero: every internal vertex has degree >= 3,
/// leaves carry the labels 1..n. Vertex ids are arbitrary but contiguous 0..V-1.
struct MarkedTree {
    int n = 0;
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;   // stored (min, max)
    std::vector<int> leaf_vertex;             // leaf_vertex[i-1] = vertex of leaf i

    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> degrees() const;
    bool is_leaf_vertex(int v) const;
    int leaf_at(int v) const;                 // label at leaf vertex v, else 0

    /// Throws std::invalid_argument naming the violated condition.
    void validate() const;
};

/// Tree plus positive rational lengths on the internal edges. Leaf edges carry
/// length zero and do not appear in the map (the quotient by the mark-sum
/// lattice absorbs them).
struct MarkedMetricTree {
    MarkedTree tree;
    std::map<std::pair<int, int>, Rational> lengths;   // keys (min, max)

    void validate() const;
    const Rational& length_of(int u, int v) const;     // zero_rational for leaf edges
};

/// Isomorphism invariant: {n} followed by the sorted canonical split masks.
/// Two stable trees are isomorphic over their markings iff the keys agree.
using CanonicalKey = std::vector<std::uint32_t>;

CanonicalKey canonical_form(const MarkedTree& t);
bool iso_equal(const MarkedTree& a, const MarkedTree& b);

std::vector<Split> splits_of_tree(const MarkedTree& t);

/// Unique stable tree whose internal edges realize exactly the given splits.
/// Throws incompatible_splits_error naming the first bad pair.
MarkedTree tree_from_splits(int n, std::vector<Split> splits);

/// Same, with a length attached to each split's edge.
MarkedMetricTree metric_tree_from_splits(int n, const std::vector<std::pair<Split, Rational>>& splits);

/// All pairwise-compatible split sets on [n] (equivalently: all stable types),
/// sorted by canonical key. 3 <= n <= 9.
std::vector<std::vector<Split>> enumerate_stable_split_sets(int n);
std::vector<MarkedTree> enumerate_stable_trees(int n);

struct DistanceMatrix {
    int n = 0;
    std::vector<Rational> d;   // upper triangle, pair_index order

    static int index(int k, int l, int n);
    const Rational& at(int k, int l) const;
    Rational& at(int k, int l);
    static DistanceMatrix zero(int n);
};

/// d(k,l) = sum of internal edge lengths on the k-l path (leaf edges are zero).
DistanceMatrix distance_matrix(const MarkedMetricTree& t);

/// Four-point condition: for every quadruple the maximum of
/// d(i,j)+d(k,l), d(i,k)+d(j,l), d(i,l)+d(j,k) is attained at least twice.
bool four_point_check(const DistanceMatrix& d);

/// Delete the given leaf, suppress the resulting degree-2 vertex (summing
/// internal lengths; a merge into a leaf edge renormalizes to zero), and
/// relabel the remaining leaves order-preserving onto [n-1].
MarkedMetricTree forget_leaf(const MarkedMetricTree& t, int leaf);

/// Partial order on [n] \ {i,j}: one totally ordered block per vertex of the
/// i-j path (the leaves hanging off the path there); blocks listed in path
/// order from i to j; leaves of different blocks are incomparable.
struct PartialLeafOrder {
    int i = 0, j = 0;
    std::vector<std::vector<int>> blocks;
};

PartialLeafOrder cherry_order(const MarkedTree& t, int i, int j);

/// True iff the order's blocks match the hanging subtrees of the i-j path and
/// every comparable triple k < l < v has {k,l} or {l,v} as a cherry of the
/// quartet {i,k,l,v} (unresolved quartets pass).
bool check_cherry_property(const MarkedTree& t, int i, int j, const PartialLeafOrder& order);

/// Lengths keyed by split, sorted canonically.
std::vector<std::pair<Split, Rational>> split_lengths(const MarkedMetricTree& t);

inline const Rational& zero_rational() {
    static const Rational z;
    return z;
}

} // namespace m0n
