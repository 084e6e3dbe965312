#include "m0n/tree.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace m0n {

namespace {

std::pair<int, int> norm_edge(int u, int v) {
    return {std::min(u, v), std::max(u, v)};
}

} // namespace

std::vector<std::vector<int>> MarkedTree::adjacency() const {
    std::vector<std::vector<int>> adj(vertex_count);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

std::vector<int> MarkedTree::degrees() const {
    std::vector<int> deg(vertex_count, 0);
    for (auto [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

bool MarkedTree::is_leaf_vertex(int v) const {
    return std::find(leaf_vertex.begin(), leaf_vertex.end(), v) != leaf_vertex.end();
}

int MarkedTree::leaf_at(int v) const {
    for (int i = 0; i < n; ++i)
        if (leaf_vertex[i] == v) return i + 1;
    return 0;
}

void MarkedTree::validate() const {
    if (n < 3) throw std::invalid_argument("tree: fewer than three leaves");
    if (static_cast<int>(leaf_vertex.size()) != n)
        throw std::invalid_argument("tree: leaf label map has wrong size");
    if (static_cast<int>(edges.size()) != vertex_count - 1)
        throw std::invalid_argument("tree: edge count does not match vertex count");

    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
            throw std::invalid_argument("tree: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("tree: self loop");
        if (!seen.insert(norm_edge(u, v)).second)
            throw std::invalid_argument("tree: duplicate edge");
    }

    auto adj = adjacency();
    std::vector<char> visited(vertex_count, 0);
    std::vector<int> stack{0};
    visited[0] = 1;
    int found = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!visited[w]) {
                visited[w] = 1;
                ++found;
                stack.push_back(w);
            }
    }
    if (found != vertex_count) throw std::invalid_argument("tree: not connected");

    auto deg = degrees();
    std::set<int> leaf_set(leaf_vertex.begin(), leaf_vertex.end());
    if (static_cast<int>(leaf_set.size()) != n)
        throw std::invalid_argument("tree: repeated leaf vertex");
    for (int v : leaf_vertex)
        if (deg[v] != 1) throw std::invalid_argument("tree: marked leaf has degree != 1");
    for (int v = 0; v < vertex_count; ++v) {
        if (leaf_set.count(v)) continue;
        if (deg[v] < 3)
            throw std::invalid_argument("tree: internal vertex of degree < 3 (unstable)");
    }
}

const Rational& MarkedMetricTree::length_of(int u, int v) const {
    auto it = lengths.find(norm_edge(u, v));
    return it == lengths.end() ? zero_rational() : it->second;
}

void MarkedMetricTree::validate() const {
    tree.validate();
    std::set<std::pair<int, int>> internal;
    for (auto [u, v] : tree.edges)
        if (!tree.is_leaf_vertex(u) && !tree.is_leaf_vertex(v))
            internal.insert(norm_edge(u, v));
    for (const auto& [e, len] : lengths) {
        if (!internal.count(e))
            throw std::invalid_argument("metric tree: length on a non-internal edge");
        if (!len.is_positive())
            throw std::invalid_argument("metric tree: non-positive edge length");
    }
    for (const auto& e : internal)
        if (!lengths.count(e))
            throw std::invalid_argument("metric tree: internal edge without length");
}

namespace {

/// Leaves on the `root` side of the edge (root, other), as a bitmask.
std::uint32_t leaf_mask_of_side(const MarkedTree& t, const std::vector<std::vector<int>>& adj,
                                int root, int other) {
    std::uint32_t mask = 0;
    std::vector<int> stack{root};
    std::vector<char> visited(t.vertex_count, 0);
    visited[root] = visited[other] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (int leaf = t.leaf_at(v); leaf != 0) mask |= Split::bit(leaf);
        for (int w : adj[v])
            if (!visited[w]) {
                visited[w] = 1;
                stack.push_back(w);
            }
    }
    return mask;
}

std::vector<std::pair<std::pair<int, int>, Split>> edge_splits(const MarkedTree& t) {
    auto adj = t.adjacency();
    std::vector<std::pair<std::pair<int, int>, Split>> out;
    for (auto [u, v] : t.edges) {
        if (t.is_leaf_vertex(u) || t.is_leaf_vertex(v)) continue;
        out.emplace_back(norm_edge(u, v), Split(leaf_mask_of_side(t, adj, u, v), t.n));
    }
    return out;
}

} // namespace

std::vector<Split> splits_of_tree(const MarkedTree& t) {
    std::vector<Split> out;
    for (auto& [edge, split] : edge_splits(t)) out.push_back(split);
    std::sort(out.begin(), out.end());
    return out;
}

CanonicalKey canonical_form(const MarkedTree& t) {
    CanonicalKey key{static_cast<std::uint32_t>(t.n)};
    for (const Split& s : splits_of_tree(t)) key.push_back(s.side_mask());
    std::sort(key.begin() + 1, key.end());
    return key;
}

bool iso_equal(const MarkedTree& a, const MarkedTree& b) {
    return canonical_form(a) == canonical_form(b);
}

MarkedTree tree_from_splits(int n, std::vector<Split> splits) {
    if (n < 3) throw std::invalid_argument("tree_from_splits: n < 3");
    for (const Split& s : splits)
        if (s.n() != n) throw std::invalid_argument("tree_from_splits: split leaf count mismatch");
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
    for (size_t a = 0; a < splits.size(); ++a)
        for (size_t b = a + 1; b < splits.size(); ++b)
            if (!splits[a].compatible(splits[b]))
                throw incompatible_splits_error(splits[a], splits[b]);

    // Canonical sides exclude leaf n, so compatibility makes them a laminar
    // family over [n-1]; the tree is its Hasse forest hung from a root that
    // carries leaf n.
    std::vector<std::uint32_t> sides;
    for (const Split& s : splits) sides.push_back(s.side_mask());
    std::sort(sides.begin(), sides.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa > pb : a < b;
    });

    MarkedTree t;
    t.n = n;
    t.leaf_vertex.resize(n);
    for (int leaf = 1; leaf <= n; ++leaf) t.leaf_vertex[leaf - 1] = leaf - 1;
    const int root = n;
    t.vertex_count = n + 1 + static_cast<int>(sides.size());

    auto vertex_of_side = [&](size_t idx) { return root + 1 + static_cast<int>(idx); };
    auto parent_of = [&](size_t idx) {
        // Minimal strict superset; sides are sorted by decreasing size, so it
        // is the last superset seen before idx.
        int best = -1;
        for (size_t p = 0; p < idx; ++p)
            if ((sides[p] & sides[idx]) == sides[idx] && sides[p] != sides[idx]) best = static_cast<int>(p);
        return best < 0 ? root : vertex_of_side(static_cast<size_t>(best));
    };

    for (size_t idx = 0; idx < sides.size(); ++idx)
        t.edges.push_back(norm_edge(vertex_of_side(idx), parent_of(idx)));

    for (int leaf = 1; leaf < n; ++leaf) {
        int attach = root;
        for (size_t idx = 0; idx < sides.size(); ++idx)   // smallest set containing leaf wins
            if (sides[idx] & Split::bit(leaf)) attach = vertex_of_side(idx);
        t.edges.push_back(norm_edge(leaf - 1, attach));
    }
    t.edges.push_back(norm_edge(n - 1, root));
    std::sort(t.edges.begin(), t.edges.end());
    t.validate();
    return t;
}

MarkedMetricTree metric_tree_from_splits(int n,
                                         const std::vector<std::pair<Split, Rational>>& splits) {
    std::vector<Split> bare;
    for (auto& [s, len] : splits) bare.push_back(s);
    MarkedMetricTree out;
    out.tree = tree_from_splits(n, bare);
    for (auto& [edge, split] : edge_splits(out.tree)) {
        auto it = std::find_if(splits.begin(), splits.end(),
                               [&](const auto& p) { return p.first == split; });
        if (it == splits.end())
            throw std::logic_error("metric_tree_from_splits: edge without source split");
        out.lengths[edge] = it->second;
    }
    out.validate();
    return out;
}

std::vector<std::vector<Split>> enumerate_stable_split_sets(int n) {
    if (n < 3 || n > 9)
        throw std::invalid_argument("enumerate: n out of the supported range 3..9");
    std::vector<std::vector<Split>> out;
    if (n == 3) {
        out.push_back({});
        return out;
    }

    std::vector<Split> all;
    std::uint32_t top = 1u << (n - 1);
    for (std::uint32_t m = 0; m < top; ++m) {
        int sz = std::popcount(m);
        if (sz >= 2 && sz <= n - 2) all.emplace_back(m, n);
    }
    std::sort(all.begin(), all.end());

    const int k = static_cast<int>(all.size());
    std::vector<std::bitset<128>> compat(k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b && all[a].compatible(all[b])) compat[a].set(b);

    std::vector<int> chosen;
    std::function<void(std::bitset<128>, int)> rec = [&](std::bitset<128> avail, int from) {
        std::vector<Split> set;
        for (int idx : chosen) set.push_back(all[idx]);
        out.push_back(std::move(set));
        for (int i = from; i < k; ++i) {
            if (!avail.test(i)) continue;
            chosen.push_back(i);
            rec(avail & compat[i], i + 1);
            chosen.pop_back();
        }
    };
    rec(~std::bitset<128>{} >> (128 - k), 0);

    std::sort(out.begin(), out.end(), [n](const auto& a, const auto& b) {
        CanonicalKey ka{static_cast<std::uint32_t>(n)}, kb{static_cast<std::uint32_t>(n)};
        for (const Split& s : a) ka.push_back(s.side_mask());
        for (const Split& s : b) kb.push_back(s.side_mask());
        std::sort(ka.begin() + 1, ka.end());
        std::sort(kb.begin() + 1, kb.end());
        return ka < kb;
    });
    return out;
}

std::vector<MarkedTree> enumerate_stable_trees(int n) {
    std::vector<MarkedTree> out;
    for (auto& set : enumerate_stable_split_sets(n)) out.push_back(tree_from_splits(n, set));
    return out;
}

int DistanceMatrix::index(int k, int l, int n) {
    if (k > l) std::swap(k, l);
    if (k < 1 || l > n || k == l) throw std::invalid_argument("distance: bad leaf pair");
    return (k - 1) * n - k * (k - 1) / 2 + (l - k - 1);
}

const Rational& DistanceMatrix::at(int k, int l) const {
    if (k == l) return zero_rational();
    return d[static_cast<size_t>(index(k, l, n))];
}

Rational& DistanceMatrix::at(int k, int l) {
    return d[static_cast<size_t>(index(k, l, n))];
}

DistanceMatrix DistanceMatrix::zero(int n) {
    return DistanceMatrix{n, std::vector<Rational>(static_cast<size_t>(n) * (n - 1) / 2)};
}

DistanceMatrix distance_matrix(const MarkedMetricTree& t) {
    t.validate();
    const int n = t.tree.n;
    auto adj = t.tree.adjacency();
    DistanceMatrix out = DistanceMatrix::zero(n);
    for (int a = 1; a <= n; ++a) {
        std::vector<char> visited(t.tree.vertex_count, 0);
        std::vector<std::pair<int, Rational>> stack{{t.tree.leaf_vertex[a - 1], Rational(0)}};
        visited[t.tree.leaf_vertex[a - 1]] = 1;
        while (!stack.empty()) {
            auto [v, dist] = stack.back();
            stack.pop_back();
            if (int leaf = t.tree.leaf_at(v); leaf > a) out.at(a, leaf) = dist;
            for (int w : adj[v])
                if (!visited[w]) {
                    visited[w] = 1;
                    stack.emplace_back(w, dist + t.length_of(v, w));
                }
        }
    }
    return out;
}

bool four_point_check(const DistanceMatrix& d) {
    const int n = d.n;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l) {
                    Rational s1 = d.at(i, j) + d.at(k, l);
                    Rational s2 = d.at(i, k) + d.at(j, l);
                    Rational s3 = d.at(i, l) + d.at(j, k);
                    Rational m = std::max({s1, s2, s3});
                    int hits = (s1 == m) + (s2 == m) + (s3 == m);
                    if (hits < 2) return false;
                }
    return true;
}

MarkedMetricTree forget_leaf(const MarkedMetricTree& t, int leaf) {
    t.validate();
    const int n = t.tree.n;
    if (n < 4) throw std::invalid_argument("forget_leaf: result would be unstable (n < 4)");
    if (leaf < 1 || leaf > n) throw std::invalid_argument("forget_leaf: leaf out of range");

    const int vf = t.tree.leaf_vertex[leaf - 1];
    auto adj = t.tree.adjacency();
    const int w = adj[vf][0];

    std::map<std::pair<int, int>, Rational> lengths = t.lengths;
    std::set<std::pair<int, int>> edges(t.tree.edges.begin(), t.tree.edges.end());
    auto drop_edge = [&](int u, int v) {
        edges.erase(norm_edge(u, v));
        lengths.erase(norm_edge(u, v));
    };
    drop_edge(vf, w);

    bool suppress = adj[w].size() == 3;   // degree 2 after losing the leaf
    if (suppress) {
        int x = -1, y = -1;
        for (int u : adj[w])
            if (u != vf) (x < 0 ? x : y) = u;
        Rational merged = t.length_of(w, x) + t.length_of(w, y);
        drop_edge(w, x);
        drop_edge(w, y);
        edges.insert(norm_edge(x, y));
        if (!t.tree.is_leaf_vertex(x) && !t.tree.is_leaf_vertex(y))
            lengths[norm_edge(x, y)] = merged;   // leaf edges renormalize to zero
    }

    std::vector<int> remap(t.tree.vertex_count, -1);
    int next = 0;
    for (int v = 0; v < t.tree.vertex_count; ++v) {
        if (v == vf || (suppress && v == w)) continue;
        remap[v] = next++;
    }

    MarkedMetricTree out;
    out.tree.n = n - 1;
    out.tree.vertex_count = next;
    for (auto [u, v] : edges) out.tree.edges.push_back(norm_edge(remap[u], remap[v]));
    std::sort(out.tree.edges.begin(), out.tree.edges.end());
    out.tree.leaf_vertex.resize(n - 1);
    for (int g = 1; g <= n; ++g) {
        if (g == leaf) continue;
        out.tree.leaf_vertex[(g > leaf ? g - 1 : g) - 1] = remap[t.tree.leaf_vertex[g - 1]];
    }
    for (const auto& [e, len] : lengths)
        out.lengths[norm_edge(remap[e.first], remap[e.second])] = len;
    out.validate();
    return out;
}

namespace {

std::vector<int> path_between(const MarkedTree& t, int from, int to) {
    auto adj = t.adjacency();
    std::vector<int> parent(t.vertex_count, -1);
    std::vector<int> queue{from};
    parent[from] = from;
    for (size_t q = 0; q < queue.size(); ++q) {
        int v = queue[q];
        for (int w : adj[v])
            if (parent[w] < 0) {
                parent[w] = v;
                queue.push_back(w);
            }
    }
    std::vector<int> path;
    for (int v = to; v != from; v = parent[v]) path.push_back(v);
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
}

/// Leaves of the subtree through `branch`, seen from `at`, in a clade-contiguous
/// order (branches visited by their minimal leaf).
std::vector<int> clade_leaves(const MarkedTree& t, const std::vector<std::vector<int>>& adj,
                              int at, int branch) {
    if (int leaf = t.leaf_at(branch); leaf != 0) return {leaf};
    std::vector<std::vector<int>> sublists;
    for (int w : adj[branch])
        if (w != at) sublists.push_back(clade_leaves(t, adj, branch, w));
    std::sort(sublists.begin(), sublists.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<int> out;
    for (auto& sl : sublists) out.insert(out.end(), sl.begin(), sl.end());
    return out;
}

std::vector<std::vector<int>> hanging_blocks(const MarkedTree& t, int i, int j) {
    auto adj = t.adjacency();
    auto path = path_between(t, t.leaf_vertex[i - 1], t.leaf_vertex[j - 1]);
    std::vector<std::vector<int>> blocks;
    for (size_t p = 1; p + 1 < path.size(); ++p) {
        int v = path[p];
        std::vector<std::vector<int>> branches;
        for (int w : adj[v])
            if (w != path[p - 1] && w != path[p + 1])
                branches.push_back(clade_leaves(t, adj, v, w));
        std::sort(branches.begin(), branches.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        std::vector<int> block;
        for (auto& br : branches) block.insert(block.end(), br.begin(), br.end());
        blocks.push_back(std::move(block));
    }
    return blocks;
}

} // namespace

bool check_cherry_property(const MarkedTree& t, int i, int j, const PartialLeafOrder& order) {
    t.validate();
    if (i == j || i < 1 || j < 1 || i > t.n || j > t.n)
        throw std::invalid_argument("cherry order: bad endpoints");
    if (order.i != i || order.j != j) return false;

    std::uint32_t expected = Split::full_mask(t.n) & ~Split::bit(i) & ~Split::bit(j);
    std::uint32_t got = 0;
    for (const auto& block : order.blocks)
        for (int leaf : block) {
            if (leaf < 1 || leaf > t.n) return false;
            if (got & Split::bit(leaf)) return false;   // repeated leaf
            got |= Split::bit(leaf);
        }
    if (got != expected) return false;

    // Blocks must be exactly the leaf sets hanging off the i-j path; leaves of
    // different path vertices stay incomparable, leaves of one vertex are
    // totally ordered.
    std::set<std::uint32_t> path_sets;
    for (const auto& block : hanging_blocks(t, i, j)) {
        std::uint32_t m = 0;
        for (int leaf : block) m |= Split::bit(leaf);
        path_sets.insert(m);
    }
    std::set<std::uint32_t> given_sets;
    for (const auto& block : order.blocks) {
        std::uint32_t m = 0;
        for (int leaf : block) m |= Split::bit(leaf);
        given_sets.insert(m);
    }
    if (path_sets != given_sets) return false;

    // Comparable triple k < l < v: the quartet {i,k,l,v} must not resolve with
    // k and v together (the only pairing leaving neither {k,l} nor {l,v} a
    // cherry; unresolved quartets pass).
    auto splits = splits_of_tree(t);
    for (const auto& block : order.blocks)
        for (size_t a = 0; a < block.size(); ++a)
            for (size_t b = a + 1; b < block.size(); ++b)
                for (size_t c = b + 1; c < block.size(); ++c) {
                    int k = block[a], l = block[b], v = block[c];
                    for (const Split& s : splits) {
                        bool sk = s.side_contains(k), sl = s.side_contains(l);
                        bool sv = s.side_contains(v), si = s.side_contains(i);
                        if (sk == sv && si == sl && sk != si) return false;
                    }
                }
    return true;
}

PartialLeafOrder cherry_order(const MarkedTree& t, int i, int j) {
    t.validate();
    if (i == j || i < 1 || j < 1 || i > t.n || j > t.n)
        throw std::invalid_argument("cherry order: bad endpoints");
    PartialLeafOrder order{i, j, hanging_blocks(t, i, j)};
    if (check_cherry_property(t, i, j, order)) return order;

    // The clade-contiguous construction satisfies the property by design; the
    // exhaustive fallback guards against a regression there.
    std::function<bool(size_t)> search = [&](size_t b) {
        if (b == order.blocks.size()) return check_cherry_property(t, i, j, order);
        std::vector<int> block = order.blocks[b];
        std::sort(block.begin(), block.end());
        do {
            order.blocks[b] = block;
            if (search(b + 1)) return true;
        } while (std::next_permutation(block.begin(), block.end()));
        return false;
    };
    if (!search(0)) throw std::logic_error("cherry_order: no valid order exists");
    return order;
}

std::vector<std::pair<Split, Rational>> split_lengths(const MarkedMetricTree& t) {
    std::vector<std::pair<Split, Rational>> out;
    for (auto& [edge, split] : edge_splits(t.tree)) {
        auto it = t.lengths.find(edge);
        if (it == t.lengths.end())
            throw std::invalid_argument("metric tree: internal edge without length");
        out.emplace_back(split, it->second);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

} // namespace m0n
