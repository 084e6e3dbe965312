#include "m0n/skeleton.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "m0n/trop.hpp"

namespace m0n {

std::string BoundaryDivisor::kapranov_label() const {
    if (split.n() != 5) return "";
    std::uint32_t two = split.side_size() == 2 ? split.side_mask() : split.co_side_mask();
    std::vector<int> leaves;
    for (int l = 1; l <= 5; ++l)
        if (two & Split::bit(l)) leaves.push_back(l);
    if (leaves[1] == 5) return "E" + std::to_string(leaves[0]);
    int k = 0, l = 0;
    for (int c = 1; c <= 4; ++c)
        if (c != leaves[0] && c != leaves[1]) (k == 0 ? k : l) = c;
    return "E" + std::to_string(k) + std::to_string(l);
}

std::vector<BoundaryDivisor> boundary_divisors(int n) {
    if (n < 4) throw std::invalid_argument("boundary_divisors: n < 4");
    if (n > 31) throw std::invalid_argument("boundary_divisors: n too large");
    std::vector<BoundaryDivisor> out;
    std::uint32_t top = 1u << (n - 1);
    for (std::uint32_t m = 0; m < top; ++m) {
        int sz = std::popcount(m);
        if (sz >= 2 && sz <= n - 2) out.push_back({Split(m, n)});
    }
    std::sort(out.begin(), out.end(),
              [](const BoundaryDivisor& a, const BoundaryDivisor& b) { return a.split < b.split; });
    return out;
}

bool keel_intersects(const BoundaryDivisor& a, const BoundaryDivisor& b) {
    if (a.split.n() != b.split.n())
        throw std::invalid_argument("keel_intersects: mixed leaf counts");
    return a.split.compatible(b.split);
}

DivisorClassN5 kapranov_class(const BoundaryDivisor& d) {
    if (d.split.n() != 5) throw std::invalid_argument("kapranov_class: defined for n = 5 only");
    std::uint32_t two = d.split.side_size() == 2 ? d.split.side_mask() : d.split.co_side_mask();
    DivisorClassN5 c;
    if (two & Split::bit(5)) {
        for (int i = 1; i <= 4; ++i)
            if (two & Split::bit(i)) c.e[i - 1] = 1;   // the exceptional curve E_i
        return c;
    }
    c.h = 1;   // H - E_k - E_l over the two blown-up points away from the side
    for (int i = 1; i <= 4; ++i)
        if (!(two & Split::bit(i))) c.e[i - 1] = -1;
    return c;
}

int picard_pairing(const DivisorClassN5& a, const DivisorClassN5& b) {
    int p = a.h * b.h;
    for (int i = 0; i < 4; ++i) p -= a.e[i] * b.e[i];
    return p;
}

bool IntersectionGraph::adjacent(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edge_list.begin(), edge_list.end(), std::make_pair(a, b));
}

std::vector<int> IntersectionGraph::degree_sequence() const {
    std::vector<int> deg(nodes.size(), 0);
    for (auto [a, b] : edge_list) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

int IntersectionGraph::girth() const {
    const int v_count = static_cast<int>(nodes.size());
    std::vector<std::vector<int>> adj(v_count);
    for (auto [a, b] : edge_list) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int best = 0;
    for (int root = 0; root < v_count; ++root) {
        std::vector<int> dist(v_count, -1), parent(v_count, -1);
        std::vector<int> queue{root};
        dist[root] = 0;
        for (size_t q = 0; q < queue.size(); ++q) {
            int v = queue[q];
            for (int w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if (w != parent[v]) {
                    int cycle = dist[v] + dist[w] + 1;
                    if (best == 0 || cycle < best) best = cycle;
                }
            }
        }
    }
    return best;
}

IntersectionGraph intersection_graph(int n) {
    if (n < 4 || n > 8)
        throw std::invalid_argument("intersection_graph: n out of the supported range 4..8");
    IntersectionGraph g;
    g.n = n;
    g.nodes = boundary_divisors(n);
    for (size_t a = 0; a < g.nodes.size(); ++a)
        for (size_t b = a + 1; b < g.nodes.size(); ++b)
            if (keel_intersects(g.nodes[a], g.nodes[b]))
                g.edge_list.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return g;
}

std::string to_dot(const IntersectionGraph& g) {
    std::ostringstream os;
    os << "graph boundary_n" << g.n << " {\n";
    for (const BoundaryDivisor& d : g.nodes) {
        os << "  " << d.name();
        if (g.n == 5) os << " [label=\"" << d.kapranov_label() << "\"]";
        os << ";\n";
    }
    for (auto [a, b] : g.edge_list)
        os << "  " << g.nodes[a].name() << " -- " << g.nodes[b].name() << ";\n";
    os << "}\n";
    return os.str();
}

SkeletonPoint make_skeleton_point(int n, std::vector<std::pair<Split, Rational>> weighted_splits) {
    std::sort(weighted_splits.begin(), weighted_splits.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SkeletonPoint p;
    p.n = n;
    for (auto& [s, a] : weighted_splits) {
        if (s.n() != n) throw std::invalid_argument("skeleton point: split leaf count mismatch");
        if (a.is_negative()) throw std::invalid_argument("skeleton point: negative weight");
        if (!p.strata.empty() && p.strata.back() == s)
            throw std::invalid_argument("skeleton point: repeated split");
        p.strata.push_back(s);
        p.alpha.push_back(a);
    }
    for (size_t a = 0; a < p.strata.size(); ++a)
        for (size_t b = a + 1; b < p.strata.size(); ++b)
            if (!p.strata[a].compatible(p.strata[b]))
                throw incompatible_splits_error(p.strata[a], p.strata[b]);
    return p;
}

StratumCone StratumCone::face(const std::vector<Split>& keep) const {
    for (const Split& s : keep)
        if (std::find(splits.begin(), splits.end(), s) == splits.end())
            throw std::invalid_argument("stratum face: split not part of the stratum");
    StratumCone f;
    f.splits = keep;
    std::sort(f.splits.begin(), f.splits.end());
    f.dim = static_cast<int>(f.splits.size());
    return f;
}

StratumCone stratum_cone(const SkeletonPoint& p) {
    for (size_t a = 0; a < p.strata.size(); ++a)
        for (size_t b = a + 1; b < p.strata.size(); ++b)
            if (!p.strata[a].compatible(p.strata[b]))
                throw incompatible_splits_error(p.strata[a], p.strata[b]);
    return StratumCone{p.strata, static_cast<int>(p.strata.size())};
}

std::string CrossRatio::symbol() const {
    auto pair_str = [](int a, int b) { return pair_symbol(a, b); };
    std::string num1 = pair_str(i, l), num2 = pair_str(j, k);
    std::string den1 = pair_str(i, k), den2 = pair_str(j, l);
    if (num2 < num1) std::swap(num1, num2);
    if (den2 < den1) std::swap(den1, den2);
    return num1 + "." + num2 + "/" + den1 + "." + den2;
}

std::vector<std::pair<std::pair<int, int>, int>> CrossRatio::pair_exponents() const {
    auto norm = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    return {{norm(i, l), 1}, {norm(j, k), 1}, {norm(i, k), -1}, {norm(j, l), -1}};
}

namespace {

/// Minimal leaf in the component of `branch` when the edge (at, branch) is cut.
int min_leaf_through(const MarkedTree& t, const std::vector<std::vector<int>>& adj, int at,
                     int branch) {
    int best = t.n + 1;
    std::vector<int> stack{branch};
    std::vector<char> visited(static_cast<size_t>(t.vertex_count), 0);
    visited[static_cast<size_t>(at)] = 1;
    visited[static_cast<size_t>(branch)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (int leaf = t.leaf_at(v); leaf != 0) best = std::min(best, leaf);
        for (int w : adj[v])
            if (!visited[static_cast<size_t>(w)]) {
                visited[static_cast<size_t>(w)] = 1;
                stack.push_back(w);
            }
    }
    return best;
}

/// Does the component of `branch` (cutting the edge at-branch) contain `leaf`?
bool component_contains(const MarkedTree& t, const std::vector<std::vector<int>>& adj, int at,
                        int branch, int leaf) {
    std::vector<int> stack{branch};
    std::vector<char> visited(static_cast<size_t>(t.vertex_count), 0);
    visited[static_cast<size_t>(at)] = 1;
    visited[static_cast<size_t>(branch)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (t.leaf_at(v) == leaf) return true;
        for (int w : adj[v])
            if (!visited[static_cast<size_t>(w)]) {
                visited[static_cast<size_t>(w)] = 1;
                stack.push_back(w);
            }
    }
    return false;
}

/// Representatives (first, second) on one end of a split's edge: `first` and
/// `second` lie in different branches at `end`, so their paths meet exactly
/// there and the cross-ratio picks up this edge alone. `anchor` (a base leaf on
/// this side, or 0) claims the `first` slot when present.
std::pair<int, int> side_representatives(const MarkedTree& t,
                                         const std::vector<std::vector<int>>& adj, int end,
                                         int toward_other, int anchor) {
    std::vector<std::pair<int, int>> branch_minima;   // (min leaf, branch vertex)
    int anchor_branch = -1;
    for (int w : adj[end]) {
        if (w == toward_other) continue;
        branch_minima.emplace_back(min_leaf_through(t, adj, end, w), w);
        if (anchor != 0 && component_contains(t, adj, end, w, anchor))
            anchor_branch = w;
    }
    std::sort(branch_minima.begin(), branch_minima.end());
    if (anchor != 0) {
        for (auto [m, w] : branch_minima)
            if (w != anchor_branch) return {anchor, m};
        throw std::logic_error("side_representatives: no second branch");
    }
    return {branch_minima[0].first, branch_minima[1].first};
}

} // namespace

std::vector<CrossRatio> local_generators(const SkeletonPoint& p, int base_i, int base_j) {
    if (base_i == base_j || base_i < 1 || base_j < 1 || base_i > p.n || base_j > p.n)
        throw std::invalid_argument("local_generators: bad base pair");
    MarkedTree t = tree_from_splits(p.n, p.strata);
    auto adj = t.adjacency();

    // Locate each split's edge: the unique internal edge whose removal cuts the
    // leaves along the split.
    std::vector<CrossRatio> out;
    for (const Split& s : p.strata) {
        int x = -1, y = -1;   // x carries the canonical side
        for (auto [u, v] : t.edges) {
            if (t.is_leaf_vertex(u) || t.is_leaf_vertex(v)) continue;
            int probe = 0;
            for (int leaf = 1; leaf <= p.n; ++leaf)
                if (s.side_contains(leaf)) { probe = leaf; break; }
            bool u_side = component_contains(t, adj, v, u, probe);
            std::uint32_t mask = 0;
            for (int leaf = 1; leaf <= p.n; ++leaf) {
                bool in_u = component_contains(t, adj, v, u, leaf);
                if (in_u) mask |= Split::bit(leaf);
            }
            Split here(mask, p.n);
            if (here == s) {
                x = u_side ? u : v;
                y = u_side ? v : u;
                break;
            }
        }
        if (x < 0) throw std::logic_error("local_generators: split without edge");

        bool base_i_on_side = s.side_contains(base_i);
        bool base_j_on_side = s.side_contains(base_j);
        CrossRatio cr;
        if (base_i_on_side != base_j_on_side) {
            // The base pair is separated: keep (i, j) in their named slots.
            int side_end = base_i_on_side ? x : y;
            int co_end = base_i_on_side ? y : x;
            auto [i, k] = side_representatives(t, adj, side_end, co_end, base_i);
            auto [j, l] = side_representatives(t, adj, co_end, side_end, base_j);
            cr = CrossRatio{i, j, k, l};
        } else {
            auto [i, k] = side_representatives(t, adj, x, y, 0);
            auto [j, l] = side_representatives(t, adj, y, x, 0);
            cr = CrossRatio{i, j, k, l};
        }
        out.push_back(cr);
    }
    return out;
}

Rational SkeletonValuation::alpha_distance(int k, int l) const {
    Rational d;
    for (size_t s = 0; s < point.strata.size(); ++s)
        if (point.strata[s].separates(k, l)) d += point.alpha[s];
    return d;
}

Rational SkeletonValuation::cross_ratio_weight(int i, int j, int k, int l) const {
    return (alpha_distance(i, l) + alpha_distance(j, k) - alpha_distance(i, k) -
            alpha_distance(j, l)) /
           2;
}

SkeletonValuation skeleton_valuation(const SkeletonPoint& p) {
    SkeletonValuation v;
    v.point = p;
    v.generators = local_generators(p, 1, p.n);
    for (size_t s = 0; s < p.strata.size(); ++s) {
        v.weights.alphabet.push_back(v.generators[s].symbol());
        v.weights.weights.push_back(p.alpha[s]);
    }
    v.weights.alphabet.push_back("pi");
    v.weights.weights.push_back(MonomialValuation::pi_weight());
    v.weights.validate();
    return v;
}

MarkedMetricTree trop_of_skeleton_point(const SkeletonPoint& p) {
    std::vector<std::pair<Split, Rational>> weighted;
    for (size_t s = 0; s < p.strata.size(); ++s) {
        if (!p.alpha[s].is_positive()) throw degenerate_stratum_error(p.strata[s].name());
        weighted.emplace_back(p.strata[s], p.alpha[s]);
    }
    return metric_tree_from_splits(p.n, weighted);
}

SkeletonPoint forget_stratum(const SkeletonPoint& p, int leaf) {
    if (p.n < 4) throw std::invalid_argument("forget_stratum: n < 4");
    if (leaf < 1 || leaf > p.n) throw std::invalid_argument("forget_stratum: leaf out of range");

    auto compress = [leaf](std::uint32_t mask) {
        std::uint32_t low = mask & (Split::bit(leaf) - 1);
        std::uint32_t high = mask & ~((Split::bit(leaf) << 1) - 1);
        return low | (high >> 1);
    };

    std::map<Split, Rational> merged;
    for (size_t s = 0; s < p.strata.size(); ++s) {
        std::uint32_t side = p.strata[s].side_mask() & ~Split::bit(leaf);
        int sz = std::popcount(side);
        if (sz < 2 || sz > p.n - 3) continue;   // a side fell below two leaves
        Split dropped(compress(side), p.n - 1);
        auto [it, fresh] = merged.emplace(dropped, p.alpha[s]);
        if (!fresh) it->second += p.alpha[s];
    }
    return make_skeleton_point(p.n - 1,
                               std::vector<std::pair<Split, Rational>>(merged.begin(), merged.end()));
}

} // namespace m0n
