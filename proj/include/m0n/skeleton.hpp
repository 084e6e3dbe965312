#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "m0n/rational.hpp"
#include "m0n/split.hpp"
#include "m0n/tree.hpp"
#include "m0n/valuation.hpp"

namespace m0n {

/// Boundary divisor of the stable-curves compactification: one per split.
struct BoundaryDivisor {
    Split split;

    std::string name() const { return split.name(); }
    /// Kapranov label on the blown-up plane, n = 5 only: "E1".."E4" for the
    /// splits {i,5}, "Ekl" (= H - Ek - El) for the splits {i,j} with i,j <= 4.
    std::string kapranov_label() const;
};

/// All 2^(n-1) - n - 1 boundary divisors, sorted canonically. n >= 4.
std::vector<BoundaryDivisor> boundary_divisors(int n);

/// Keel's criterion: the two divisors meet iff an inclusion holds among the
/// four sides {I, J} x {I', J'} — i.e. iff the splits are compatible.
bool keel_intersects(const BoundaryDivisor& a, const BoundaryDivisor& b);

/// Divisor class on the plane blown up in four points, written in the basis
/// (H, E1..E4): class = h*H + e1*E1 + ... + e4*E4.
struct DivisorClassN5 {
    int h = 0;
    std::array<int, 4> e{0, 0, 0, 0};

    friend bool operator==(const DivisorClassN5&, const DivisorClassN5&) = default;
};

/// {i,5} -> Ei; {i,j} (i,j <= 4) -> H - Ek - El with {k,l} = [4] \ {i,j}.
DivisorClassN5 kapranov_class(const BoundaryDivisor& d);   // n != 5: invalid_argument

/// Intersection pairing: (H,H) = 1, (Ei,Ej) = -delta_ij, (H,Ei) = 0,
/// so (a,b) = a.h*b.h - sum a.e_i * b.e_i.
int picard_pairing(const DivisorClassN5& a, const DivisorClassN5& b);

/// Dual intersection graph of the boundary: vertices are divisors, edges the
/// intersecting pairs. For n = 5 this is the Petersen graph.
struct IntersectionGraph {
    int n = 0;
    std::vector<BoundaryDivisor> nodes;          // sorted canonically
    std::vector<std::pair<int, int>> edge_list;  // (min, max) node indices, sorted

    bool adjacent(int a, int b) const;
    std::vector<int> degree_sequence() const;
    int girth() const;   // 0 if acyclic
};

IntersectionGraph intersection_graph(int n);   // 4 <= n <= 8

std::string to_dot(const IntersectionGraph& g);

/// Point of the skeleton: a stratum (pairwise compatible splits, sorted
/// canonically) with a weight alpha(s) >= 0 per split; alpha(pi) = 1 always.
struct SkeletonPoint {
    int n = 0;
    std::vector<Split> strata;
    std::vector<Rational> alpha;   // parallel to strata
};

/// Validates compatibility and alpha >= 0, sorts canonically.
SkeletonPoint make_skeleton_point(int n, std::vector<std::pair<Split, Rational>> weighted_splits);

/// The stratum's cone ≅ ℝ^{|S|}_{>=0}; faces drop splits (cospecialization).
struct StratumCone {
    std::vector<Split> splits;
    int dim = 0;

    StratumCone face(const std::vector<Split>& keep) const;
};

StratumCone stratum_cone(const SkeletonPoint& p);

/// Cross-ratio of Pluecker coordinates (u_il u_jk) / (u_ik u_jl).
struct CrossRatio {
    int i = 0, j = 0, k = 0, l = 0;

    std::string symbol() const;   // "u13.u24/u12.u34"
    /// Exponents over the pair alphabet: +1 at il, jk; -1 at ik, jl.
    std::vector<std::pair<std::pair<int, int>, int>> pair_exponents() const;
};

/// One local coordinate per split of the stratum: a cross-ratio vanishing to
/// order one on that split's divisor and order zero on the others. The base
/// pair (i,j) is used for the i/j slots whenever the split separates it;
/// remaining choices take the lexicographically smallest leaves.
std::vector<CrossRatio> local_generators(const SkeletonPoint& p, int base_i, int base_j);

/// Monomial valuation at a skeleton point: local generators weigh alpha(s),
/// the uniformizer weighs 1, and the weight extends to arbitrary cross-ratios
/// through the alpha-weighted split metric d_alpha(k,l) = sum of alpha(s) over
/// splits separating k from l.
struct SkeletonValuation {
    SkeletonPoint point;
    std::vector<CrossRatio> generators;   // parallel to point.strata
    MonomialValuation weights;            // alphabet: generator symbols + "pi"

    Rational alpha_distance(int k, int l) const;
    Rational cross_ratio_weight(int i, int j, int k, int l) const;
};

SkeletonValuation skeleton_valuation(const SkeletonPoint& p);

/// The metric tree the skeleton point parameterizes. Requires alpha > 0 on
/// every split; otherwise throws degenerate_stratum_error.
MarkedMetricTree trop_of_skeleton_point(const SkeletonPoint& p);

class degenerate_stratum_error : public std::invalid_argument {
public:
    explicit degenerate_stratum_error(const std::string& which)
        : std::invalid_argument("degenerate stratum: alpha vanishes on " + which) {}
};

/// Image of a skeleton point under forgetting a leaf: drop the leaf from each
/// split, delete splits with a side smaller than two, relabel order-preserving
/// onto [n-1], and merge equal splits adding their alpha values.
SkeletonPoint forget_stratum(const SkeletonPoint& p, int leaf);

} // namespace m0n
