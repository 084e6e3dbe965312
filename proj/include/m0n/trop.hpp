#pragma once

#include <string>
#include <utility>
#include <vector>

#include "m0n/rational.hpp"
#include "m0n/tree.hpp"
#include "m0n/valuation.hpp"

namespace m0n {

/// Point of ℚ^{C(n,2)} with coordinates indexed by leaf pairs in pair_index
/// order (12, 13, ..., 1n, 23, ...). `gauge` marks the canonical representative
/// modulo the mark-sum lattice im(L), L(a)_{kl} = a_k + a_l.
struct TropPoint {
    int n = 0;
    std::vector<Rational> coords;
    bool gauge = false;

    const Rational& at(int k, int l) const;
    Rational& at(int k, int l);
};

int pair_index(int k, int l, int n);
std::pair<int, int> pair_of_index(int idx, int n);
std::string pair_symbol(int k, int l);   // "u12"

/// Distance representative of a metric tree: x_kl = -1/2 d(k,l).
TropPoint plucker_vector(const MarkedMetricTree& t);

/// x + L(a).
TropPoint l_shift(const TropPoint& x, const std::vector<Rational>& a);

/// The unique representative of x modulo im(L) whose coordinates at
/// {12, 13, ..., 1n, 23} vanish. Closed form: a1 = (x23 - x12 - x13)/2,
/// aj = -x1j - a1.
TropPoint gauge_fix(const TropPoint& x);

/// Index set of the caterpillar chart at base pair (i,j):
/// I(ij) = { il, jl : l != i,j }, 2(n-2) pairs.
struct IndexSet {
    int i = 0, j = 0;
    std::vector<std::pair<int, int>> members;   // sorted pairs (min, max)
};

IndexSet caterpillar_index_set(int n, int i, int j);

/// Projection onto the chart: component at kl is x_kl - x_ij. Expects the
/// distance representative, not the gauge-fixed one.
std::vector<std::pair<std::pair<int, int>, Rational>>
local_projection(const TropPoint& x, const IndexSet& index);

/// Cone of the fan of stable types: one cone per compatible split set, of
/// dimension |S|; faces are the subsets (edge contractions).
struct TypeCone {
    std::vector<Split> splits;
    int dim = 0;
};

struct ConeComplex {
    int n = 0;
    std::vector<TypeCone> cones;   // sorted by canonical key

    int find(const std::vector<Split>& splits) const;   // -1 if absent
    std::vector<int> faces_of(int cone) const;          // indices, including itself
    std::vector<int> maximal_cones() const;
};

ConeComplex cone_complex(int n);   // 3 <= n <= 8

/// Section valuation of the cone point at base pair (i,j): additive weights
/// w(u_kl) = 1/2 (d(k,l) - d(i,j)) on the full Pluecker alphabet, w(u_ij) = 0.
MonomialValuation section_valuation(const MarkedMetricTree& t, int i, int j);

/// Weight of the cross-ratio (u_il u_jk) / (u_ik u_jl) under a valuation on
/// the full pair alphabet; the base-pair normalization cancels.
Rational cross_ratio_weight(const MonomialValuation& v, int i, int j, int k, int l);

/// relation_consistency specialized to the Pluecker alphabet; n is inferred
/// from the alphabet size.
bool tropical_plucker_check(const MonomialValuation& w);

} // namespace m0n
