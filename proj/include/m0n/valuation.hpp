#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "m0n/rational.hpp"

namespace m0n {

/// Min-plus monomial valuation: each coordinate symbol carries an additive
/// weight in ℚ; the uniformizer "pi" always has weight 1. The induced
/// multiplicative seminorm is exp(-weight); the exponential is never evaluated.
struct MonomialValuation {
    std::vector<std::string> alphabet;
    std::vector<Rational> weights;

    /// Weight of the uniformizer. If "pi" appears in the alphabet its stored
    /// weight must equal this.
    static const Rational& pi_weight();

    int index_of(std::string_view symbol) const;       // -1 if absent
    const Rational& weight_of(std::string_view symbol) const;  // throws std::invalid_argument

    void validate() const;
};

/// One Laurent term: exponent vector over the polynomial's alphabet plus the
/// valuation of its coefficient. Coefficients are generic apart from their
/// valuation, so cancellation never occurs and terms with infinite coefficient
/// valuation are simply not stored.
struct LaurentTerm {
    std::vector<int> exps;
    Rational coeff_val;
};

struct LaurentPoly {
    std::vector<std::string> alphabet;
    std::vector<LaurentTerm> terms;

    void validate() const;   // throws on duplicate exponent vectors or ragged terms
};

/// min over terms of (coefficient valuation + <exps, weights>); +inf for the
/// zero polynomial. Symbols of f missing from v raise std::invalid_argument.
CoefficientVal evaluate(const MonomialValuation& v, const LaurentPoly& f);

/// <exps, weights> for a bare monomial over v's own alphabet.
Rational monomial_weight(const MonomialValuation& v, std::span<const int> exps);

/// Tropical Pluecker compatibility of a weight vector on the full alphabet
/// {u_kl : 1 <= k < l <= n}: for every quadruple {i,j,k,l} the attained-twice
/// rule holds across the three pairings w(u_ij)+w(u_kl), w(u_ik)+w(u_jl),
/// w(u_il)+w(u_jk). Weights are coefficient valuations (additive, min-plus),
/// so in point coordinates x = -w this is the standard min-attained-twice
/// tropical Pluecker relation; four_point_check on the distance matrix is the
/// equivalent tree-side statement.
bool relation_consistency(const MonomialValuation& v, int n);

} // namespace m0n
