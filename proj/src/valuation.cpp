#include "m0n/valuation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace m0n {

const Rational& MonomialValuation::pi_weight() {
    static const Rational one(1);
    return one;
}

int MonomialValuation::index_of(std::string_view symbol) const {
    for (size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == symbol) return static_cast<int>(i);
    return -1;
}

const Rational& MonomialValuation::weight_of(std::string_view symbol) const {
    int idx = index_of(symbol);
    if (idx < 0)
        throw std::invalid_argument("valuation: unknown symbol '" + std::string(symbol) + "'");
    return weights[static_cast<size_t>(idx)];
}

void MonomialValuation::validate() const {
    if (alphabet.size() != weights.size())
        throw std::invalid_argument("valuation: alphabet and weights differ in length");
    std::set<std::string> seen(alphabet.begin(), alphabet.end());
    if (seen.size() != alphabet.size())
        throw std::invalid_argument("valuation: repeated symbol");
    if (int pi = index_of("pi"); pi >= 0 && weights[static_cast<size_t>(pi)] != pi_weight())
        throw std::invalid_argument("valuation: the uniformizer must weigh 1");
}

void LaurentPoly::validate() const {
    std::set<std::vector<int>> seen;
    for (const LaurentTerm& t : terms) {
        if (t.exps.size() != alphabet.size())
            throw std::invalid_argument("polynomial: term arity does not match alphabet");
        if (!seen.insert(t.exps).second)
            throw std::invalid_argument("polynomial: repeated exponent vector");
    }
}

CoefficientVal evaluate(const MonomialValuation& v, const LaurentPoly& f) {
    f.validate();
    std::vector<size_t> slot(f.alphabet.size());
    for (size_t s = 0; s < f.alphabet.size(); ++s) {
        int idx = v.index_of(f.alphabet[s]);
        if (idx < 0)
            throw std::invalid_argument("evaluate: unknown symbol '" + f.alphabet[s] + "'");
        slot[s] = static_cast<size_t>(idx);
    }
    CoefficientVal best = CoefficientVal::infinity();
    for (const LaurentTerm& t : f.terms) {
        Rational w = t.coeff_val;
        for (size_t s = 0; s < t.exps.size(); ++s)
            if (t.exps[s] != 0) w += Rational(t.exps[s]) * v.weights[slot[s]];
        if (CoefficientVal cand(w); cand < best) best = cand;
    }
    return best;
}

Rational monomial_weight(const MonomialValuation& v, std::span<const int> exps) {
    if (exps.size() != v.weights.size())
        throw std::invalid_argument("monomial_weight: arity does not match alphabet");
    Rational w;
    for (size_t s = 0; s < exps.size(); ++s)
        if (exps[s] != 0) w += Rational(exps[s]) * v.weights[s];
    return w;
}

bool relation_consistency(const MonomialValuation& v, int n) {
    if (n < 4) return true;
    std::vector<const Rational*> w(static_cast<size_t>(n + 1) * (n + 1));
    for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
            std::string sym = "u" + std::to_string(k) + std::to_string(l);
            int idx = v.index_of(sym);
            if (idx < 0)
                throw std::invalid_argument("relation_consistency: missing symbol " + sym);
            w[static_cast<size_t>(k) * (n + 1) + l] = &v.weights[static_cast<size_t>(idx)];
        }
    auto at = [&](int a, int b) -> const Rational& {
        if (a > b) std::swap(a, b);
        return *w[static_cast<size_t>(a) * (n + 1) + b];
    };
    // Attained-twice rule across the three pairings of each quadruple. These
    // weights are coefficient valuations, so the tropical side with the
    // repeated extreme is the maximum; in point coordinates (x = -w up to the
    // base normalization) it is the usual min-plus relation.
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l) {
                    Rational s1 = at(i, j) + at(k, l);
                    Rational s2 = at(i, k) + at(j, l);
                    Rational s3 = at(i, l) + at(j, k);
                    Rational m = std::max({s1, s2, s3});
                    if ((s1 == m) + (s2 == m) + (s3 == m) < 2) return false;
                }
    return true;
}

} // namespace m0n
