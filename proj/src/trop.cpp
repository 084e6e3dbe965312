#include "m0n/trop.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace m0n {

int pair_index(int k, int l, int n) {
    return DistanceMatrix::index(k, l, n);
}

std::pair<int, int> pair_of_index(int idx, int n) {
    for (int k = 1; k < n; ++k) {
        int row = n - k;
        if (idx < row) return {k, k + 1 + idx};
        idx -= row;
    }
    throw std::invalid_argument("pair_of_index: index out of range");
}

std::string pair_symbol(int k, int l) {
    if (k > l) std::swap(k, l);
    return "u" + std::to_string(k) + std::to_string(l);
}

const Rational& TropPoint::at(int k, int l) const {
    return coords[static_cast<size_t>(pair_index(k, l, n))];
}

Rational& TropPoint::at(int k, int l) {
    return coords[static_cast<size_t>(pair_index(k, l, n))];
}

TropPoint plucker_vector(const MarkedMetricTree& t) {
    DistanceMatrix d = distance_matrix(t);
    TropPoint x{t.tree.n, std::vector<Rational>(d.d.size()), false};
    for (size_t idx = 0; idx < d.d.size(); ++idx) x.coords[idx] = -(d.d[idx] / 2);
    return x;
}

TropPoint l_shift(const TropPoint& x, const std::vector<Rational>& a) {
    if (static_cast<int>(a.size()) != x.n)
        throw std::invalid_argument("l_shift: need one summand per mark");
    TropPoint out = x;
    for (int k = 1; k <= x.n; ++k)
        for (int l = k + 1; l <= x.n; ++l) out.at(k, l) = x.at(k, l) + a[k - 1] + a[l - 1];
    return out;
}

TropPoint gauge_fix(const TropPoint& x) {
    if (x.n < 3) throw std::invalid_argument("gauge_fix: n < 3");
    std::vector<Rational> a(static_cast<size_t>(x.n));
    a[0] = (x.at(2, 3) - x.at(1, 2) - x.at(1, 3)) / 2;
    for (int j = 2; j <= x.n; ++j) a[j - 1] = -x.at(1, j) - a[0];
    TropPoint out = l_shift(x, a);
    out.gauge = true;
    for (int j = 2; j <= x.n; ++j)
        if (!out.at(1, j).is_zero()) throw std::logic_error("gauge_fix: pivot coordinate nonzero");
    if (!out.at(2, 3).is_zero()) throw std::logic_error("gauge_fix: pivot coordinate nonzero");
    return out;
}

IndexSet caterpillar_index_set(int n, int i, int j) {
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw std::invalid_argument("index set: bad base pair");
    IndexSet out{i, j, {}};
    for (int l = 1; l <= n; ++l) {
        if (l == i || l == j) continue;
        out.members.emplace_back(std::min(i, l), std::max(i, l));
        out.members.emplace_back(std::min(j, l), std::max(j, l));
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

std::vector<std::pair<std::pair<int, int>, Rational>>
local_projection(const TropPoint& x, const IndexSet& index) {
    if (x.gauge)
        throw std::invalid_argument("local_projection: expects the distance representative");
    std::vector<std::pair<std::pair<int, int>, Rational>> out;
    const Rational& base = x.at(index.i, index.j);
    for (auto [k, l] : index.members) out.push_back({{k, l}, x.at(k, l) - base});
    return out;
}

int ConeComplex::find(const std::vector<Split>& splits) const {
    std::vector<Split> key = splits;
    std::sort(key.begin(), key.end());
    for (size_t c = 0; c < cones.size(); ++c)
        if (cones[c].splits == key) return static_cast<int>(c);
    return -1;
}

std::vector<int> ConeComplex::faces_of(int cone) const {
    const auto& splits = cones.at(static_cast<size_t>(cone)).splits;
    std::vector<int> out;
    for (size_t c = 0; c < cones.size(); ++c) {
        const auto& sub = cones[c].splits;
        if (std::includes(splits.begin(), splits.end(), sub.begin(), sub.end()))
            out.push_back(static_cast<int>(c));
    }
    return out;
}

std::vector<int> ConeComplex::maximal_cones() const {
    std::vector<int> out;
    for (size_t c = 0; c < cones.size(); ++c)
        if (cones[c].dim == n - 3) out.push_back(static_cast<int>(c));
    return out;
}

ConeComplex cone_complex(int n) {
    if (n < 3 || n > 8)
        throw std::invalid_argument("cone_complex: n out of the supported range 3..8");
    ConeComplex out;
    out.n = n;
    for (auto& set : enumerate_stable_split_sets(n)) {
        TypeCone cone;
        cone.dim = static_cast<int>(set.size());
        cone.splits = std::move(set);
        std::sort(cone.splits.begin(), cone.splits.end());
        out.cones.push_back(std::move(cone));
    }
    return out;
}

MonomialValuation section_valuation(const MarkedMetricTree& t, int i, int j) {
    const int n = t.tree.n;
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw std::invalid_argument("section_valuation: bad base pair");
    DistanceMatrix d = distance_matrix(t);
    MonomialValuation v;
    const Rational& base = d.at(i, j);
    for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
            v.alphabet.push_back(pair_symbol(k, l));
            v.weights.push_back((d.at(k, l) - base) / 2);
        }
    return v;
}

namespace {

int leaves_of_pair_alphabet(const MonomialValuation& v) {
    int n = 3;
    while (n <= 32 && static_cast<size_t>(n) * (n - 1) / 2 < v.alphabet.size()) ++n;
    if (static_cast<size_t>(n) * (n - 1) / 2 != v.alphabet.size())
        throw std::invalid_argument("valuation is not over a full pair alphabet");
    for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l)
            if (v.alphabet[static_cast<size_t>(pair_index(k, l, n))] != pair_symbol(k, l))
                throw std::invalid_argument("valuation alphabet is not in pair order");
    return n;
}

} // namespace

Rational cross_ratio_weight(const MonomialValuation& v, int i, int j, int k, int l) {
    int n = leaves_of_pair_alphabet(v);
    auto w = [&](int a, int b) { return v.weights[static_cast<size_t>(pair_index(a, b, n))]; };
    return w(i, l) + w(j, k) - w(i, k) - w(j, l);
}

bool tropical_plucker_check(const MonomialValuation& w) {
    return relation_consistency(w, leaves_of_pair_alphabet(w));
}

} // namespace m0n
