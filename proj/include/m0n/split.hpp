#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace m0n {

/// A split of the leaf set [n]: a bipartition I | I^c with both sides of size >= 2.
/// Stored by its canonical side, the side NOT containing leaf n, as a bitmask
/// (bit k-1 <=> leaf k). Splits are exactly the boundary divisors and exactly the
/// internal edges of stable trees.
class Split {
public:
    Split(std::uint32_t side, int n) : n_(n) {
        if (n < 4 || n > 31) throw std::invalid_argument("Split: n out of range");
        std::uint32_t full = full_mask(n);
        if ((side & ~full) != 0) throw std::invalid_argument("Split: side has leaves outside [n]");
        if (side & bit(n)) side = full & ~side;
        int sz = std::popcount(side);
        if (sz < 2 || sz > n - 2)
            throw std::invalid_argument("Split: both sides must have at least two leaves");
        side_ = side;
    }

    static Split of_leaves(std::initializer_list<int> leaves, int n) {
        std::uint32_t m = 0;
        for (int l : leaves) {
            if (l < 1 || l > n) throw std::invalid_argument("Split: leaf out of range");
            m |= bit(l);
        }
        return Split(m, n);
    }

    int n() const { return n_; }
    std::uint32_t side_mask() const { return side_; }
    std::uint32_t co_side_mask() const { return full_mask(n_) & ~side_; }
    int side_size() const { return std::popcount(side_); }

    bool side_contains(int leaf) const { return (side_ & bit(leaf)) != 0; }
    bool separates(int k, int l) const { return side_contains(k) != side_contains(l); }

    /// Splits are compatible iff they coexist in one stable tree. Since neither
    /// canonical side contains leaf n, the union of the sides is never [n], and
    /// compatibility reduces to: nested or disjoint canonical sides.
    bool compatible(const Split& o) const {
        if (o.n_ != n_) throw std::invalid_argument("Split: mixed leaf counts");
        std::uint32_t a = side_, b = o.side_;
        return (a & b) == 0 || (a & b) == a || (a & b) == b;
    }

    /// Sorted leaves of the smaller side (ties: the side with leaf 1), e.g. "d15".
    std::string name() const {
        std::uint32_t disp = side_;
        std::uint32_t co = co_side_mask();
        int sz = std::popcount(side_), csz = n_ - sz;
        if (csz < sz || (csz == sz && (co & 1u)))
            disp = co;
        std::string s = "d";
        for (int l = 1; l <= n_; ++l)
            if (disp & bit(l)) s += std::to_string(l);
        return s;
    }

    std::vector<int> side_leaves() const {
        std::vector<int> out;
        for (int l = 1; l <= n_; ++l)
            if (side_contains(l)) out.push_back(l);
        return out;
    }

    friend bool operator==(const Split&, const Split&) = default;
    friend std::strong_ordering operator<=>(const Split& a, const Split& b) {
        if (a.n_ != b.n_) return a.n_ <=> b.n_;
        if (int c = std::popcount(a.side_) - std::popcount(b.side_); c != 0)
            return c <=> 0;
        return a.side_ <=> b.side_;
    }

    static std::uint32_t bit(int leaf) { return 1u << (leaf - 1); }
    static std::uint32_t full_mask(int n) { return (n == 32) ? ~0u : ((1u << n) - 1); }

private:
    std::uint32_t side_ = 0;
    int n_ = 0;
};

/// Error for a pair of splits that cannot coexist in one tree; carries both names.
class incompatible_splits_error : public std::invalid_argument {
public:
    incompatible_splits_error(const Split& a, const Split& b)
        : std::invalid_argument("incompatible splits " + a.name() + " and " + b.name()),
          a_(a.name()), b_(b.name()) {}
    const std::string& first() const { return a_; }
    const std::string& second() const { return b_; }

private:
    std::string a_, b_;
};

} // namespace m0n
