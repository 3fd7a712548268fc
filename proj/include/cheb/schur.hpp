#pragma once

#include "cheb/bigint.hpp"
#include "cheb/cyclo.hpp"
#include "cheb/cyclo_factor.hpp"
#include "cheb/det.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cheb {

/// Strictly increasing nonempty subset of {0, ..., p-1}; selects rows or columns.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(unsigned p, std::vector<unsigned> elems) : p_(p), e_(std::move(elems)) {
        if (e_.empty()) throw std::invalid_argument("index set must be nonempty");
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (e_[i] >= p_) throw std::invalid_argument("index " + std::to_string(e_[i]) + " out of range");
            if (i && e_[i] <= e_[i - 1]) throw std::invalid_argument("index set must be strictly increasing");
        }
    }
    static IndexSet from_unsorted(unsigned p, std::vector<unsigned> elems) {
        std::sort(elems.begin(), elems.end());
        return IndexSet(p, std::move(elems));
    }
    static IndexSet from_mask(unsigned p, std::uint64_t mask) {
        std::vector<unsigned> v;
        for (unsigned i = 0; i < p; ++i)
            if (mask >> i & 1) v.push_back(i);
        return IndexSet(p, std::move(v));
    }
    static IndexSet range(unsigned p, unsigned k) {
        std::vector<unsigned> v(k);
        for (unsigned i = 0; i < k; ++i) v[i] = i;
        return IndexSet(p, std::move(v));
    }

    unsigned p() const { return p_; }
    std::size_t size() const { return e_.size(); }
    unsigned operator[](std::size_t i) const { return e_[i]; }
    const std::vector<unsigned>& elements() const { return e_; }
    auto begin() const { return e_.begin(); }
    auto end() const { return e_.end(); }
    unsigned min() const { return e_.front(); }
    unsigned max() const { return e_.back(); }
    std::uint64_t sum() const {
        std::uint64_t s = 0;
        for (auto x : e_) s += x;
        return s;
    }
    std::uint64_t mask() const {
        std::uint64_t m = 0;
        for (auto x : e_) m |= std::uint64_t{1} << x;
        return m;
    }

    /// l*B = {l*b mod p}, re-sorted ascending.
    IndexSet scaled(std::uint64_t l) const {
        std::vector<unsigned> v;
        for (auto x : e_) v.push_back(static_cast<unsigned>((l % p_) * x % p_));
        return from_unsorted(p_, std::move(v));
    }
    /// {(a + c) mod p}, re-sorted ascending.
    IndexSet translated(std::uint64_t c) const {
        std::vector<unsigned> v;
        for (auto x : e_) v.push_back(static_cast<unsigned>((x + c) % p_));
        return from_unsorted(p_, std::move(v));
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < e_.size(); ++i) s += (i ? "," : "") + std::to_string(e_[i]);
        return s + "}";
    }

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.p_ == b.p_ && a.e_ == b.e_; }
    friend auto operator<=>(const IndexSet& a, const IndexSet& b) { return a.e_ <=> b.e_; }

private:
    unsigned p_ = 0;
    std::vector<unsigned> e_;
};

/// Weakly decreasing parts; trailing zeros allowed.
struct Partition {
    std::vector<unsigned> parts;

    unsigned length() const {
        unsigned l = 0;
        for (auto x : parts)
            if (x) ++l;
        return l;
    }
    unsigned first() const { return parts.empty() ? 0 : parts.front(); }
    unsigned weight() const {
        unsigned w = 0;
        for (auto x : parts) w += x;
        return w;
    }
    Partition conjugate() const {
        Partition c;
        for (unsigned j = 1; j <= first(); ++j) {
            unsigned cnt = 0;
            for (auto x : parts)
                if (x >= j) ++cnt;
            c.parts.push_back(cnt);
        }
        return c;
    }
    friend bool operator==(const Partition&, const Partition&) = default;
};

/// lambda_i = a_{k+1-i} - (k-i).
inline Partition partition_of(const IndexSet& a) {
    const std::size_t k = a.size();
    Partition lam;
    for (std::size_t i = 1; i <= k; ++i) lam.parts.push_back(a[k - i] - static_cast<unsigned>(k - i));
    return lam;
}

/// s_A(1,...,1) = prod_{i<j}(a_j - a_i) / prod_{i<j}(j - i); always an integer.
inline BigInt schur_eval_ones(const IndexSet& a) {
    BigInt num = 1, den = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            num *= a[j] - a[i];
            den *= static_cast<unsigned long>(j - i);
        }
    return num / den;
}

using MonomialMap = std::map<std::vector<unsigned>, BigInt>;

inline constexpr std::uint64_t kDefaultSsytCap = 1'000'000;

/// Full monomial expansion of s_A in k = |A| variables by enumerating
/// semistandard tableaux of shape partition_of(A) with entries 1..k.
inline MonomialMap ssyt_expand(const IndexSet& a, std::uint64_t cap = kDefaultSsytCap) {
    const BigInt total = schur_eval_ones(a);
    if (total > from_u64(cap))
        throw std::length_error("ssyt_expand: " + to_decimal(total) + " tableaux exceed cap " + std::to_string(cap));
    const unsigned k = static_cast<unsigned>(a.size());
    const Partition lam = partition_of(a);
    std::vector<std::pair<unsigned, unsigned>> cells;
    for (unsigned r = 0; r < lam.parts.size(); ++r)
        for (unsigned c = 0; c < lam.parts[r]; ++c) cells.emplace_back(r, c);
    std::vector<std::vector<unsigned>> tab(lam.parts.size());
    for (unsigned r = 0; r < lam.parts.size(); ++r) tab[r].assign(lam.parts[r], 0);
    std::vector<unsigned> content(k, 0);
    MonomialMap out;
    std::function<void(std::size_t)> fill = [&](std::size_t idx) {
        if (idx == cells.size()) {
            out[content] += 1;
            return;
        }
        const auto [r, c] = cells[idx];
        unsigned lo = 1;
        if (c > 0) lo = std::max(lo, tab[r][c - 1]);
        if (r > 0) lo = std::max(lo, tab[r - 1][c] + 1);
        for (unsigned v = lo; v <= k; ++v) {
            tab[r][c] = v;
            ++content[v - 1];
            fill(idx + 1);
            --content[v - 1];
        }
    };
    fill(0);
    return out;
}

/// alpha_B(s_A) mod (X^p - 1) as a residue vector; c[0] = m_{A,B}.
struct ResidueProfile {
    unsigned p = 0;
    std::vector<BigInt> c;

    const BigInt& m() const { return c.at(0); }
    BigInt total() const {
        BigInt s = 0;
        for (const auto& x : c) s += x;
        return s;
    }
    CycloVec as_cyclo() const { return CycloVec(p, c); }
    friend bool operator==(const ResidueProfile&, const ResidueProfile&) = default;
};

/// Pushes a monomial expansion through x_l -> X^{b_l} with X^p = 1.
inline ResidueProfile residues_from_monomials(const MonomialMap& mons, const IndexSet& b, unsigned p) {
    ResidueProfile s{p, std::vector<BigInt>(p, BigInt(0))};
    for (const auto& [mu, cnt] : mons) {
        std::uint64_t t = 0;
        for (std::size_t j = 0; j < mu.size(); ++j) t += std::uint64_t{mu[j]} * b[j];
        s.c[t % p] += cnt;
    }
    return s;
}

namespace detail {

/// h_n(X^{b_1},...,X^{b_k}) mod X^p - 1 for n = 0..nmax (multiset knapsack over residues).
template <class T>
std::vector<CyclicPoly<T>> complete_homogeneous(const std::vector<unsigned>& b, unsigned p, unsigned nmax) {
    std::vector<CyclicPoly<T>> h(nmax + 1, CyclicPoly<T>(p));
    h[0][0] = T(1);
    for (unsigned bj : b) {
        const unsigned s = bj % p;
        for (unsigned n = 1; n <= nmax; ++n) {
            auto& dst = h[n].coeffs();
            const auto& src = h[n - 1].coeffs();
            for (unsigned t = 0; t < p; ++t) {
                unsigned u = t + s;
                if (u >= p) u -= p;
                dst[u] += src[t];
            }
        }
    }
    return h;
}

/// e_n(X^{b_1},...,X^{b_k}) mod X^p - 1 for n = 0..nmax (0/1 knapsack over residues).
template <class T>
std::vector<CyclicPoly<T>> elementary(const std::vector<unsigned>& b, unsigned p, unsigned nmax) {
    std::vector<CyclicPoly<T>> e(nmax + 1, CyclicPoly<T>(p));
    e[0][0] = T(1);
    for (unsigned bj : b) {
        const unsigned s = bj % p;
        for (unsigned n = nmax; n >= 1; --n) {
            auto& dst = e[n].coeffs();
            const auto& src = e[n - 1].coeffs();
            for (unsigned t = 0; t < p; ++t) {
                unsigned u = t + s;
                if (u >= p) u -= p;
                dst[u] += src[t];
            }
        }
    }
    return e;
}

inline constexpr unsigned kLaplaceMaxSize = 12;

/// s_lambda(X^{b_1},...,X^{b_k}) mod X^p - 1 via Jacobi-Trudi (or its dual,
/// whichever matrix is smaller), evaluated with a division-free determinant.
template <class T>
CyclicPoly<T> schur_residues(const Partition& lam, const std::vector<unsigned>& b, unsigned p) {
    const unsigned len = lam.length();
    const unsigned wid = lam.first();
    const bool dual = wid < len;
    const Partition rows = dual ? lam.conjugate() : lam;
    const std::vector<unsigned>& parts = rows.parts;
    const unsigned n = dual ? wid : len;
    const CyclicPoly<T> zero(p), one = CyclicPoly<T>::constant(p, T(1));
    if (n == 0) return one;
    const unsigned nmax = parts[0] + n - 1;
    const auto seq = dual ? elementary<T>(b, p, nmax) : complete_homogeneous<T>(b, p, nmax);
    Matrix<CyclicPoly<T>> m(n, std::vector<CyclicPoly<T>>(n, zero));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            const long idx = static_cast<long>(parts[i]) - static_cast<long>(i) + static_cast<long>(j);
            if (idx >= 0) m[i][j] = seq[static_cast<std::size_t>(idx)];
        }
    return n <= kLaplaceMaxSize ? det_laplace(m, zero, one) : det_bird(m, zero, one);
}

/// Residue vector as machine words when the total s_A(1..1) leaves headroom:
/// entries are nonnegative and sum to that total, so arithmetic mod 2^64 is exact.
inline bool fits_word_route(const IndexSet& a) {
    return schur_eval_ones(a) < (BigInt(1) << 63);
}

template <class T>
CyclicPoly<T> residue_vector(const IndexSet& a, const IndexSet& b, unsigned p) {
    if (a.size() != b.size()) throw std::invalid_argument("|A| must equal |B|");
    if (a.size() == 1) {
        // s_{(a)} = x^a
        return CyclicPoly<T>::monomial(p, std::uint64_t{a[0]} * b[0] % p, T(1));
    }
    return schur_residues<T>(partition_of(a), b.elements(), p);
}

}  // namespace detail

/// alpha_B(s_A) mod (X^p - 1) by the Jacobi-Trudi residue route.
inline ResidueProfile jacobi_trudi_residues(const IndexSet& a, const IndexSet& b, unsigned p) {
    ResidueProfile s{p, {}};
    if (detail::fits_word_route(a)) {
        const auto v = detail::residue_vector<std::uint64_t>(a, b, p);
        for (auto x : v.coeffs()) s.c.push_back(from_u64(x));
    } else {
        s.c = detail::residue_vector<BigInt>(a, b, p).coeffs();
    }
    return s;
}

/// Residues for l*B from those of B: c'[t] = c[t * l^{-1} mod p].
inline ResidueProfile relabel(const ResidueProfile& s, std::uint64_t l) {
    return ResidueProfile{s.p, s.as_cyclo().relabeled(l).coeffs()};
}

inline BigInt m_count(const IndexSet& a, const IndexSet& b, unsigned p) { return jacobi_trudi_residues(a, b, p).m(); }

struct CosetCounts {
    BigInt m0;                           // mass on <mu,B> = 0
    std::map<std::uint64_t, BigInt> by_rep;  // coset representative -> mass
};

inline CosetCounts coset_counts(const ResidueProfile& s, const CosetTable& cosets) {
    CosetCounts out;
    out.m0 = s.c[0];
    for (auto rep : cosets.reps) out.by_rep[rep] = 0;
    for (unsigned t = 1; t < s.p; ++t) out.by_rep[cosets.rep_of[t]] += s.c[t];
    return out;
}

inline CosetCounts coset_counts(const IndexSet& a, const IndexSet& b, unsigned p, const CosetTable& cosets) {
    return coset_counts(jacobi_trudi_residues(a, b, p), cosets);
}

}  // namespace cheb
