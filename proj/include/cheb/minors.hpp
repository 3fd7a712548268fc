#pragma once

#include "cheb/bigint.hpp"
#include "cheb/cyclo.hpp"
#include "cheb/cyclo_factor.hpp"
#include "cheb/det.hpp"
#include "cheb/fq_ext.hpp"
#include "cheb/parallel.hpp"
#include "cheb/schur.hpp"

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cheb {

/// Ring in which minors are tested: Z[X]/Phi_p (char 0) or F_q[X]/Pbar.
struct MinorContext {
    unsigned p = 0;
    std::shared_ptr<const FieldSetup> field;  // null for char 0

    static MinorContext char0(unsigned p) {
        require_prime(p, "p");
        return MinorContext{p, nullptr};
    }
    static MinorContext finite(FieldSetup s) {
        const auto p = static_cast<unsigned>(s.p);
        return MinorContext{p, std::make_shared<const FieldSetup>(std::move(s))};
    }
    bool is_char0() const { return !field; }
    std::uint64_t q() const { return field ? field->q : 0; }
};

struct MinorReport {
    unsigned p = 0;
    std::uint64_t q = 0;  // 0 = char 0
    std::string modulus;  // Pbar as written, empty in char 0
    std::string matrix;   // set when the matrix is not the Fourier matrix
    bool verified = true;
    std::optional<std::pair<IndexSet, IndexSet>> first_violation;
    BigInt minors_checked = 0;           // all (A,B), 1 <= |A| = |B| <= p
    std::uint64_t minors_evaluated = 0;  // normalized pairs actually tested
    BigInt orbits_pruned = 0;            // minors_checked - minors_evaluated
    std::uint64_t violations = 0;        // vanishing normalized pairs
    double wall_time = 0;
};

struct VerifyOptions {
    unsigned threads = 1;
    bool extended = false;
    bool force = false;
};

inline constexpr unsigned kRoutineMinorsLimit = 11;
inline constexpr unsigned kExtendedMinorsLimit = 13;

/// (omega^{jm}) over F_{q^r}, j,m = 0..p-1.
inline Matrix<FqExt> fourier_matrix(const FieldSetup& s) {
    Matrix<FqExt> m(s.p);
    for (std::uint64_t j = 0; j < s.p; ++j)
        for (std::uint64_t k = 0; k < s.p; ++k) m[j].push_back(s.omega_pow(j * k));
    return m;
}

/// (X^{jm}) over Z[X]/(X^p - 1).
inline Matrix<CycloVec> fourier_matrix_cyclo(unsigned p) {
    Matrix<CycloVec> m(p);
    for (unsigned j = 0; j < p; ++j)
        for (unsigned k = 0; k < p; ++k) m[j].push_back(CycloVec::monomial(p, std::uint64_t{j} * k));
    return m;
}

template <class T>
Matrix<T> submatrix(const Matrix<T>& m, const IndexSet& rows, const IndexSet& cols) {
    Matrix<T> out;
    for (auto r : rows) {
        std::vector<T> row;
        for (auto c : cols) row.push_back(m.at(r).at(c));
        out.push_back(std::move(row));
    }
    return out;
}

/// Exact determinant over F_{q^r} by Gaussian elimination.
inline FqExt det_over_field(const Matrix<FqExt>& m) {
    if (m.empty()) throw std::invalid_argument("det_over_field needs a nonempty matrix");
    const auto& mod = m[0].at(0).modulus();
    for (const auto& row : m)
        for (const auto& x : row)
            if (!(*x.modulus() == *mod)) throw std::invalid_argument("matrix entries use different moduli");
    return det_gauss(m, FqExt::zero(mod), FqExt::one(mod));
}

namespace detail {

inline std::uint64_t residue_mod(std::uint64_t x, std::uint64_t q) { return x % q; }
inline std::uint64_t residue_mod(const BigInt& x, std::uint64_t q) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), from_u64(q).get_mpz_t());
    return to_u64(r);
}

/// sum_t c[t] * omega^t in F_{q^r}, returned as coefficient vector.
template <class T>
std::vector<std::uint64_t> evaluate_at_omega(const std::vector<T>& c, const FieldSetup& s) {
    std::vector<std::uint64_t> acc(s.r, 0);
    for (std::size_t t = 0; t < c.size(); ++t) {
        const std::uint64_t w = residue_mod(c[t], s.q);
        if (!w) continue;
        const auto& pw = s.powers[t].coeffs();
        for (unsigned j = 0; j < s.r; ++j) acc[j] = addmod(acc[j], mulmod(w, pw[j], s.q), s.q);
    }
    return acc;
}

template <class T>
bool residues_vanish(const std::vector<T>& c, const MinorContext& ctx) {
    if (ctx.is_char0()) {
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c[i] != c[0]) return false;
        return true;
    }
    for (auto x : evaluate_at_omega(c, *ctx.field))
        if (x) return false;
    return true;
}

}  // namespace detail

/// det((omega^{ab})_{a in A, b in B}) = 0 ?  Decided from alpha_B(s_A) at omega;
/// the Vandermonde prefactor in omega^B never vanishes.
inline bool minor_vanishes(const IndexSet& a, const IndexSet& b, const MinorContext& ctx) {
    if (a.size() != b.size()) throw std::invalid_argument("|A| must equal |B|");
    if (a.p() != ctx.p || b.p() != ctx.p) throw std::invalid_argument("index sets for a different p");
    if (detail::fits_word_route(a))
        return detail::residues_vanish(detail::residue_vector<std::uint64_t>(a, b, ctx.p).coeffs(), ctx);
    return detail::residues_vanish(detail::residue_vector<BigInt>(a, b, ctx.p).coeffs(), ctx);
}

inline bool minor_vanishes(const ResidueProfile& s, const MinorContext& ctx) {
    return detail::residues_vanish(s.c, ctx);
}

namespace detail {

/// k-subsets of {0..p-1} containing 0, ascending lexicographically.
inline std::vector<IndexSet> subsets_with_zero(unsigned p, unsigned k) {
    std::vector<IndexSet> out;
    if (k == 0 || k > p) return out;
    std::vector<unsigned> cur(k);
    cur[0] = 0;
    for (unsigned i = 1; i < k; ++i) cur[i] = i;
    for (;;) {
        out.emplace_back(p, cur);
        int i = static_cast<int>(k) - 1;
        while (i >= 1 && cur[i] == p - k + static_cast<unsigned>(i)) --i;
        if (i < 1) break;
        ++cur[i];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

/// Subsets containing 0 that are lex-least in their orbit under multiplication by `units`.
inline std::vector<IndexSet> scaling_orbit_reps(unsigned p, unsigned k, const std::vector<std::uint64_t>& units) {
    std::vector<IndexSet> out;
    for (auto& b : subsets_with_zero(p, k)) {
        bool least = true;
        for (auto l : units) {
            if (b.scaled(l) < b) {
                least = false;
                break;
            }
        }
        if (least) out.push_back(std::move(b));
    }
    return out;
}

inline std::vector<std::uint64_t> scaling_group(unsigned p, std::uint64_t q) {
    std::vector<std::uint64_t> g;
    if (q == 0) {
        for (std::uint64_t l = 2; l < p; ++l) g.push_back(l);
    } else {
        std::uint64_t l = q % p;
        while (l != 1) {
            g.push_back(l);
            l = l * (q % p) % p;
        }
    }
    return g;
}

inline BigInt raw_minor_count(unsigned p) {
    BigInt total = 0;
    for (unsigned k = 1; k <= p; ++k) {
        const BigInt c = binomial(p, k);
        total += c * c;
    }
    return total;
}

}  // namespace detail

/// Checks every square minor of the Fourier matrix. Pairs are normalized to
/// 0 in A and 0 in B (translation) and B is reduced to its orbit under the
/// Galois scaling group (F_p^x in char 0, <q> over F_q). Enumeration order is
/// (k, A, B) lexicographic, so the first violation is reproducible.
inline MinorReport verify_all_minors(const MinorContext& ctx, const VerifyOptions& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const unsigned p = ctx.p;
    const unsigned limit = opt.extended ? kExtendedMinorsLimit : kRoutineMinorsLimit;
    if (p > limit && !opt.force)
        throw BudgetExceeded("minor verification for p = " + std::to_string(p) + " exceeds the limit p <= " +
                             std::to_string(limit) + (opt.extended ? "; use --force" : "; use --extended or --force"));
    const auto units = detail::scaling_group(p, ctx.q());
    std::vector<std::pair<IndexSet, IndexSet>> items;
    for (unsigned k = 1; k <= p; ++k) {
        const auto as = detail::subsets_with_zero(p, k);
        const auto bs = detail::scaling_orbit_reps(p, k, units);
        for (const auto& a : as)
            for (const auto& b : bs) items.emplace_back(a, b);
    }
    const auto flags = parallel_map<unsigned char>(items.size(), opt.threads, [&](std::size_t i) {
        return static_cast<unsigned char>(minor_vanishes(items[i].first, items[i].second, ctx));
    });

    MinorReport rep;
    rep.p = p;
    rep.q = ctx.q();
    if (ctx.field) rep.modulus = ctx.field->pbar().to_string();
    rep.minors_checked = detail::raw_minor_count(p);
    rep.minors_evaluated = items.size();
    rep.orbits_pruned = rep.minors_checked - from_u64(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!flags[i]) continue;
        ++rep.violations;
        if (!rep.first_violation) rep.first_violation = items[i];
    }
    rep.verified = !rep.first_violation;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline constexpr std::uint64_t kUncertaintyBudget = 10'000'000;

struct UncertaintyResult {
    unsigned p = 0;
    std::uint64_t q = 0;
    std::uint64_t omega = 0;
    unsigned min_support = 0;     // min ||g||_0 + ||F g||_0 over g != 0
    std::vector<std::uint64_t> witness;  // first g (odometer order) attaining it
    std::uint64_t vectors_scanned = 0;
};

/// Exhaustive min of ||g||_0 + ||F_p g||_0 over nonzero g in F_q^p, where F_p
/// uses a primitive p-th root omega in F_q itself (requires p | q - 1).
inline UncertaintyResult uncertainty_min(unsigned p, std::uint64_t q, std::optional<std::uint64_t> omega = {},
                                         std::uint64_t budget = kUncertaintyBudget) {
    require_prime(p, "p");
    require_prime(q, "q");
    if (p == q || mult_order(q, p) != 1)
        throw std::invalid_argument("uncertainty scan needs a p-th root of unity in F_q (q = 1 mod p)");
    BigInt space;
    mpz_pow_ui(space.get_mpz_t(), from_u64(q).get_mpz_t(), p);
    if (space > from_u64(budget))
        throw BudgetExceeded("q^p = " + to_decimal(space) + " exceeds the brute-force budget " + std::to_string(budget));
    std::uint64_t w;
    if (omega) {
        w = *omega % q;
        if (w == 1 || detail::powmod(w, p, q) != 1) throw std::invalid_argument("omega is not a primitive p-th root");
    } else {
        const auto s = build_field(p, q);
        w = s.omega.coeffs()[0];
    }
    std::vector<std::vector<std::uint64_t>> f(p, std::vector<std::uint64_t>(p));
    for (unsigned i = 0; i < p; ++i)
        for (unsigned j = 0; j < p; ++j) f[i][j] = detail::powmod(w, std::uint64_t{i} * j, q);

    UncertaintyResult res{p, q, w, 2 * p + 1, {}, 0};
    std::vector<std::uint64_t> g(p, 0), fg(p, 0);
    unsigned supp_g = 0, supp_fg = 0;
    const auto bump = [&](unsigned j, std::uint64_t delta) {
        for (unsigned i = 0; i < p; ++i) {
            const std::uint64_t before = fg[i];
            fg[i] = detail::addmod(fg[i], detail::mulmod(delta, f[i][j], q), q);
            supp_fg += (fg[i] != 0) - (before != 0);
        }
    };
    for (;;) {
        unsigned j = 0;
        while (j < p && g[j] == q - 1) {
            g[j] = 0;
            --supp_g;
            bump(j, 1);  // q-1 -> 0 adds 1
            ++j;
        }
        if (j == p) break;
        if (g[j] == 0) ++supp_g;
        ++g[j];
        bump(j, 1);
        ++res.vectors_scanned;
        const unsigned total = supp_g + supp_fg;
        if (total < res.min_support) {
            res.min_support = total;
            res.witness = g;
        }
    }
    return res;
}

}  // namespace cheb
