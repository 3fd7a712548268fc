#pragma once

#include "cheb/cyclo_factor.hpp"
#include "cheb/minors.hpp"
#include "cheb/parallel.hpp"
#include "cheb/schur.hpp"

#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cheb {

namespace detail {

inline void check_pair(const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size()) throw std::invalid_argument("|A| must equal |B|");
    if (a.p() != b.p()) throw std::invalid_argument("index sets for different p");
}

}  // namespace detail

/// m * p - s_A(1,...,1).
inline BigInt scaling_sum_rhs(const IndexSet& a, const IndexSet& b) {
    return m_count(a, b, a.p()) * a.p() - schur_eval_ones(a);
}

/// sum_{l=1}^{p-1} residues(l*B) versus the constant m*p - s_A(1..1), compared mod Phi_p.
inline bool scaling_sum_check(const IndexSet& a, const IndexSet& b) {
    detail::check_pair(a, b);
    const unsigned p = a.p();
    const auto base = jacobi_trudi_residues(a, b, p);
    CycloVec lhs(p);
    for (std::uint64_t l = 1; l < p; ++l) lhs += relabel(base, l).as_cyclo();
    const BigInt rhs = base.m() * p - schur_eval_ones(a);
    std::vector<BigInt> r(p, BigInt(0));
    r[0] = rhs;
    return (lhs - CycloVec(p, std::move(r))).is_zero_mod_phi();
}

/// p does not divide s_A(1..1), cross-checked against the char-0 minor test.
/// A disagreement is an internal error and throws std::logic_error.
inline bool ratio_nonvanishing(const IndexSet& a, const IndexSet& b) {
    detail::check_pair(a, b);
    const unsigned p = a.p();
    const bool coprime = schur_eval_ones(a) % p != 0;
    const bool vanishes = minor_vanishes(a, b, MinorContext::char0(p));
    if (coprime == vanishes)
        throw std::logic_error("nonvanishing criterion disagrees with the minor test at A=" + a.to_string() +
                               " B=" + b.to_string());
    return coprime;
}

/// r*m0 - sum_i m^(n_i) * L[n_i] in F_q, masses counted with multiplicity.
inline std::uint64_t frobenius_sum_rhs(const ResidueProfile& s, const CosetTable& cosets, const TraceTable& trace) {
    const std::uint64_t q = cosets.q;
    const auto cc = coset_counts(s, cosets);
    std::uint64_t acc = detail::mulmod(cosets.r % q, detail::residue_mod(cc.m0, q), q);
    for (const auto& [rep, mass] : cc.by_rep)
        acc = detail::submod(acc, detail::mulmod(detail::residue_mod(mass, q), trace.L.at(rep), q), q);
    return acc;
}

/// sum_{l=0}^{r-1} residues(q^l * B) evaluated at omega equals frobenius_sum_rhs in F_{q^r}.
inline bool frobenius_sum_check(const IndexSet& a, const IndexSet& b, const FieldSetup& f, const CosetTable& cosets,
                          const TraceTable& trace) {
    detail::check_pair(a, b);
    if (a.p() != f.p) throw std::invalid_argument("index sets for a different p");
    const unsigned p = a.p();
    std::vector<BigInt> sum(p, BigInt(0));
    std::uint64_t ql = 1;
    for (unsigned l = 0; l < f.r; ++l) {
        const auto s = jacobi_trudi_residues(a, b.scaled(ql), p);
        for (unsigned t = 0; t < p; ++t) sum[t] += s.c[t];
        ql = ql * (f.q % p) % p;
    }
    const auto lhs = detail::evaluate_at_omega(sum, f);
    const std::uint64_t rhs = frobenius_sum_rhs(jacobi_trudi_residues(a, b, p), cosets, trace);
    if (lhs[0] != rhs) return false;
    for (unsigned j = 1; j < f.r; ++j)
        if (lhs[j]) return false;
    return true;
}

inline bool frobenius_sum_check(const IndexSet& a, const IndexSet& b, const FieldSetup& f) {
    return frobenius_sum_check(a, b, f, coset_table(f.p, f.q), trace_table(f));
}

// ---- sweeps ----

struct IdentitySweep {
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::optional<std::pair<IndexSet, IndexSet>> first_failure;
    bool passed() const { return failed == 0 && checked > 0; }
};

/// `random == 0` selects every pair (A,B) with |A| = |B|; otherwise `random`
/// pairs drawn from a std::mt19937_64 seeded with `seed`.
struct SweepOptions {
    std::uint64_t random = 0;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

namespace detail {

inline IndexSet random_subset(unsigned p, unsigned k, std::mt19937_64& rng) {
    std::vector<unsigned> all(p);
    std::iota(all.begin(), all.end(), 0u);
    for (unsigned i = 0; i < k; ++i) {
        const auto j = i + static_cast<unsigned>(rng() % (p - i));
        std::swap(all[i], all[j]);
    }
    all.resize(k);
    return IndexSet::from_unsorted(p, std::move(all));
}

inline std::vector<std::pair<IndexSet, IndexSet>> sweep_pairs(unsigned p, const SweepOptions& opt) {
    std::vector<std::pair<IndexSet, IndexSet>> items;
    if (opt.random == 0) {
        if (p > 13) throw BudgetExceeded("exhaustive sweep limited to p <= 13");
        for (unsigned k = 1; k <= p; ++k) {
            std::vector<IndexSet> subs;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask)
                if (static_cast<unsigned>(__builtin_popcountll(mask)) == k) subs.push_back(IndexSet::from_mask(p, mask));
            std::sort(subs.begin(), subs.end());
            for (const auto& x : subs)
                for (const auto& y : subs) items.emplace_back(x, y);
        }
        return items;
    }
    std::mt19937_64 rng(opt.seed);
    for (std::uint64_t i = 0; i < opt.random; ++i) {
        const unsigned k = 1 + static_cast<unsigned>(rng() % p);
        auto x = random_subset(p, k, rng);
        auto y = random_subset(p, k, rng);
        items.emplace_back(std::move(x), std::move(y));
    }
    return items;
}

template <class F>
IdentitySweep run_sweep(unsigned p, const SweepOptions& opt, F check) {
    const auto items = sweep_pairs(p, opt);
    const auto ok = parallel_map<unsigned char>(items.size(), opt.threads, [&](std::size_t i) {
        return static_cast<unsigned char>(check(items[i].first, items[i].second));
    });
    IdentitySweep s;
    s.checked = items.size();
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (ok[i]) continue;
        ++s.failed;
        if (!s.first_failure) s.first_failure = items[i];
    }
    return s;
}

}  // namespace detail

inline IdentitySweep sweep_scaling_sum(std::uint64_t p, const SweepOptions& opt = {}) {
    require_prime(p, "p");
    return detail::run_sweep(static_cast<unsigned>(p), opt, [](const IndexSet& a, const IndexSet& b) { return scaling_sum_check(a, b); });
}

inline IdentitySweep sweep_ratio_criterion(std::uint64_t p, const SweepOptions& opt = {}) {
    require_prime(p, "p");
    return detail::run_sweep(static_cast<unsigned>(p), opt,
                             [](const IndexSet& a, const IndexSet& b) { return ratio_nonvanishing(a, b); });
}

inline IdentitySweep sweep_frobenius_sum(const FieldSetup& f, const SweepOptions& opt = {}) {
    const auto cosets = coset_table(f.p, f.q);
    const auto trace = trace_table(f);
    return detail::run_sweep(static_cast<unsigned>(f.p), opt,
                             [&](const IndexSet& a, const IndexSet& b) { return frobenius_sum_check(a, b, f, cosets, trace); });
}

}  // namespace cheb
