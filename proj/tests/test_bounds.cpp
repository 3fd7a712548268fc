#include "cheb/bounds.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace cheb;

namespace {

std::vector<IndexSet> all_subsets(unsigned p, unsigned k) {
    std::vector<IndexSet> out;
    for (std::uint64_t mask = 0; mask < (1ULL << p); ++mask)
        if (static_cast<unsigned>(__builtin_popcountll(mask)) == k) out.push_back(IndexSet::from_mask(p, mask));
    std::sort(out.begin(), out.end());
    return out;
}

struct BruteBound {
    BigInt value = 0;
    std::optional<std::pair<IndexSet, IndexSet>> argmax;
};

const BoundOptions kFull{1, false, false, 0, BoundDomain::full};

// Every raw pair, m from the tableau expansion; first maximizer in (k, A, B) order.
// `reduced` keeps only 0 in A, 0 in B and 2k <= p - 1.
BruteBound brute_bound_new(unsigned p, bool reduced) {
    BruteBound out;
    for (unsigned k = 1; k <= p; ++k) {
        if (reduced && 2 * k > p - 1) break;
        const auto subs = all_subsets(p, k);
        for (const auto& a : subs) {
            if (reduced && a.min() != 0) continue;
            const auto mons = ssyt_expand(a);
            const BigInt ratio = schur_eval_ones(a);
            for (const auto& b : subs) {
                if (reduced && b.min() != 0) continue;
                const BigInt v = abs(residues_from_monomials(mons, b, p).m() * p - ratio);
                if (!out.argmax || v > out.value) {
                    out.value = v;
                    out.argmax = std::make_pair(a, b);
                }
            }
        }
    }
    return out;
}

std::filesystem::path temp_dir(const std::string& name) {
    auto d = std::filesystem::temp_directory_path() / ("cheb-test-" + name + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(d);
    return d;
}

}  // namespace

TEST(GammaZhang, KnownValues) {
    EXPECT_EQ(gamma_zhang(2).value, 1);
    const auto g5 = gamma_zhang(5);
    EXPECT_EQ(g5.value, 8);
    EXPECT_EQ(*g5.argmax_a, IndexSet(5, {0, 2, 4}));
    const auto g7 = gamma_zhang(7);
    EXPECT_EQ(g7.value, 75);
    EXPECT_EQ(*g7.argmax_a, IndexSet(7, {0, 1, 3, 5, 6}));
    EXPECT_FALSE(g7.argmax_b);
    EXPECT_EQ(g7.work_items, 127u);
}

TEST(GammaZhang, MatchesDirectMaximum) {
    for (unsigned p : {3u, 5u, 7u, 11u}) {
        BigInt best = 0;
        for (std::uint64_t mask = 1; mask < (1ULL << p); ++mask) {
            // product formula evaluated independently of schur_eval_ones
            const IndexSet a = IndexSet::from_mask(p, mask);
            Rational r = 1;
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = i + 1; j < a.size(); ++j) r *= make_rational(BigInt(a[j] - a[i]), BigInt(static_cast<unsigned long>(j - i)));
            ASSERT_EQ(r.get_den(), 1);
            if (r.get_num() > best) best = r.get_num();
        }
        EXPECT_EQ(gamma_zhang(p).value, best);
    }
}

TEST(BoundNew, MatchesExhaustiveTableauSearch) {
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        for (bool reduced : {false, true}) {
            const auto brute = brute_bound_new(p, reduced);
            const auto r = bound_new(p, reduced ? BoundOptions{} : kFull);
            EXPECT_EQ(r.value, brute.value) << "p=" << p << " reduced=" << reduced;
            EXPECT_EQ(r.argmax_a.has_value(), brute.argmax.has_value());
            if (!brute.argmax) continue;
            ASSERT_TRUE(r.argmax_a && r.argmax_b);
            EXPECT_EQ(*r.argmax_a, brute.argmax->first) << "p=" << p;
            EXPECT_EQ(*r.argmax_b, brute.argmax->second) << "p=" << p;
        }
    }
}

TEST(BoundNew, P7IsEight) {
    const auto full = bound_new(7, kFull);
    EXPECT_EQ(full.value, 8);
    EXPECT_EQ(full.pairs_covered, 3431);
    EXPECT_EQ(full.method, BoundMethod::fresh);
    const auto red = bound_new(7);
    EXPECT_EQ(red.value, 8);
    EXPECT_EQ(red.domain, BoundDomain::reduced);
    EXPECT_EQ(red.pairs_covered, 1 + 36 + 225);
}

TEST(BoundNew, DomainsAgreeThroughEleven) {
    for (unsigned p : {2u, 3u, 5u, 7u, 11u}) {
        const auto red = bound_new(p), full = bound_new(p, kFull);
        EXPECT_LE(red.value, full.value);
        if (p > 2) {
            EXPECT_EQ(red.value, full.value) << p;
        }
    }
    EXPECT_EQ(bound_new(2).value, 0);
    EXPECT_EQ(bound_new(11).value, 186);
}

// The domains part ways at 13; both values confirmed on their argmax by the
// tableau expansion.
TEST(BoundNew, ThirteenBothDomains) {
    const auto red = bound_new(13, {1, true, false, 0, BoundDomain::reduced});
    const auto full = bound_new(13, {1, true, false, 0, BoundDomain::full});
    EXPECT_EQ(red.value, 1617);
    EXPECT_EQ(full.value, 1672);
    EXPECT_EQ(*full.argmax_a, IndexSet(13, {0, 2, 4, 6, 8, 10}));
    EXPECT_EQ(*full.argmax_b, IndexSet(13, {1, 2, 5, 8, 11, 12}));
    for (const auto* r : {&red, &full}) {
        const auto& a = *r->argmax_a;
        EXPECT_EQ(abs(residues_from_monomials(ssyt_expand(a), *r->argmax_b, 13).m() * 13 - schur_eval_ones(a)), r->value);
    }
    EXPECT_EQ(first_admissible_prime(13, red.value).q, 1619u);
    EXPECT_EQ(first_admissible_prime(13, full.value).q, 1697u);
}

TEST(BoundNew, ArgmaxAttainsValue) {
    for (unsigned p : {5u, 7u, 11u})
        for (const auto& opt : {BoundOptions{}, kFull}) {
            const auto r = bound_new(p, opt);
            const auto& a = *r.argmax_a;
            const BigInt v = abs(residues_from_monomials(ssyt_expand(a), *r.argmax_b, p).m() * p - schur_eval_ones(a));
            EXPECT_EQ(v, r.value);
        }
}

TEST(BoundNew, ThreadCountDoesNotChangeResult) {
    for (auto d : {BoundDomain::reduced, BoundDomain::full}) {
        const auto one = bound_new(11, {1, false, false, 0, d});
        const auto many = bound_new(11, {3, false, false, 0, d});
        EXPECT_EQ(one.value, many.value);
        EXPECT_EQ(one.argmax_a, many.argmax_a);
        EXPECT_EQ(one.argmax_b, many.argmax_b);
        EXPECT_EQ(one.work_items, many.work_items);
    }
}

TEST(BoundNew, BudgetGuard) {
    for (auto d : {BoundDomain::reduced, BoundDomain::full}) {
        EXPECT_LE(bound_new_work_estimate(11, d), kDefaultBoundBudget);
        EXPECT_GT(bound_new_work_estimate(13, d), kDefaultBoundBudget);
    }
    EXPECT_THROW(bound_new(13), BudgetExceeded);
    EXPECT_THROW(bound_new(7, {1, false, false, 10}), BudgetExceeded);
    EXPECT_THROW(bound_new(17, {1, true, false, 0}), BudgetExceeded);
    EXPECT_THROW(bound_new(9), std::invalid_argument);
    EXPECT_THROW(parse_bound_domain("half"), std::invalid_argument);
}

// Summing m over a scaling orbit from one residue vector equals summing
// freshly computed residue vectors for each scaled column set.
TEST(BoundNew, OrbitCoverage) {
    for (unsigned p : {5u, 7u}) {
        for (unsigned k = 1; k <= p; ++k)
            for (const auto& a : all_subsets(p, k))
                for (const auto& b : all_subsets(p, k)) {
                    const auto base = jacobi_trudi_residues(a, b, p);
                    BigInt via_relabel = 0, fresh = 0;
                    for (std::uint64_t l = 1; l < p; ++l) {
                        via_relabel += relabel(base, l).m();
                        fresh += jacobi_trudi_residues(a, b.scaled(l), p).m();
                    }
                    ASSERT_EQ(via_relabel, fresh);
                }
    }
}

TEST(FirstAdmissiblePrime, TableRows) {
    EXPECT_EQ(first_admissible_prime(7, 8).q, 17u);
    EXPECT_EQ(first_admissible_prime(7, 75).q, 89u);
    EXPECT_EQ(first_admissible_prime(5, 8).q, 13u);
    EXPECT_EQ(first_admissible_prime(5, 4).q, 7u);
    EXPECT_EQ(first_admissible_prime(2, 1).q, 3u);
    const auto p3 = first_admissible_prime(3, 2);
    EXPECT_EQ(p3.q, 2u);
    EXPECT_TRUE(p3.trivial_case);
    EXPECT_TRUE(p3.boundary_prime);
    // strict inequality: a bound equal to an admissible prime skips it
    const auto strict = first_admissible_prime(7, 17);
    EXPECT_EQ(strict.q, 19u);
    EXPECT_TRUE(strict.boundary_prime);
    EXPECT_FALSE(first_admissible_prime(7, 8).boundary_prime);
}

TEST(Table, UpToSeven) {
    const auto rows = reproduce_table(7);
    ASSERT_EQ(rows.size(), 4u);
    const std::vector<std::uint64_t> q_new{3, 2, 7, 17}, q_zhang{3, 2, 13, 89};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].q_new, q_new[i]);
        EXPECT_EQ(rows[i].q_zhang, q_zhang[i]);
        EXPECT_LE(rows[i].q_new, rows[i].q_zhang);
    }
}

TEST(Table, FirstPrimeVerifiesAllMinors) {
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        const auto q = first_admissible_prime(p, bound_new(p, kFull).value).q;
        EXPECT_TRUE(verify_all_minors(MinorContext::finite(build_field(p, q))).verified) << p << "," << q;
    }
}

TEST(Cache, RoundTripIsLossless) {
    const auto dir = temp_dir("cache");
    auto r = bound_new(7);
    r.value = from_decimal("123456789012345678901234567890");
    store_bound(dir, r);
    const auto back = load_cached_bound(dir, 7, BoundMethod::fresh);
    ASSERT_TRUE(back);
    EXPECT_EQ(back->value, r.value);
    EXPECT_EQ(back->argmax_a, r.argmax_a);
    EXPECT_EQ(back->argmax_b, r.argmax_b);
    EXPECT_EQ(back->work_items, r.work_items);
    EXPECT_EQ(back->pairs_covered, r.pairs_covered);
    EXPECT_EQ(back->version, r.version);
    EXPECT_DOUBLE_EQ(back->elapsed_s, r.elapsed_s);
    EXPECT_EQ(bound_to_json(*back), bound_to_json(r));

    const auto f = bound_new(5, kFull);
    store_bound(dir, f);
    EXPECT_EQ(load_cached_bound(dir, 5, BoundMethod::fresh, BoundDomain::full)->domain, BoundDomain::full);
    EXPECT_FALSE(load_cached_bound(dir, 5, BoundMethod::fresh, BoundDomain::reduced));

    const auto z = gamma_zhang(5);
    store_bound(dir, z);
    EXPECT_FALSE(load_cached_bound(dir, 5, BoundMethod::zhang)->argmax_b);
    EXPECT_FALSE(load_cached_bound(dir, 11, BoundMethod::zhang));
    std::filesystem::remove_all(dir);
}

TEST(Cache, CorruptFileIsAMiss) {
    const auto dir = temp_dir("corrupt");
    std::filesystem::create_directories(dir);
    std::ofstream(bound_cache_path(dir, 5, BoundMethod::fresh)) << "{not json";
    EXPECT_FALSE(load_cached_bound(dir, 5, BoundMethod::fresh));
    const auto r = cached_bound(5, BoundMethod::fresh, {}, dir);
    EXPECT_EQ(r.value, 4);
    EXPECT_TRUE(load_cached_bound(dir, 5, BoundMethod::fresh));
    std::filesystem::remove_all(dir);
}

TEST(Cache, TableReadsCache) {
    const auto dir = temp_dir("table");
    auto fake = bound_new(5);
    fake.value = 12;  // planted: next admissible prime above 12 is 13
    store_bound(dir, fake);
    const auto rows = reproduce_table(5, {}, dir);
    EXPECT_EQ(rows.back().q_new, 13u);
    std::filesystem::remove_all(dir);
}

namespace {

// (A,B) -> (-A^c, B^c) by the complementary-minor identity with F^{-1} = conj(F)/p,
// then both sides translated to contain 0.
std::pair<IndexSet, IndexSet> reduce_pair(IndexSet a, IndexSet b) {
    const unsigned p = a.p();
    if (2 * a.size() > p - 1 && a.size() < p) {
        std::vector<unsigned> ac, bc;
        for (unsigned x = 0; x < p; ++x) {
            if (std::find(a.begin(), a.end(), x) == a.end()) ac.push_back((p - x) % p);
            if (std::find(b.begin(), b.end(), x) == b.end()) bc.push_back(x);
        }
        a = IndexSet::from_unsorted(p, ac);
        b = IndexSet::from_unsorted(p, bc);
    }
    return {a.translated(p - a.min()), b.translated(p - b.min())};
}

}  // namespace

TEST(BoundNew, ReducedDomainMeetsEveryMinorClass) {
    std::size_t mismatches = 0;
    const auto check = [&](unsigned p, std::uint64_t q, std::size_t stride) {
        const auto ctx = MinorContext::finite(build_field(p, q));
        std::size_t n = 0, vanishing = 0;
        for (unsigned k = 1; k < p; ++k) {
            const auto subs = all_subsets(p, k);
            for (const auto& a : subs)
                for (const auto& b : subs) {
                    if (n++ % stride) continue;
                    const auto [ra, rb] = reduce_pair(a, b);
                    EXPECT_LE(2 * ra.size(), p - 1);
                    const bool v = minor_vanishes(a, b, ctx);
                    if (v != minor_vanishes(ra, rb, ctx)) ++mismatches;
                    vanishing += v;
                }
        }
        return vanishing;
    };
    check(7, 2, 1);
    check(7, 11, 1);
    EXPECT_GT(check(11, 2, 13), 0u);
    EXPECT_EQ(mismatches, 0u);
}
