#include "cheb/minors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cheb;

namespace {

DensePoly<Fq> fq_poly(std::initializer_list<long long> low_first, std::uint64_t q) {
    std::vector<Fq> v;
    for (auto c : low_first) v.push_back(Fq::from_signed(c, q));
    return DensePoly<Fq>(std::move(v));
}

std::vector<IndexSet> all_subsets(unsigned p, unsigned k) {
    std::vector<IndexSet> out;
    for (std::uint64_t mask = 0; mask < (1ULL << p); ++mask)
        if (static_cast<unsigned>(__builtin_popcountll(mask)) == k) out.push_back(IndexSet::from_mask(p, mask));
    return out;
}

IndexSet random_subset(std::mt19937_64& rng, unsigned p, unsigned k) {
    std::vector<unsigned> pool(p);
    for (unsigned i = 0; i < p; ++i) pool[i] = i;
    std::shuffle(pool.begin(), pool.end(), rng);
    return IndexSet::from_unsorted(p, {pool.begin(), pool.begin() + k});
}

bool same_report(const MinorReport& a, const MinorReport& b) {
    return a.p == b.p && a.q == b.q && a.modulus == b.modulus && a.verified == b.verified &&
           a.first_violation == b.first_violation && a.minors_checked == b.minors_checked &&
           a.minors_evaluated == b.minors_evaluated && a.orbits_pruned == b.orbits_pruned &&
           a.violations == b.violations;
}

}  // namespace

TEST(FourierMatrix, Example19Matrix) {
    const auto s = build_field_with_modulus(5, 11, fq_poly({-3, 1}, 11));
    const auto m = fourier_matrix(s);
    const std::vector<std::uint64_t> row1{1, 3, 9, 5, 4};
    for (unsigned j = 0; j < 5; ++j) {
        EXPECT_EQ(m[1][j].coeffs()[0], row1[j]);
        EXPECT_TRUE(m[0][j].is_one());
        EXPECT_TRUE(m[j][0].is_one());
        for (unsigned k = 0; k < 5; ++k) EXPECT_EQ(m[j][k], m[k][j]);
    }
    EXPECT_FALSE(det_over_field(m).is_zero());
}

TEST(DetOverField, IdentityAndLeibnizOracle) {
    const auto mod = ExtModulus::make(fq_poly({1, 1, 0, 1}, 2));
    for (unsigned k = 1; k <= 4; ++k) {
        Matrix<FqExt> id(k, std::vector<FqExt>(k, FqExt::zero(mod)));
        for (unsigned i = 0; i < k; ++i) id[i][i] = FqExt::one(mod);
        EXPECT_TRUE(det_over_field(id).is_one());
    }
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        Matrix<FqExt> m(3);
        for (auto& row : m)
            for (int j = 0; j < 3; ++j) row.push_back(FqExt(mod, {rng() % 2, rng() % 2, rng() % 2}));
        EXPECT_EQ(det_over_field(m), det_leibniz(m, FqExt::zero(mod), FqExt::one(mod)));
    }
}

TEST(DetOverField, MixedModuliRejected) {
    const auto m1 = ExtModulus::make(fq_poly({1, 1, 0, 1}, 2));
    const auto m2 = ExtModulus::make(fq_poly({1, 0, 1, 1}, 2));
    Matrix<FqExt> m{{FqExt::one(m1), FqExt::zero(m1)}, {FqExt::zero(m2), FqExt::one(m2)}};
    EXPECT_THROW(det_over_field(m), std::invalid_argument);
}

TEST(MinorVanishes, CharZeroMatchesLeibnizP5) {
    const unsigned p = 5;
    const auto f = fourier_matrix_cyclo(p);
    const auto ctx = MinorContext::char0(p);
    for (unsigned k = 1; k <= p; ++k)
        for (const auto& a : all_subsets(p, k))
            for (const auto& b : all_subsets(p, k)) {
                const auto d = det_leibniz(submatrix(f, a, b), CycloVec(p), CycloVec::constant(p, BigInt(1)));
                EXPECT_EQ(minor_vanishes(a, b, ctx), cyclo_is_zero_mod_phi(d));
                EXPECT_FALSE(minor_vanishes(a, b, ctx));
            }
}

TEST(MinorVanishes, ResidueRouteMatchesGaussianExhaustive) {
    for (auto [p, q] : {std::pair{5u, 2ULL}, {5u, 11ULL}, {7u, 2ULL}, {7u, 11ULL}, {7u, 13ULL}}) {
        const auto s = build_field(p, q);
        const auto ctx = MinorContext::finite(s);
        const auto f = fourier_matrix(s);
        for (unsigned k = 1; k <= p; ++k)
            for (const auto& a : all_subsets(p, k))
                for (const auto& b : all_subsets(p, k))
                    ASSERT_EQ(minor_vanishes(a, b, ctx), det_over_field(submatrix(f, a, b)).is_zero())
                        << "p=" << p << " q=" << q << " A=" << a.to_string() << " B=" << b.to_string();
    }
}

TEST(MinorVanishes, SymmetryOrbitAndTranslationSoundness) {
    std::mt19937_64 rng(13);
    const auto s = build_field(11, 2);
    const auto ctx = MinorContext::finite(s);
    int vanishing = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const unsigned k = 2 + static_cast<unsigned>(rng() % 8);
        const auto a = random_subset(rng, 11, k), b = random_subset(rng, 11, k);
        const bool v = minor_vanishes(a, b, ctx);
        vanishing += v;
        EXPECT_EQ(v, minor_vanishes(b, a, ctx));
        EXPECT_EQ(v, minor_vanishes(a, b.scaled(2), ctx));
        const unsigned c = static_cast<unsigned>(rng() % 11);
        EXPECT_EQ(v, minor_vanishes(a.translated(c), b, ctx));
        EXPECT_EQ(v, minor_vanishes(a, b.translated(c), ctx));
    }
    EXPECT_GE(vanishing, 0);
    EXPECT_THROW(minor_vanishes(IndexSet(11, {0}), IndexSet(11, {0, 1}), ctx), std::invalid_argument);
}

TEST(VerifyAllMinors, CharZeroP7) {
    const auto r = verify_all_minors(MinorContext::char0(7));
    EXPECT_TRUE(r.verified);
    EXPECT_FALSE(r.first_violation);
    EXPECT_EQ(r.minors_checked, 3431);
    EXPECT_EQ(r.orbits_pruned + from_u64(r.minors_evaluated), r.minors_checked);
    EXPECT_EQ(r.q, 0u);
}

TEST(VerifyAllMinors, FiniteFieldVerdicts) {
    EXPECT_TRUE(verify_all_minors(MinorContext::finite(build_field(7, 17))).verified);
    const auto r5 = verify_all_minors(MinorContext::finite(build_field_with_modulus(5, 11, fq_poly({-3, 1}, 11))));
    EXPECT_TRUE(r5.verified);
    EXPECT_EQ(r5.minors_checked, 251);
}

// Raw brute force over every (A,B) with the Gaussian oracle.
TEST(VerifyAllMinors, NormalizationAgreesWithBruteForce) {
    for (auto [p, q] : {std::pair{5u, 2ULL}, {5u, 3ULL}, {7u, 2ULL}, {7u, 3ULL}, {7u, 5ULL}, {7u, 13ULL}}) {
        const auto s = build_field(p, q);
        const auto f = fourier_matrix(s);
        bool any = false;
        for (unsigned k = 1; k <= p && !any; ++k)
            for (const auto& a : all_subsets(p, k))
                for (const auto& b : all_subsets(p, k))
                    if (det_over_field(submatrix(f, a, b)).is_zero()) any = true;
        const auto r = verify_all_minors(MinorContext::finite(s));
        EXPECT_EQ(r.verified, !any) << "p=" << p << " q=" << q;
        if (r.first_violation) {
            EXPECT_TRUE(det_over_field(submatrix(f, r.first_violation->first, r.first_violation->second)).is_zero());
        }
    }
}

TEST(VerifyAllMinors, CounterexampleP11Q2) {
    const auto s = build_field(11, 2);
    const auto r = verify_all_minors(MinorContext::finite(s));
    ASSERT_FALSE(r.verified);
    ASSERT_TRUE(r.first_violation);
    const auto& [a, b] = *r.first_violation;
    EXPECT_EQ(a.min(), 0u);
    EXPECT_EQ(b.min(), 0u);
    EXPECT_TRUE(det_over_field(submatrix(fourier_matrix(s), a, b)).is_zero());
    EXPECT_GE(r.violations, 1u);
}

TEST(VerifyAllMinors, ThreadCountDoesNotChangeReport) {
    const auto ctx = MinorContext::finite(build_field(11, 2));
    const auto one = verify_all_minors(ctx, {1, false, false});
    const auto many = verify_all_minors(ctx, {4, false, false});
    EXPECT_TRUE(same_report(one, many));
    const auto c1 = verify_all_minors(MinorContext::char0(7), {1, false, false});
    const auto c3 = verify_all_minors(MinorContext::char0(7), {3, false, false});
    EXPECT_TRUE(same_report(c1, c3));
}

TEST(VerifyAllMinors, LimitGuard) {
    EXPECT_THROW(verify_all_minors(MinorContext::char0(13)), BudgetExceeded);
    EXPECT_THROW(verify_all_minors(MinorContext::char0(17), {1, true, false}), BudgetExceeded);
}

TEST(Uncertainty, Example19) {
    const auto r = uncertainty_min(5, 11, 3);
    EXPECT_EQ(r.min_support, 6u);
    EXPECT_EQ(r.vectors_scanned, 161050u);
    EXPECT_EQ(uncertainty_min(5, 11).min_support, 6u);
    // witness really attains the minimum
    unsigned sg = 0, sf = 0;
    for (unsigned i = 0; i < 5; ++i) {
        sg += r.witness[i] != 0;
        std::uint64_t acc = 0;
        for (unsigned j = 0; j < 5; ++j) acc = (acc + r.witness[j] * detail::powmod(3, i * j, 11)) % 11;
        sf += acc != 0;
    }
    EXPECT_EQ(sg + sf, 6u);
}

TEST(Uncertainty, Errors) {
    EXPECT_THROW(uncertainty_min(7, 2), std::invalid_argument);
    EXPECT_THROW(uncertainty_min(5, 11, 1), std::invalid_argument);
    EXPECT_THROW(uncertainty_min(11, 23), BudgetExceeded);
}
