#pragma once

#include "cheb/bigint.hpp"
#include "cheb/fq.hpp"
#include "cheb/fq_ext.hpp"
#include "cheb/poly.hpp"
#include "cheb/primes.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

namespace cheb {

inline constexpr std::uint64_t kDefaultFieldSeed = 20240917;

/// F_{q^r} = F_q[X]/Pbar with Pbar an irreducible factor of Phi_p mod q and
/// omega = X a primitive p-th root of unity.
struct FieldSetup {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    unsigned r = 0;
    std::shared_ptr<const ExtModulus> modulus;
    FqExt omega;
    std::vector<FqExt> powers;  // omega^t for t = 0..p-1

    DensePoly<Fq> pbar() const { return modulus->as_poly(); }
    const FqExt& omega_pow(std::uint64_t t) const { return powers[t % p]; }
};

/// Partition of F_p^x into cosets of <q>, least element of each coset as representative.
struct CosetTable {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    unsigned r = 0;
    std::vector<std::uint64_t> reps;    // ascending
    std::vector<std::uint64_t> rep_of;  // rep_of[i] for i = 1..p-1; rep_of[0] = 0
    std::vector<std::vector<std::uint64_t>> members;  // sorted, parallel to reps
};

/// L[i] for i = 1..p-1: the coefficient of Y^{r-1} in the minimal polynomial of
/// omega^i. This is the raw coefficient, i.e. minus the sum of the conjugates,
/// not the classical field trace.
struct TraceTable {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> L;  // index 0 unused
};

namespace detail {

/// Compare two polynomials as written, highest degree first.
inline bool poly_less_high_first(const DensePoly<Fq>& a, const DensePoly<Fq>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i].value() != b[i].value()) return a[i].value() < b[i].value();
    }
    return false;
}

inline std::vector<std::uint64_t> orbit_exponents(std::uint64_t p, std::uint64_t q, unsigned r, std::uint64_t i) {
    std::vector<std::uint64_t> out;
    std::uint64_t e = i % p;
    for (unsigned l = 0; l < r; ++l) {
        out.push_back(e);
        e = mulmod(e, q % p, p);
    }
    return out;
}

/// prod_l (Y - e^{q^l}); coefficients must land in the prime field.
inline DensePoly<Fq> orbit_polynomial(const FqExt& e, unsigned r) {
    const auto& mod = e.modulus();
    DensePoly<FqExt> acc{FqExt::one(mod)};
    FqExt conj = e;
    for (unsigned l = 0; l < r; ++l) {
        acc *= DensePoly<FqExt>{-conj, FqExt::one(mod)};
        conj = conj.pow(mod->q);
    }
    std::vector<Fq> out;
    for (const auto& c : acc.coeffs()) {
        if (!c.is_scalar()) throw std::logic_error("orbit polynomial has coefficients outside F_q");
        out.emplace_back(c.coeffs()[0], mod->q);
    }
    return DensePoly<Fq>(std::move(out));
}

/// Rabin irreducibility test for a monic polynomial over F_q.
inline bool is_irreducible(const DensePoly<Fq>& f) {
    const unsigned r = static_cast<unsigned>(f.degree());
    if (r == 1) return true;
    const std::uint64_t q = f.lead().modulus();
    auto mod = ExtModulus::make(f);
    const FqExt x = FqExt::generator(mod);
    std::vector<FqExt> frob{x};  // frob[i] = X^{q^i} mod f
    for (unsigned i = 1; i <= r; ++i) frob.push_back(frob.back().pow(q));
    if (frob[r] != x) return false;
    for (std::uint64_t d : prime_factors(r)) {
        auto g = poly_gcd((frob[r / d] - x).as_poly(), f);
        if (g.degree() != 0) return false;
    }
    return true;
}

inline std::shared_ptr<const ExtModulus> random_irreducible(std::uint64_t q, unsigned r, std::mt19937_64& rng) {
    for (;;) {
        std::vector<Fq> c;
        for (unsigned i = 0; i < r; ++i) c.emplace_back(rng() % q, q);
        c.emplace_back(1, q);
        DensePoly<Fq> f(std::move(c));
        if (f.degree() == static_cast<int>(r) && is_irreducible(f)) return ExtModulus::make(f);
    }
}

inline FieldSetup setup_from_modulus(std::uint64_t p, std::uint64_t q, unsigned r,
                                     std::shared_ptr<const ExtModulus> mod) {
    FieldSetup s;
    s.p = p;
    s.q = q;
    s.r = r;
    s.modulus = std::move(mod);
    s.omega = FqExt::generator(s.modulus);
    FqExt cur = FqExt::one(s.modulus);
    for (std::uint64_t t = 0; t < p; ++t) {
        s.powers.push_back(cur);
        cur *= s.omega;
    }
    if (!cur.is_one() || s.omega.is_one()) throw std::logic_error("omega is not a primitive p-th root of unity");
    return s;
}

}  // namespace detail

inline CosetTable coset_table(std::uint64_t p, std::uint64_t q) {
    CosetTable t;
    t.p = p;
    t.q = q;
    t.r = mult_order(q, p);
    t.rep_of.assign(p, 0);
    for (std::uint64_t i = 1; i < p; ++i) {
        if (t.rep_of[i]) continue;
        std::vector<std::uint64_t> orbit = detail::orbit_exponents(p, q, t.r, i);
        std::sort(orbit.begin(), orbit.end());
        for (auto e : orbit) t.rep_of[e] = i;
        t.reps.push_back(i);
        t.members.push_back(std::move(orbit));
    }
    return t;
}

/// Builds F_{q^r} with a canonical Pbar: a primitive p-th root is found in a
/// scratch field as z^{(q^r-1)/p}, every conjugate factor of Phi_p is formed
/// from it, and the smallest (compared as written) becomes the modulus.
inline FieldSetup build_field(std::uint64_t p, std::uint64_t q, std::uint64_t seed = kDefaultFieldSeed) {
    const unsigned r = mult_order(q, p);
    std::mt19937_64 rng(seed);
    auto scratch = detail::random_irreducible(q, r, rng);
    BigInt exponent;
    mpz_pow_ui(exponent.get_mpz_t(), from_u64(q).get_mpz_t(), r);
    exponent = (exponent - 1) / from_u64(p);
    FqExt root;
    for (;;) {
        std::vector<std::uint64_t> c;
        for (unsigned i = 0; i < r; ++i) c.push_back(rng() % q);
        FqExt z(scratch, c);
        if (z.is_zero()) continue;
        root = z.pow(exponent);
        if (!root.is_one()) break;
    }
    const CosetTable cosets = coset_table(p, q);
    std::vector<DensePoly<Fq>> factors;
    for (auto rep : cosets.reps) factors.push_back(detail::orbit_polynomial(root.pow(rep), r));
    auto best = std::min_element(factors.begin(), factors.end(), detail::poly_less_high_first);
    return detail::setup_from_modulus(p, q, r, ExtModulus::make(*best));
}

/// Uses a caller-chosen factor Pbar of Phi_p mod q (e.g. X - 3 for p = 5, q = 11).
inline FieldSetup build_field_with_modulus(std::uint64_t p, std::uint64_t q, const DensePoly<Fq>& pbar) {
    const unsigned r = mult_order(q, p);
    if (pbar.degree() != static_cast<int>(r))
        throw std::invalid_argument("modulus degree must equal ord_p(q) = " + std::to_string(r));
    if (pbar.lead().modulus() != q) throw std::invalid_argument("modulus coefficients are not over F_q");
    if (!poly_mod(cyclotomic_prime(p, Fq(1, q)), pbar).is_zero())
        throw std::invalid_argument("modulus does not divide Phi_p over F_q");
    return detail::setup_from_modulus(p, q, r, ExtModulus::make(pbar));
}

/// [omega^{i q^l mod p} for l = 0..r-1]
inline std::vector<FqExt> frobenius_orbit(const FieldSetup& s, std::uint64_t i) {
    if (i % s.p == 0) throw std::invalid_argument("frobenius orbit of exponent divisible by p");
    std::vector<FqExt> out;
    for (auto e : detail::orbit_exponents(s.p, s.q, s.r, i)) out.push_back(s.omega_pow(e));
    return out;
}

inline DensePoly<Fq> minimal_polynomial_of_power(const FieldSetup& s, std::uint64_t i) {
    return detail::orbit_polynomial(s.omega_pow(i), s.r);
}

inline TraceTable trace_table(const FieldSetup& s) {
    TraceTable t;
    t.p = s.p;
    t.q = s.q;
    t.L.assign(s.p, 0);
    for (std::uint64_t i = 1; i < s.p; ++i) {
        const auto mp = minimal_polynomial_of_power(s, i);
        t.L[i] = mp.coeffs()[s.r - 1].value();
    }
    return t;
}

/// Irreducible factors of Phi_p over F_q, smallest first (compared as written).
inline std::vector<DensePoly<Fq>> cyclotomic_factors(std::uint64_t p, std::uint64_t q,
                                                     std::uint64_t seed = kDefaultFieldSeed) {
    const FieldSetup s = build_field(p, q, seed);
    std::vector<DensePoly<Fq>> out;
    for (auto rep : coset_table(p, q).reps) out.push_back(minimal_polynomial_of_power(s, rep));
    std::sort(out.begin(), out.end(), detail::poly_less_high_first);
    return out;
}

}  // namespace cheb
