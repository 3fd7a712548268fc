#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cheb {

/// Arbitrary-precision signed integer.
using BigInt = mpz_class;
/// Arbitrary-precision rational, kept in lowest terms with positive denominator.
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

inline BigInt from_decimal(const std::string& s) {
    BigInt x;
    if (x.set_str(s, 10) != 0) throw std::invalid_argument("not a decimal integer: " + s);
    return x;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline bool fits_u64(const BigInt& x) {
    return x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& x) {
    if (!fits_u64(x)) throw std::overflow_error("value does not fit in 64 bits: " + to_decimal(x));
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
    return out;
}

inline BigInt from_u64(std::uint64_t v) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return out;
}

// Uniform helpers so templated containers can build zeros and ones of any
// coefficient type, including ones that carry a modulus.
inline BigInt zero_like(const BigInt&) { return BigInt(0); }
inline BigInt one_like(const BigInt&) { return BigInt(1); }
inline bool is_zero(const BigInt& x) { return x == 0; }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero(const Rational& x) { return x == 0; }
inline std::uint64_t zero_like(std::uint64_t) { return 0; }
inline std::uint64_t one_like(std::uint64_t) { return 1; }
inline bool is_zero(std::uint64_t x) { return x == 0; }

inline std::string to_string(const BigInt& x) { return to_decimal(x); }
inline std::string to_string(const Rational& x) { return x.get_str(10); }

}  // namespace cheb
