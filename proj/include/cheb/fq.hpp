#pragma once

#include "cheb/bigint.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cheb {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

/// Inverse modulo a prime m via Fermat.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    if (a % m == 0) throw std::domain_error("inverse of zero mod " + std::to_string(m));
    return powmod(a, m - 2, m);
}

inline std::uint64_t reduce_signed(long long v, std::uint64_t m) {
    long long r = v % static_cast<long long>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(m) : r);
}

}  // namespace detail

/// Element of the prime field F_q, stored as a canonical residue in [0, q).
class Fq {
public:
    Fq() = default;
    Fq(std::uint64_t value, std::uint64_t q) : q_(q), v_(value % q) {}
    static Fq from_signed(long long v, std::uint64_t q) { return Fq(detail::reduce_signed(v, q), q); }
    static Fq from_bigint(const BigInt& v, std::uint64_t q) {
        BigInt r = v % from_u64(q);
        if (r < 0) r += from_u64(q);
        return Fq(to_u64(r), q);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return q_; }

    friend Fq operator+(Fq a, Fq b) { check(a, b); return Fq(detail::addmod(a.v_, b.v_, a.q_), a.q_, raw_tag{}); }
    friend Fq operator-(Fq a, Fq b) { check(a, b); return Fq(detail::submod(a.v_, b.v_, a.q_), a.q_, raw_tag{}); }
    friend Fq operator*(Fq a, Fq b) { check(a, b); return Fq(detail::mulmod(a.v_, b.v_, a.q_), a.q_, raw_tag{}); }
    Fq operator-() const { return Fq(v_ == 0 ? 0 : q_ - v_, q_, raw_tag{}); }
    Fq& operator+=(Fq o) { return *this = *this + o; }
    Fq& operator-=(Fq o) { return *this = *this - o; }
    Fq& operator*=(Fq o) { return *this = *this * o; }
    Fq inverse() const { return Fq(detail::invmod(v_, q_), q_, raw_tag{}); }
    friend Fq operator/(Fq a, Fq b) { return a * b.inverse(); }

    friend bool operator==(Fq a, Fq b) { return a.q_ == b.q_ && a.v_ == b.v_; }
    friend bool operator!=(Fq a, Fq b) { return !(a == b); }

private:
    struct raw_tag {};
    Fq(std::uint64_t v, std::uint64_t q, raw_tag) : q_(q), v_(v) {}
    static void check(Fq a, Fq b) {
        if (a.q_ != b.q_) throw std::invalid_argument("mixing residues of different prime fields");
    }

    std::uint64_t q_ = 2;
    std::uint64_t v_ = 0;
};

inline Fq zero_like(const Fq& x) { return Fq(0, x.modulus()); }
inline Fq one_like(const Fq& x) { return Fq(1, x.modulus()); }
inline bool is_zero(const Fq& x) { return x.value() == 0; }
inline std::string to_string(const Fq& x) { return std::to_string(x.value()); }

}  // namespace cheb
