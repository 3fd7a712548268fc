#pragma once

#include "cheb/fq.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cheb {

/// Deterministic Miller-Rabin; the fixed witness set is exact for all 64-bit n.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline void require_prime(std::uint64_t n, const char* what) {
    if (!is_prime(n)) throw std::invalid_argument(std::string(what) + " = " + std::to_string(n) + " is not prime");
}

/// Distinct prime factors, ascending (trial division; inputs here are small).
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// ord_p(q): least r >= 1 with q^r = 1 mod p. Both arguments prime and distinct.
inline unsigned mult_order(std::uint64_t q, std::uint64_t p) {
    require_prime(q, "q");
    require_prime(p, "p");
    if (p == q) throw std::invalid_argument("ord_p(q) needs p != q");
    std::uint64_t r = p - 1;
    for (std::uint64_t f : prime_factors(p - 1)) {
        while (r % f == 0 && detail::powmod(q, r / f, p) == 1) r /= f;
    }
    return static_cast<unsigned>(r);
}

inline std::uint64_t next_prime(std::uint64_t n) {
    if (n < 2) return 2;
    std::uint64_t c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 2; c <= n; ++c)
        if (is_prime(c)) out.push_back(c);
    return out;
}

}  // namespace cheb
