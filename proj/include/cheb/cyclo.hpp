#pragma once

#include "cheb/bigint.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cheb {

/// Element of T[X]/(X^p - 1) as a length-p coefficient vector; X^p reduction
/// is index wraparound. With T = BigInt this is the home of Z[X]/Phi_p via
/// the all-coordinates-equal zero test. T = uint64_t gives arithmetic mod 2^64.
template <class T>
class CyclicPoly {
public:
    CyclicPoly() = default;
    explicit CyclicPoly(unsigned p) : c_(p, T(0)) {
        if (p == 0) throw std::invalid_argument("cyclic modulus must be positive");
    }
    CyclicPoly(unsigned p, std::vector<T> coeffs) : c_(std::move(coeffs)) {
        if (c_.size() != p) throw std::invalid_argument("cyclic vector must have exactly p entries");
    }

    /// c * X^e (e reduced mod p).
    static CyclicPoly monomial(unsigned p, std::uint64_t e, const T& c = T(1)) {
        CyclicPoly out(p);
        out.c_[e % p] = c;
        return out;
    }
    static CyclicPoly constant(unsigned p, const T& c) { return monomial(p, 0, c); }
    /// 1 + X + ... + X^{p-1}
    static CyclicPoly phi(unsigned p) { return CyclicPoly(p, std::vector<T>(p, T(1))); }

    unsigned p() const { return static_cast<unsigned>(c_.size()); }
    const std::vector<T>& coeffs() const { return c_; }
    std::vector<T>& coeffs() { return c_; }
    const T& operator[](std::size_t t) const { return c_[t]; }
    T& operator[](std::size_t t) { return c_[t]; }

    friend CyclicPoly operator+(CyclicPoly a, const CyclicPoly& b) { return a += b; }
    friend CyclicPoly operator-(CyclicPoly a, const CyclicPoly& b) { return a -= b; }
    CyclicPoly& operator+=(const CyclicPoly& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    CyclicPoly& operator-=(const CyclicPoly& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    CyclicPoly operator-() const { return CyclicPoly(p()) - *this; }
    friend CyclicPoly operator*(const CyclicPoly& a, const CyclicPoly& b) {
        a.check(b);
        const std::size_t p = a.c_.size();
        CyclicPoly out(static_cast<unsigned>(p));
        for (std::size_t i = 0; i < p; ++i) {
            if (a.c_[i] == 0) continue;
            std::size_t t = i;
            for (std::size_t j = 0; j < p; ++j) {
                out.c_[t] += a.c_[i] * b.c_[j];
                if (++t == p) t = 0;
            }
        }
        return out;
    }
    CyclicPoly& operator*=(const CyclicPoly& o) { return *this = *this * o; }
    friend CyclicPoly operator*(const T& s, CyclicPoly a) {
        for (auto& x : a.c_) x *= s;
        return a;
    }

    /// Multiply by X^s.
    CyclicPoly shifted(std::uint64_t s) const {
        const std::size_t p = c_.size();
        CyclicPoly out(static_cast<unsigned>(p));
        for (std::size_t t = 0; t < p; ++t) out.c_[(t + s) % p] = c_[t];
        return out;
    }

    /// Image under X -> X^l, l a unit mod p: out[l*t] = in[t].
    CyclicPoly relabeled(std::uint64_t l) const {
        const std::size_t p = c_.size();
        CyclicPoly out(static_cast<unsigned>(p));
        for (std::size_t t = 0; t < p; ++t) out.c_[(t * l) % p] = c_[t];
        return out;
    }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    /// Phi_p divides v in T[X]/(X^p-1) iff all p coordinates agree.
    bool is_zero_mod_phi() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != c_[0]) return false;
        return true;
    }

    /// Sum of coefficients = value at X = 1.
    T value_at_one() const {
        T s(0);
        for (const auto& x : c_) s += x;
        return s;
    }

    friend bool operator==(const CyclicPoly& a, const CyclicPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const CyclicPoly& a, const CyclicPoly& b) { return !(a == b); }

private:
    void check(const CyclicPoly& o) const {
        if (o.c_.size() != c_.size()) throw std::invalid_argument("cyclic vectors with different p");
    }

    std::vector<T> c_;
};

template <class T>
bool is_zero(const CyclicPoly<T>& v) {
    return v.is_zero();
}

using CycloVec = CyclicPoly<BigInt>;

inline bool cyclo_is_zero_mod_phi(const CycloVec& v) { return v.is_zero_mod_phi(); }

}  // namespace cheb
