#pragma once

#include "cheb/bigint.hpp"
#include "cheb/fq.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cheb {

namespace detail {

inline Rational leading_inverse(const Rational& lead) { return 1 / lead; }
inline Fq leading_inverse(const Fq& lead) { return lead.inverse(); }
template <class T>
bool coeff_is_zero(const T& x) {
    return is_zero(x);
}

template <class T>
std::string coeff_to_string(const T& x) {
    return to_string(x);
}

inline BigInt leading_inverse(const BigInt& lead) {
    if (lead != 1) throw std::domain_error("division over Z requires a monic divisor");
    return BigInt(1);
}

}  // namespace detail

/// Dense univariate polynomial, coefficients lowest degree first.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
template <class T>
class DensePoly {
public:
    using value_type = T;

    DensePoly() = default;
    explicit DensePoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    DensePoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    /// c * X^n
    static DensePoly monomial(const T& c, std::size_t n) {
        std::vector<T> v(n + 1, zero_like(c));
        v[n] = c;
        return DensePoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }
    const T& lead() const { return c_.back(); }

    /// Coefficient of X^i; `zero` is returned past the degree.
    T coeff(std::size_t i, const T& zero) const { return i < c_.size() ? c_[i] : zero; }
    const T& operator[](std::size_t i) const { return c_.at(i); }

    template <class U>
    U evaluate(const U& x) const {
        if (c_.empty()) return zero_like(x);
        U acc = one_like(x) * c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + one_like(x) * c_[i];
        return acc;
    }
    T operator()(const T& x) const { return evaluate(x); }

    friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
        const DensePoly& big = a.size() >= b.size() ? a : b;
        const DensePoly& small = a.size() >= b.size() ? b : a;
        std::vector<T> v = big.c_;
        for (std::size_t i = 0; i < small.size(); ++i) v[i] = v[i] + small.c_[i];
        return DensePoly(std::move(v));
    }
    DensePoly operator-() const {
        std::vector<T> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(zero_like(x) - x);
        return DensePoly(std::move(v));
    }
    friend DensePoly operator-(const DensePoly& a, const DensePoly& b) { return a + (-b); }
    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> v(a.size() + b.size() - 1, zero_like(a.c_[0]));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (detail::coeff_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        }
        return DensePoly(std::move(v));
    }
    friend DensePoly operator*(const T& s, const DensePoly& a) {
        std::vector<T> v;
        v.reserve(a.size());
        for (const auto& x : a.c_) v.push_back(s * x);
        return DensePoly(std::move(v));
    }
    DensePoly& operator+=(const DensePoly& o) { return *this = *this + o; }
    DensePoly& operator-=(const DensePoly& o) { return *this = *this - o; }
    DensePoly& operator*=(const DensePoly& o) { return *this = *this * o; }

    friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

    /// p(s*X)
    DensePoly scale_argument(const T& s) const {
        std::vector<T> v = c_;
        if (v.empty()) return {};
        T pw = one_like(s);
        for (auto& x : v) {
            x = x * pw;
            pw = pw * s;
        }
        return DensePoly(std::move(v));
    }

    std::string to_string(const std::string& var = "X") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (detail::coeff_is_zero(c_[i])) continue;
            if (!first) os << " + ";
            first = false;
            const std::string cs = detail::coeff_to_string(c_[i]);
            if (i == 0)
                os << cs;
            else {
                if (cs != "1") os << cs << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

/// Euclidean division f = quot*g + rem with deg rem < deg g.
/// Over Z the divisor must be monic.
template <class T>
std::pair<DensePoly<T>, DensePoly<T>> poly_divmod(const DensePoly<T>& f, const DensePoly<T>& g) {
    if (g.is_zero()) throw std::domain_error("polynomial division by zero");
    const T inv = detail::leading_inverse(g.lead());
    if (f.degree() < g.degree()) return {DensePoly<T>{}, f};
    std::vector<T> rem = f.coeffs();
    const T zero = zero_like(g.lead());
    std::vector<T> quot(f.size() - g.size() + 1, zero);
    const auto dg = static_cast<std::size_t>(g.degree());
    for (std::size_t i = quot.size(); i-- > 0;) {
        const T factor = rem[i + dg] * inv;
        quot[i] = factor;
        if (detail::coeff_is_zero(factor)) continue;
        for (std::size_t j = 0; j <= dg; ++j) rem[i + j] = rem[i + j] - factor * g.coeffs()[j];
    }
    rem.resize(dg);
    return {DensePoly<T>(std::move(quot)), DensePoly<T>(std::move(rem))};
}

template <class T>
DensePoly<T> poly_mod(const DensePoly<T>& f, const DensePoly<T>& g) {
    return poly_divmod(f, g).second;
}

/// Monic gcd over a field.
template <class T>
DensePoly<T> poly_gcd(DensePoly<T> a, DensePoly<T> b) {
    while (!b.is_zero()) {
        auto r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return detail::leading_inverse(a.lead()) * a;
}

/// X^p - 1 / (X - 1) = 1 + X + ... + X^{p-1} with coefficients cloned from `one`.
template <class T>
DensePoly<T> cyclotomic_prime(std::size_t p, const T& one) {
    return DensePoly<T>(std::vector<T>(p, one));
}

}  // namespace cheb
