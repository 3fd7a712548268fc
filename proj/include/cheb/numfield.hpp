#pragma once

#include "cheb/bigint.hpp"
#include "cheb/poly.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace cheb {

/// Element of Q[X]/P for a fixed monic irreducible P, representative of degree < deg P.
class NumFieldElem {
public:
    using Poly = DensePoly<Rational>;

    NumFieldElem() = default;
    NumFieldElem(std::shared_ptr<const Poly> modulus, const Poly& rep) : mod_(std::move(modulus)) {
        if (!mod_ || mod_->degree() < 1) throw std::invalid_argument("number field modulus must have degree >= 1");
        if (mod_->lead() != 1) throw std::invalid_argument("number field modulus must be monic");
        rep_ = poly_mod(rep, *mod_);
    }

    static NumFieldElem constant(std::shared_ptr<const Poly> m, const Rational& c) {
        return NumFieldElem(std::move(m), Poly{c});
    }
    static NumFieldElem generator(std::shared_ptr<const Poly> m) {
        return NumFieldElem(std::move(m), Poly{Rational(0), Rational(1)});
    }

    const Poly& rep() const { return rep_; }
    const std::shared_ptr<const Poly>& modulus() const { return mod_; }
    bool is_zero() const { return rep_.is_zero(); }

    friend NumFieldElem operator+(const NumFieldElem& a, const NumFieldElem& b) {
        check(a, b);
        return raw(a.mod_, a.rep_ + b.rep_);
    }
    friend NumFieldElem operator-(const NumFieldElem& a, const NumFieldElem& b) {
        check(a, b);
        return raw(a.mod_, a.rep_ - b.rep_);
    }
    NumFieldElem operator-() const { return raw(mod_, -rep_); }
    friend NumFieldElem operator*(const NumFieldElem& a, const NumFieldElem& b) {
        check(a, b);
        return NumFieldElem(a.mod_, a.rep_ * b.rep_);
    }
    friend NumFieldElem operator*(const Rational& s, const NumFieldElem& a) { return raw(a.mod_, s * a.rep_); }
    friend NumFieldElem operator*(const NumFieldElem& a, const Rational& s) { return s * a; }
    NumFieldElem& operator+=(const NumFieldElem& o) { return *this = *this + o; }
    NumFieldElem& operator-=(const NumFieldElem& o) { return *this = *this - o; }
    NumFieldElem& operator*=(const NumFieldElem& o) { return *this = *this * o; }

    NumFieldElem pow(unsigned e) const {
        NumFieldElem r = constant(mod_, Rational(1)), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    /// Extended Euclid on (representative, modulus).
    NumFieldElem inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero in Q[X]/P");
        Poly r0 = *mod_, r1 = rep_;
        Poly s0{}, s1{Rational(1)};
        while (!r1.is_zero()) {
            auto [quot, rem] = poly_divmod(r0, r1);
            Poly s2 = s0 - quot * s1;
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.degree() != 0) throw std::logic_error("number field modulus is not irreducible");
        return NumFieldElem(mod_, (1 / r0.lead()) * s0);
    }
    friend NumFieldElem operator/(const NumFieldElem& a, const NumFieldElem& b) { return a * b.inverse(); }

    friend bool operator==(const NumFieldElem& a, const NumFieldElem& b) {
        return same_modulus(a, b) && a.rep_ == b.rep_;
    }
    friend bool operator!=(const NumFieldElem& a, const NumFieldElem& b) { return !(a == b); }

    static bool same_modulus(const NumFieldElem& a, const NumFieldElem& b) {
        return a.mod_ == b.mod_ || (a.mod_ && b.mod_ && *a.mod_ == *b.mod_);
    }

    std::string to_string() const { return rep_.to_string(); }

private:
    static NumFieldElem raw(const std::shared_ptr<const Poly>& m, Poly rep) {
        NumFieldElem e;
        e.mod_ = m;
        e.rep_ = std::move(rep);
        return e;
    }
    static void check(const NumFieldElem& a, const NumFieldElem& b) {
        if (!same_modulus(a, b)) throw std::invalid_argument("mixing elements of different number fields");
    }

    std::shared_ptr<const Poly> mod_;
    Poly rep_;
};

inline NumFieldElem zero_like(const NumFieldElem& x) { return NumFieldElem::constant(x.modulus(), Rational(0)); }
inline NumFieldElem one_like(const NumFieldElem& x) { return NumFieldElem::constant(x.modulus(), Rational(1)); }
inline bool is_zero(const NumFieldElem& x) { return x.is_zero(); }

}  // namespace cheb
