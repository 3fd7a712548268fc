#pragma once

#include "cheb/bigint.hpp"
#include "cheb/fq.hpp"
#include "cheb/poly.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cheb {

/// Monic modulus P of degree r over F_q defining F_{q^r} = F_q[X]/P.
struct ExtModulus {
    std::uint64_t q = 2;
    std::vector<std::uint64_t> coeffs;  // low first, coeffs.back() == 1

    unsigned degree() const { return static_cast<unsigned>(coeffs.size()) - 1; }

    DensePoly<Fq> as_poly() const {
        std::vector<Fq> v;
        for (auto c : coeffs) v.emplace_back(c, q);
        return DensePoly<Fq>(std::move(v));
    }

    static std::shared_ptr<const ExtModulus> make(const DensePoly<Fq>& p) {
        if (p.degree() < 1) throw std::invalid_argument("extension modulus must have degree >= 1");
        if (p.lead().value() != 1) throw std::invalid_argument("extension modulus must be monic");
        auto m = std::make_shared<ExtModulus>();
        m->q = p.lead().modulus();
        for (const auto& c : p.coeffs()) m->coeffs.push_back(c.value());
        return m;
    }

    friend bool operator==(const ExtModulus& a, const ExtModulus& b) {
        return a.q == b.q && a.coeffs == b.coeffs;
    }
};

/// Element of F_q[X]/P, representative of degree < r.
class FqExt {
public:
    FqExt() = default;
    FqExt(std::shared_ptr<const ExtModulus> mod, std::vector<std::uint64_t> c) : mod_(std::move(mod)), c_(std::move(c)) {
        if (c_.size() > mod_->degree()) reduce_long();
        c_.resize(mod_->degree(), 0);
        for (auto& x : c_) x %= mod_->q;
    }

    static FqExt constant(std::shared_ptr<const ExtModulus> mod, std::uint64_t v) {
        std::vector<std::uint64_t> c(mod->degree(), 0);
        c[0] = v % mod->q;
        return FqExt(std::move(mod), std::move(c));
    }
    static FqExt zero(std::shared_ptr<const ExtModulus> mod) { return constant(std::move(mod), 0); }
    static FqExt one(std::shared_ptr<const ExtModulus> mod) { return constant(std::move(mod), 1); }
    /// The class of X.
    static FqExt generator(std::shared_ptr<const ExtModulus> mod) {
        std::vector<std::uint64_t> c(mod->degree() + 1, 0);
        c[1] = 1;
        return FqExt(std::move(mod), std::move(c));
    }

    const std::shared_ptr<const ExtModulus>& modulus() const { return mod_; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t q() const { return mod_->q; }

    bool is_zero() const {
        for (auto x : c_)
            if (x) return false;
        return true;
    }
    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }
    /// True if the element lies in the prime field.
    bool is_scalar() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }

    friend FqExt operator+(const FqExt& a, const FqExt& b) {
        check(a, b);
        FqExt out = a;
        for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = detail::addmod(out.c_[i], b.c_[i], a.q());
        return out;
    }
    friend FqExt operator-(const FqExt& a, const FqExt& b) {
        check(a, b);
        FqExt out = a;
        for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = detail::submod(out.c_[i], b.c_[i], a.q());
        return out;
    }
    FqExt operator-() const { return zero(mod_) - *this; }
    friend FqExt operator*(const FqExt& a, const FqExt& b) {
        check(a, b);
        const std::uint64_t q = a.q();
        const std::size_t r = a.c_.size();
        std::vector<std::uint64_t> prod(2 * r - 1, 0);
        for (std::size_t i = 0; i < r; ++i) {
            if (!a.c_[i]) continue;
            for (std::size_t j = 0; j < r; ++j)
                prod[i + j] = detail::addmod(prod[i + j], detail::mulmod(a.c_[i], b.c_[j], q), q);
        }
        return FqExt(a.mod_, std::move(prod));
    }
    friend FqExt operator*(const FqExt& a, const Fq& s) { return a.scaled(s.value()); }
    friend FqExt operator*(const Fq& s, const FqExt& a) { return a.scaled(s.value()); }
    FqExt& operator+=(const FqExt& o) { return *this = *this + o; }
    FqExt& operator-=(const FqExt& o) { return *this = *this - o; }
    FqExt& operator*=(const FqExt& o) { return *this = *this * o; }

    FqExt scaled(std::uint64_t s) const {
        FqExt out = *this;
        s %= q();
        for (auto& x : out.c_) x = detail::mulmod(x, s, q());
        return out;
    }

    FqExt pow(const BigInt& e) const {
        if (e < 0) return inverse().pow(-e);
        FqExt result = one(mod_);
        FqExt base = *this;
        const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = 0; i < bits; ++i) {
            if (mpz_tstbit(e.get_mpz_t(), i)) result *= base;
            if (i + 1 < bits) base *= base;
        }
        return result;
    }
    FqExt pow(std::uint64_t e) const { return pow(from_u64(e)); }

    /// Inverse via the extended Euclidean algorithm over F_q.
    FqExt inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero in F_{q^r}");
        using P = DensePoly<Fq>;
        const std::uint64_t q = this->q();
        P r0 = mod_->as_poly(), r1 = as_poly();
        P s0{}, s1{Fq(1, q)};
        while (!r1.is_zero()) {
            auto [quot, rem] = poly_divmod(r0, r1);
            P s2 = s0 - quot * s1;
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.degree() != 0) throw std::logic_error("extension modulus is not irreducible");
        P inv = r0.lead().inverse() * s0;
        std::vector<std::uint64_t> c;
        for (const auto& x : inv.coeffs()) c.push_back(x.value());
        return FqExt(mod_, std::move(c));
    }
    friend FqExt operator/(const FqExt& a, const FqExt& b) { return a * b.inverse(); }

    DensePoly<Fq> as_poly() const {
        std::vector<Fq> v;
        for (auto x : c_) v.emplace_back(x, q());
        return DensePoly<Fq>(std::move(v));
    }

    friend bool operator==(const FqExt& a, const FqExt& b) {
        return same_modulus(a, b) && a.c_ == b.c_;
    }
    friend bool operator!=(const FqExt& a, const FqExt& b) { return !(a == b); }

    static bool same_modulus(const FqExt& a, const FqExt& b) {
        return a.mod_ == b.mod_ || (a.mod_ && b.mod_ && *a.mod_ == *b.mod_);
    }

    std::string to_string() const { return as_poly().to_string(); }

private:
    static void check(const FqExt& a, const FqExt& b) {
        if (!same_modulus(a, b)) throw std::invalid_argument("mixing elements of different extension fields");
    }

    // Reduce an over-long coefficient vector modulo the monic modulus.
    void reduce_long() {
        const std::uint64_t q = mod_->q;
        const std::size_t r = mod_->degree();
        for (auto& x : c_) x %= q;
        for (std::size_t i = c_.size(); i-- > r;) {
            const std::uint64_t f = c_[i];
            if (!f) continue;
            c_[i] = 0;
            for (std::size_t j = 0; j < r; ++j)
                c_[i - r + j] = detail::submod(c_[i - r + j], detail::mulmod(f, mod_->coeffs[j], q), q);
        }
        c_.resize(r);
    }

    std::shared_ptr<const ExtModulus> mod_;
    std::vector<std::uint64_t> c_;
};

inline FqExt zero_like(const FqExt& x) { return FqExt::zero(x.modulus()); }
inline FqExt one_like(const FqExt& x) { return FqExt::one(x.modulus()); }
inline bool is_zero(const FqExt& x) { return x.is_zero(); }
inline std::string to_string(const FqExt& x) { return x.to_string(); }

}  // namespace cheb
