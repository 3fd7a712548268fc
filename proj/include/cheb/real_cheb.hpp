#pragma once

#include "cheb/bigint.hpp"
#include "cheb/det.hpp"
#include "cheb/minors.hpp"
#include "cheb/numfield.hpp"
#include "cheb/parallel.hpp"
#include "cheb/poly.hpp"
#include "cheb/primes.hpp"

#include <quadmath.h>

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cheb {

namespace detail {

inline unsigned require_odd_prime(std::uint64_t p) {
    require_prime(p, "p");
    if (p == 2) throw std::invalid_argument("p must be an odd prime");
    return static_cast<unsigned>(p);
}

inline DensePoly<Rational> to_rational(const DensePoly<BigInt>& f) {
    std::vector<Rational> v;
    for (const auto& c : f.coeffs()) v.emplace_back(c);
    return DensePoly<Rational>(std::move(v));
}

}  // namespace detail

/// Minimal polynomial of 2cos(2 pi/p), degree n = (p-1)/2:
/// sum_{k <= n/2} (-1)^k C(n-k,k) X^{n-2k} + sum_{k < n/2} (-1)^k C(n-k-1,k) X^{n-2k-1}.
inline DensePoly<BigInt> cosine_minpoly(std::uint64_t p) {
    const unsigned n = (detail::require_odd_prime(p) - 1) / 2;
    std::vector<BigInt> c(n + 1, BigInt(0));
    for (unsigned k = 0; 2 * k <= n; ++k) {
        const BigInt b = binomial(n - k, k);
        c[n - 2 * k] += (k % 2 ? BigInt(-b) : b);
    }
    for (unsigned k = 0; 2 * k < n; ++k) {
        const BigInt b = binomial(n - k - 1, k);
        c[n - 2 * k - 1] += (k % 2 ? BigInt(-b) : b);
    }
    return DensePoly<BigInt>(std::move(c));
}

/// Chebyshev T_0..T_n by T_j = 2x T_{j-1} - T_{j-2}.
inline std::vector<DensePoly<BigInt>> chebyshev_t(unsigned n) {
    std::vector<DensePoly<BigInt>> t{DensePoly<BigInt>{BigInt(1)}, DensePoly<BigInt>{BigInt(0), BigInt(1)}};
    const DensePoly<BigInt> two_x{BigInt(0), BigInt(2)};
    while (t.size() <= n) t.push_back(two_x * t[t.size() - 1] - t[t.size() - 2]);
    t.resize(n + 1);
    return t;
}

/// 2 (T_p(X/2) - 1) == P(X)^2 (X - 2) over Q.
inline bool chebyshev_identity_check(std::uint64_t p) {
    const unsigned pu = detail::require_odd_prime(p);
    const auto tp = detail::to_rational(chebyshev_t(pu).back());
    const auto lhs = Rational(2) * (tp.scale_argument(Rational(1, 2)) - DensePoly<Rational>{Rational(1)});
    const auto P = detail::to_rational(cosine_minpoly(pu));
    const auto rhs = P * P * DensePoly<Rational>{Rational(-2), Rational(1)};
    return lhs == rhs;
}

/// P(2) == p.
inline bool minpoly_at_two_check(std::uint64_t p) { return cosine_minpoly(p)(BigInt(2)) == from_u64(p); }

/// phi_0 = 2, phi_1 = X, phi_j = X phi_{j-1} - phi_{j-2}: phi_j(w + 1/w) = w^j + w^{-j}.
inline std::vector<DensePoly<BigInt>> phi_polynomials(unsigned jmax) {
    std::vector<DensePoly<BigInt>> f{DensePoly<BigInt>{BigInt(2)}, DensePoly<BigInt>{BigInt(0), BigInt(1)}};
    const DensePoly<BigInt> x{BigInt(0), BigInt(1)};
    while (f.size() <= jmax) f.push_back(x * f[f.size() - 1] - f[f.size() - 2]);
    f.resize(jmax + 1);
    return f;
}

/// Index m mod p mapped to min(m, p - m), so 2cos(2 pi m/p) = node of the folded index.
inline unsigned fold_index(std::uint64_t m, unsigned p) {
    const auto r = static_cast<unsigned>(m % p);
    return std::min(r, p - r);
}

/// Q(2cos(2 pi/p)) = Q[X]/P with g[j] = phi_j(X) mod P for j = 0..n.
struct CosineField {
    unsigned p = 0;
    unsigned n = 0;
    std::shared_ptr<const DensePoly<Rational>> modulus;
    std::vector<NumFieldElem> g;

    /// phi_{fold(m)} mod P: the image of w^m + w^{-m}.
    const NumFieldElem& node(std::uint64_t m) const { return g.at(fold_index(m, p)); }
};

inline CosineField cosine_field(std::uint64_t p) {
    CosineField f;
    f.p = detail::require_odd_prime(p);
    f.n = (f.p - 1) / 2;
    f.modulus = std::make_shared<const DensePoly<Rational>>(detail::to_rational(cosine_minpoly(p)));
    for (const auto& ph : phi_polynomials(f.n)) f.g.emplace_back(f.modulus, detail::to_rational(ph));
    return f;
}

/// phi_1..phi_n reduced mod P.
inline std::vector<NumFieldElem> phi_sequence(std::uint64_t p) {
    auto f = cosine_field(p);
    return {f.g.begin() + 1, f.g.end()};
}

inline constexpr unsigned kRoutineRealN = 8;

namespace detail {

inline std::vector<IndexSet> subsets_of_size(unsigned n, unsigned k) {
    std::vector<IndexSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        if (static_cast<unsigned>(__builtin_popcountll(mask)) == k) out.push_back(IndexSet::from_mask(n, mask));
    std::sort(out.begin(), out.end());
    return out;
}

/// Every square minor of a (possibly rectangular) matrix over the cosine
/// field; rows/columns in the report are 0-based positions in the matrix.
inline MinorReport all_minors_nonzero(const Matrix<NumFieldElem>& m, const CosineField& f, const VerifyOptions& opt,
                                      const std::string& matrix_label) {
    const auto t0 = std::chrono::steady_clock::now();
    const unsigned rows = static_cast<unsigned>(m.size());
    const unsigned cols = static_cast<unsigned>(m.at(0).size());
    if (rows > kRoutineRealN && !opt.force)
        throw BudgetExceeded("matrix size " + std::to_string(rows) + " exceeds the routine limit " +
                             std::to_string(kRoutineRealN) + "; use --force");
    std::vector<std::pair<IndexSet, IndexSet>> items;
    for (unsigned k = 1; k <= std::min(rows, cols); ++k) {
        const auto rs = subsets_of_size(rows, k);
        const auto cs = subsets_of_size(cols, k);
        for (const auto& r : rs)
            for (const auto& c : cs) items.emplace_back(r, c);
    }
    const auto zero = NumFieldElem::constant(f.modulus, Rational(0));
    const auto one = NumFieldElem::constant(f.modulus, Rational(1));
    const auto flags = parallel_map<unsigned char>(items.size(), opt.threads, [&](std::size_t i) {
        return static_cast<unsigned char>(det_gauss(submatrix(m, items[i].first, items[i].second), zero, one).is_zero());
    });
    MinorReport rep;
    rep.p = f.p;
    rep.modulus = f.modulus->to_string();
    rep.matrix = matrix_label;
    rep.minors_checked = from_u64(items.size());
    rep.minors_evaluated = items.size();
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!flags[i]) continue;
        ++rep.violations;
        if (!rep.first_violation) rep.first_violation = items[i];
    }
    rep.verified = !rep.first_violation;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace detail

/// n x (n+1) matrix (phi_j(X)^m mod P), j = 1..n, m = 0..n: nodes 2cos(2 pi j/p).
/// Columns 1..n give the square matrix of powers 1..n, columns 0..n-1 the
/// classical Vandermonde matrix.
inline Matrix<NumFieldElem> real_vandermonde(const CosineField& f) {
    Matrix<NumFieldElem> m(f.n);
    for (unsigned j = 1; j <= f.n; ++j)
        for (unsigned e = 0; e <= f.n; ++e) m[j - 1].push_back(f.g[j].pow(e));
    return m;
}

/// n x n matrix (2cos(2 pi k j/p)), k, j = 1..n.
inline Matrix<NumFieldElem> dct_matrix(const CosineField& f) {
    Matrix<NumFieldElem> m(f.n);
    for (unsigned k = 1; k <= f.n; ++k)
        for (unsigned j = 1; j <= f.n; ++j) m[k - 1].push_back(f.node(std::uint64_t{k} * j));
    return m;
}

inline MinorReport verify_real_minors(std::uint64_t p, const VerifyOptions& opt = {}) {
    const auto f = cosine_field(p);
    return detail::all_minors_nonzero(real_vandermonde(f), f, opt, "(2cos(2 pi j/p))^m, j = 1..n, m = 0..n");
}

inline MinorReport verify_dct_minors(std::uint64_t p, const VerifyOptions& opt = {}) {
    const auto f = cosine_field(p);
    return detail::all_minors_nonzero(dct_matrix(f), f, opt, "2cos(2 pi k j/p), k,j = 1..n");
}

// ---- floating-point screen (never a verdict) ----

struct FloatScreen {
    std::size_t minors = 0;
    double min_abs_det = 0;  // smallest |det| over all minors
    bool all_above = true;   // every |det| > threshold
};

namespace detail {

inline __float128 det_quad(std::vector<std::vector<__float128>> a) {
    const std::size_t n = a.size();
    __float128 det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (fabsq(a[r][c]) > fabsq(a[piv][c])) piv = r;
        if (a[piv][c] == 0) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const __float128 f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

}  // namespace detail

/// Quad-precision minors of the real matrix; `dct` selects the 2cos(2 pi k j/p) matrix.
inline FloatScreen float_minor_screen(std::uint64_t p, bool dct, double threshold = 1e-8) {
    const unsigned pu = detail::require_odd_prime(p);
    const unsigned n = (pu - 1) / 2;
    const __float128 two_pi = 2 * M_PIq;
    const unsigned cols = dct ? n : n + 1;
    std::vector<std::vector<__float128>> m(n, std::vector<__float128>(cols));
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 0; j < cols; ++j) {
            if (dct) {
                m[i - 1][j] = 2 * cosq(two_pi * ((i * (j + 1)) % pu) / pu);
            } else {
                const __float128 node = 2 * cosq(two_pi * i / pu);
                m[i - 1][j] = powq(node, j);
            }
        }
    FloatScreen s;
    s.min_abs_det = -1;
    for (unsigned k = 1; k <= n; ++k) {
        const auto rs = detail::subsets_of_size(n, k);
        const auto cs = detail::subsets_of_size(cols, k);
        for (const auto& r : rs)
            for (const auto& c : cs) {
                std::vector<std::vector<__float128>> sub;
                for (auto i : r) {
                    std::vector<__float128> row;
                    for (auto j : c) row.push_back(m[i][j]);
                    sub.push_back(std::move(row));
                }
                const double d = static_cast<double>(fabsq(detail::det_quad(std::move(sub))));
                if (s.min_abs_det < 0 || d < s.min_abs_det) s.min_abs_det = d;
                if (!(d > threshold)) s.all_above = false;
                ++s.minors;
            }
    }
    return s;
}

struct RealIdentityReport {
    unsigned p = 0;
    bool minpoly_at_two = false;      // P(2) = p
    bool chebyshev_identity = false;  // 2(T_p(X/2) - 1) = P^2 (X - 2)
    bool phi_fixed_point = false;     // phi_j(2) = 2, j = 1..n
    bool phi_composition = false;     // phi_j(phi_k) = phi_{fold(jk)} mod P, all j,k <= n
    bool all() const { return minpoly_at_two && chebyshev_identity && phi_fixed_point && phi_composition; }
};

inline bool phi_composition_check(const CosineField& f, unsigned j, unsigned k) {
    const auto phj = detail::to_rational(phi_polynomials(j).back());
    return phj.evaluate(f.g.at(fold_index(k, f.p))) == f.node(std::uint64_t{j} * k);
}

inline RealIdentityReport real_identities(std::uint64_t p) {
    RealIdentityReport r;
    r.p = detail::require_odd_prime(p);
    r.minpoly_at_two = minpoly_at_two_check(p);
    r.chebyshev_identity = chebyshev_identity_check(p);
    const unsigned n = (r.p - 1) / 2;
    r.phi_fixed_point = true;
    for (const auto& ph : phi_polynomials(n)) r.phi_fixed_point &= ph(BigInt(2)) == 2;
    const auto f = cosine_field(p);
    r.phi_composition = true;
    for (unsigned j = 1; j <= n; ++j)
        for (unsigned k = 1; k <= n; ++k) r.phi_composition &= phi_composition_check(f, j, k);
    return r;
}

}  // namespace cheb
