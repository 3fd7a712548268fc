#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cheb {

template <class T>
using Matrix = std::vector<std::vector<T>>;

namespace detail {

template <class T>
void require_square(const Matrix<T>& m) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw std::invalid_argument("determinant of a non-square matrix");
}

}  // namespace detail

/// Division-free determinant by Laplace expansion along rows, memoised over
/// column subsets: n * 2^(n-1) ring multiplications. Works over any
/// commutative ring, zero divisors included. `zero`/`one` seed the ring.
template <class T>
T det_laplace(const Matrix<T>& m, const T& zero, const T& one) {
    detail::require_square(m);
    const std::size_t n = m.size();
    if (n == 0) return one;
    if (n > 24) throw std::invalid_argument("det_laplace limited to n <= 24");
    // d[S] = det(rows 0..|S|-1, columns S in increasing order)
    std::vector<T> d(std::size_t{1} << n, zero);
    d[0] = one;
    for (std::uint32_t s = 1; s < d.size(); ++s) {
        const auto row = static_cast<std::size_t>(__builtin_popcount(s)) - 1;
        T acc = zero;
        bool any = false;
        int above = 0;  // set bits of s greater than c
        for (std::size_t c = n; c-- > 0;) {
            if (!(s & (1u << c))) continue;
            const std::uint32_t rest = s & ~(1u << c);
            if (!(m[row][c] == zero) && !(d[rest] == zero)) {
                T term = m[row][c] * d[rest];
                if (above & 1)
                    acc = acc - term;
                else
                    acc = acc + term;
                any = true;
            }
            ++above;
        }
        if (any) d[s] = std::move(acc);
    }
    return d.back();
}

/// Bird's division-free determinant, O(n^4) ring operations.
template <class T>
T det_bird(const Matrix<T>& a, const T& zero, const T& one) {
    detail::require_square(a);
    const std::size_t n = a.size();
    if (n == 0) return one;
    Matrix<T> x = a;
    for (std::size_t step = 1; step < n; ++step) {
        // mu(X): strictly upper part of X, diagonal replaced by minus trailing diagonal sums.
        Matrix<T> mu(n, std::vector<T>(n, zero));
        T running = zero;
        for (std::size_t i = n; i-- > 0;) {
            mu[i][i] = zero - running;
            running = running + x[i][i];
            for (std::size_t j = i + 1; j < n; ++j) mu[i][j] = x[i][j];
        }
        Matrix<T> next(n, std::vector<T>(n, zero));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i; k < n; ++k) {
                if (mu[i][k] == zero) continue;
                for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] + mu[i][k] * a[k][j];
            }
        x = std::move(next);
    }
    if (n % 2 == 1) return x[0][0];
    return T(zero - x[0][0]);
}

/// Determinant over a field by Gaussian elimination with exact inversion.
template <class T>
T det_gauss(Matrix<T> m, const T& zero, const T& one) {
    detail::require_square(m);
    const std::size_t n = m.size();
    T det = one;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == zero) ++piv;
        if (piv == n) return zero;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = zero - det;
        }
        det = det * m[col][col];
        const T inv = one / m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == zero) continue;
            const T f = m[r][col] * inv;
            for (std::size_t c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
        }
    }
    return det;
}

/// Leibniz expansion over all permutations; test oracle only.
template <class T>
T det_leibniz(const Matrix<T>& m, const T& zero, const T& one) {
    detail::require_square(m);
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    T total = zero;
    do {
        T term = one;
        for (std::size_t i = 0; i < n; ++i) term = term * m[i][perm[i]];
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        if (inversions % 2)
            total = total - term;
        else
            total = total + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace cheb
