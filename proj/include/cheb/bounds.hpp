#pragma once

#include "cheb/bigint.hpp"
#include "cheb/minors.hpp"
#include "cheb/parallel.hpp"
#include "cheb/primes.hpp"
#include "cheb/schur.hpp"
#include "cheb/version.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace cheb {

enum class BoundMethod { zhang, fresh };

inline std::string to_string(BoundMethod m) { return m == BoundMethod::zhang ? "zhang" : "new"; }

inline BoundMethod parse_bound_method(const std::string& s) {
    if (s == "zhang") return BoundMethod::zhang;
    if (s == "new") return BoundMethod::fresh;
    throw std::invalid_argument("unknown bound method '" + s + "' (expected new or zhang)");
}

/// Pairs entering the maximum for the new method. `full` takes every (A,B)
/// with |A| = |B|; `reduced` takes 0 in A, 0 in B and |A| <= (p-1)/2, which
/// meets every class of minors under translation and complementation.
enum class BoundDomain { reduced, full };

inline std::string to_string(BoundDomain d) { return d == BoundDomain::reduced ? "reduced" : "full"; }

inline BoundDomain parse_bound_domain(const std::string& s) {
    if (s == "reduced") return BoundDomain::reduced;
    if (s == "full") return BoundDomain::full;
    throw std::invalid_argument("unknown bound domain '" + s + "' (expected reduced or full)");
}

struct BoundReport {
    unsigned p = 0;
    BoundMethod method = BoundMethod::fresh;
    BoundDomain domain = BoundDomain::full;  // zhang always ranges over every A
    BigInt value = 0;
    std::optional<IndexSet> argmax_a;
    std::optional<IndexSet> argmax_b;  // absent for zhang
    std::uint64_t work_items = 0;      // sets (zhang) or residue evaluations (new)
    BigInt pairs_covered = 0;          // subsets (zhang) or (A,B) pairs (new)
    std::string version = kVersion;
    double elapsed_s = 0;
};

struct BoundOptions {
    unsigned threads = 1;
    bool extended = false;
    bool force = false;
    std::uint64_t budget = 0;  // 0 = kDefaultBoundBudget
    BoundDomain domain = BoundDomain::reduced;
};

inline constexpr unsigned kRoutineBoundLimit = 13;
inline constexpr unsigned kMaxEnumerableP = 31;
inline constexpr std::uint64_t kDefaultBoundBudget = 10'000;

namespace detail {

inline void check_bound_p(unsigned p, const BoundOptions& opt) {
    require_prime(p, "p");
    if (p > kMaxEnumerableP) throw std::invalid_argument("p too large for exhaustive enumeration");
    if (p > kRoutineBoundLimit && !opt.force)
        throw BudgetExceeded("p = " + std::to_string(p) + " exceeds the routine limit " +
                             std::to_string(kRoutineBoundLimit) + "; use --force");
}

/// Lex order on (|A|, A, B).
inline bool pair_less(const IndexSet& a1, const IndexSet& b1, const IndexSet& a2, const IndexSet& b2) {
    if (a1.size() != a2.size()) return a1.size() < a2.size();
    if (a1 != a2) return a1 < a2;
    return b1 < b2;
}

/// k-subsets containing 0 that are lex-least in their orbit under b -> l*b + d.
inline std::vector<IndexSet> affine_orbit_reps(unsigned p, unsigned k) {
    std::vector<IndexSet> out;
    for (auto& b : subsets_with_zero(p, k)) {
        bool least = true;
        for (std::uint64_t l = 1; l < p && least; ++l) {
            const IndexSet s = b.scaled(l);
            // only images containing 0 can beat b
            for (auto x : s) {
                if (s.translated(p - x) < b) {
                    least = false;
                    break;
                }
            }
        }
        if (least) out.push_back(std::move(b));
    }
    return out;
}

struct BoundItem {
    IndexSet a;  // contains 0
    IndexSet b;  // affine (full) or scaling (reduced) orbit representative
};

inline std::vector<BoundItem> bound_items(unsigned p, BoundDomain domain) {
    std::vector<BoundItem> items;
    if (domain == BoundDomain::reduced) {
        const auto units = scaling_group(p, 0);
        for (unsigned k = 1; 2 * k <= p - 1; ++k) {
            const auto bs = scaling_orbit_reps(p, k, units);
            for (const auto& a : subsets_with_zero(p, k))
                for (const auto& b : bs) items.push_back({a, b});
        }
        return items;
    }
    for (unsigned k = 1; k <= p; ++k) {
        const auto bs = affine_orbit_reps(p, k);
        for (const auto& a : subsets_with_zero(p, k))
            for (const auto& b : bs) items.push_back({a, b});
    }
    return items;
}

inline BigInt pairs_in_domain(unsigned p, BoundDomain domain) {
    BigInt n = 0;
    for (unsigned k = 1; k <= p; ++k) {
        if (domain == BoundDomain::reduced) {
            if (2 * k > p - 1) break;
            const BigInt c = binomial(p - 1, k - 1);
            n += c * c;
        } else {
            const BigInt c = binomial(p, k);
            n += c * c;
        }
    }
    return n;
}

inline std::uint64_t mod_inverse_small(std::uint64_t l, std::uint64_t p) { return invmod(l % p, p); }

template <class T>
BigInt as_big(const T& x) {
    if constexpr (std::is_same_v<T, BigInt>)
        return x;
    else
        return from_u64(x);
}

/// Largest |m p - s_A(1)| over every translate A = a + c (no wraparound) and
/// every affine image of b, from the single residue vector of (a, b).
/// With A = a + c and B' = l*b + d: m(A, B') = residues[t] for
/// l*t + d*|lambda| + c*(l*sum(b) + k*d) = 0 mod p.
template <class T>
BigInt item_bound(const BoundItem& it, unsigned p, const std::vector<T>& residues, const BigInt& ratio) {
    const std::uint64_t k = it.a.size();
    const std::uint64_t wt = partition_of(it.a).weight();
    const std::uint64_t sb = it.b.sum() % p;
    bool all = false;
    std::vector<char> hit(p, 0);
    for (std::uint64_t c = 0; c + it.a.max() < p && !all; ++c) {
        if ((wt + c * k) % p != 0) {
            all = true;  // d sweeps every residue
        } else {
            hit[(p - (c * sb) % p) % p] = 1;
        }
    }
    BigInt lo, hi;
    bool first = true;
    for (unsigned t = 0; t < p; ++t) {
        if (!all && !hit[t]) continue;
        const BigInt v = as_big(residues[t]);
        if (first || v < lo) lo = v;
        if (first || v > hi) hi = v;
        first = false;
    }
    const BigInt pp = from_u64(p);
    return std::max(BigInt(abs(lo * pp - ratio)), BigInt(abs(hi * pp - ratio)));
}

template <class T>
void item_argmin_pair(const BoundItem& it, unsigned p, const std::vector<T>& residues, const BigInt& ratio,
                      const BigInt& target, std::optional<std::pair<IndexSet, IndexSet>>& best) {
    const std::uint64_t k = it.a.size();
    const std::uint64_t wt = partition_of(it.a).weight();
    const std::uint64_t sb = it.b.sum() % p;
    const BigInt pp = from_u64(p);
    for (std::uint64_t c = 0; c + it.a.max() < p; ++c) {
        const IndexSet a = it.a.translated(c);
        for (std::uint64_t l = 1; l < p; ++l) {
            const std::uint64_t linv = mod_inverse_small(l, p);
            const IndexSet scaled = it.b.scaled(l);
            for (std::uint64_t d = 0; d < p; ++d) {
                const std::uint64_t rhs = (d * wt + c * ((l * sb) % p + (k * d) % p)) % p;
                const std::uint64_t t = (p - (linv * rhs) % p) % p;
                if (BigInt(abs(as_big(residues[t]) * pp - ratio)) != target) continue;
                const IndexSet b = scaled.translated(d);
                if (!best || pair_less(a, b, best->first, best->second)) best = std::make_pair(a, b);
            }
        }
    }
}

}  // namespace detail

/// Gamma_p = max over nonempty A of s_A(1,...,1); argmax is the lex-least maximizer.
inline BoundReport gamma_zhang(unsigned p, const BoundOptions& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    detail::check_bound_p(p, opt);
    BoundReport rep;
    rep.p = p;
    rep.method = BoundMethod::zhang;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
        const IndexSet a = IndexSet::from_mask(p, mask);
        const BigInt v = schur_eval_ones(a);
        if (!rep.argmax_a || v > rep.value || (v == rep.value && a < *rep.argmax_a)) {
            rep.value = v;
            rep.argmax_a = a;
        }
        ++rep.work_items;
    }
    rep.pairs_covered = from_u64(rep.work_items);
    rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Number of residue vectors bound_new evaluates: pairs (A containing 0,
/// orbit of B).
inline std::uint64_t bound_new_work_estimate(unsigned p, BoundDomain domain = BoundDomain::reduced) {
    return detail::bound_items(p, domain).size();
}

namespace detail {

/// Reduced domain: m is invariant under B -> l*B, so one residues per scaling orbit.
inline BoundReport bound_new_reduced(unsigned p, const std::vector<BoundItem>& items, const BoundOptions& opt) {
    const BigInt pp = from_u64(p);
    const auto values = parallel_map<BigInt>(items.size(), opt.threads, [&](std::size_t i) {
        const auto& it = items[i];
        const BigInt ratio = schur_eval_ones(it.a);
        if (fits_word_route(it.a)) return BigInt(abs(from_u64(residue_vector<std::uint64_t>(it.a, it.b, p)[0]) * pp - ratio));
        return BigInt(abs(residue_vector<BigInt>(it.a, it.b, p)[0] * pp - ratio));
    });
    BoundReport rep;
    for (std::size_t i = 0; i < items.size(); ++i)
        if (!rep.argmax_a || values[i] > rep.value) {
            rep.value = values[i];
            rep.argmax_a = items[i].a;
            rep.argmax_b = items[i].b;
        }
    return rep;
}

inline BoundReport bound_new_full(unsigned p, const std::vector<BoundItem>& items, const BoundOptions& opt) {
    const auto values = parallel_map<BigInt>(items.size(), opt.threads, [&](std::size_t i) {
        const auto& it = items[i];
        const BigInt ratio = schur_eval_ones(it.a);
        if (fits_word_route(it.a)) return item_bound(it, p, residue_vector<std::uint64_t>(it.a, it.b, p).coeffs(), ratio);
        return item_bound(it, p, residue_vector<BigInt>(it.a, it.b, p).coeffs(), ratio);
    });
    BoundReport rep;
    for (const auto& v : values)
        if (v > rep.value) rep.value = v;
    std::optional<std::pair<IndexSet, IndexSet>> best;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (values[i] != rep.value) continue;
        const auto& it = items[i];
        item_argmin_pair(it, p, residue_vector<BigInt>(it.a, it.b, p).coeffs(), schur_eval_ones(it.a), rep.value, best);
    }
    if (best) {
        rep.argmax_a = best->first;
        rep.argmax_b = best->second;
    }
    return rep;
}

}  // namespace detail

/// max of |m_{A,B} p - s_A(1,...,1)| over the pairs of `opt.domain`; the
/// argmax is the first maximizer in (|A|, A, B) order.
inline BoundReport bound_new(unsigned p, const BoundOptions& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    detail::check_bound_p(p, opt);
    const std::uint64_t budget = opt.budget ? opt.budget : kDefaultBoundBudget;
    const auto items = detail::bound_items(p, opt.domain);
    if (items.size() > budget && !opt.extended)
        throw BudgetExceeded("bound_new(" + std::to_string(p) + ") needs " + std::to_string(items.size()) +
                             " residue evaluations, budget is " + std::to_string(budget) + "; use --extended");

    BoundReport rep = opt.domain == BoundDomain::reduced ? detail::bound_new_reduced(p, items, opt)
                                                         : detail::bound_new_full(p, items, opt);
    rep.p = p;
    rep.method = BoundMethod::fresh;
    rep.domain = opt.domain;
    rep.work_items = items.size();
    rep.pairs_covered = detail::pairs_in_domain(p, opt.domain);
    rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline BoundReport compute_bound(unsigned p, BoundMethod m, const BoundOptions& opt = {}) {
    return m == BoundMethod::zhang ? gamma_zhang(p, opt) : bound_new(p, opt);
}

inline constexpr std::uint64_t kPrimeSearchCeiling = 1'000'000'000;

struct AdmissiblePrime {
    std::uint64_t q = 0;
    bool trivial_case = false;   // p <= 3: every minor is 1x1, 2x2 or the full Vandermonde
    bool boundary_prime = false;  // the bound itself is an admissible prime ("q >= bound" would differ)
};

/// Least prime q != p with ord_p(q) = p - 1 and q > bound. For p <= 3 every
/// minor is nonzero in every characteristic other than p, so only the order
/// condition applies.
inline AdmissiblePrime first_admissible_prime(unsigned p, const BigInt& bound) {
    require_prime(p, "p");
    const auto admissible = [p](std::uint64_t q) { return q != p && mult_order(q, p) == p - 1; };
    AdmissiblePrime out;
    out.trivial_case = p <= 3;
    if (fits_u64(bound) && bound >= 2) {
        const std::uint64_t b = to_u64(bound);
        out.boundary_prime = is_prime(b) && admissible(b);
    }
    std::uint64_t q = 2;
    if (!out.trivial_case) {
        if (!fits_u64(bound) || bound >= from_u64(kPrimeSearchCeiling))
            throw std::runtime_error("prime search ceiling exceeded");
        q = to_u64(bound) + 1;
    }
    for (; q <= kPrimeSearchCeiling; ++q)
        if (is_prime(q) && admissible(q)) {
            out.q = q;
            return out;
        }
    throw std::runtime_error("prime search ceiling exceeded");
}

// ---- cache ----

inline std::filesystem::path bound_cache_path(const std::filesystem::path& dir, unsigned p, BoundMethod m,
                                              BoundDomain d = BoundDomain::reduced) {
    const std::string tag = m == BoundMethod::zhang ? "zhang" : "new-" + to_string(d);
    return dir / ("bound-p" + std::to_string(p) + "-" + tag + "-" + kVersion + ".json");
}

inline nlohmann::json index_set_json(const std::optional<IndexSet>& s) {
    if (!s) return nullptr;
    return s->elements();
}

inline nlohmann::json bound_to_json(const BoundReport& r) {
    return {{"p", r.p},
            {"method", to_string(r.method)},
            {"domain", to_string(r.domain)},
            {"value", to_decimal(r.value)},
            {"argmax_A", index_set_json(r.argmax_a)},
            {"argmax_B", index_set_json(r.argmax_b)},
            {"work_items", r.work_items},
            {"pairs_covered", to_decimal(r.pairs_covered)},
            {"version", r.version},
            {"elapsed_s", r.elapsed_s}};
}

inline BoundReport bound_from_json(const nlohmann::json& j) {
    BoundReport r;
    r.p = j.at("p").get<unsigned>();
    r.method = parse_bound_method(j.at("method").get<std::string>());
    r.domain = parse_bound_domain(j.at("domain").get<std::string>());
    r.value = from_decimal(j.at("value").get<std::string>());
    if (!j.at("argmax_A").is_null()) r.argmax_a = IndexSet(r.p, j.at("argmax_A").get<std::vector<unsigned>>());
    if (!j.at("argmax_B").is_null()) r.argmax_b = IndexSet(r.p, j.at("argmax_B").get<std::vector<unsigned>>());
    r.work_items = j.value("work_items", std::uint64_t{0});
    r.pairs_covered = from_decimal(j.value("pairs_covered", std::string("0")));
    r.version = j.at("version").get<std::string>();
    r.elapsed_s = j.at("elapsed_s").get<double>();
    return r;
}

inline std::optional<BoundReport> load_cached_bound(const std::filesystem::path& dir, unsigned p, BoundMethod m,
                                                    BoundDomain d = BoundDomain::reduced) {
    std::ifstream in(bound_cache_path(dir, p, m, d));
    if (!in) return std::nullopt;
    try {
        auto r = bound_from_json(nlohmann::json::parse(in));
        if (r.p != p || r.method != m || r.version != kVersion) return std::nullopt;
        if (m == BoundMethod::fresh && r.domain != d) return std::nullopt;
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline void store_bound(const std::filesystem::path& dir, const BoundReport& r) {
    std::filesystem::create_directories(dir);
    const auto path = bound_cache_path(dir, r.p, r.method, r.domain);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp);
        out << bound_to_json(r).dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
}

/// Reads the cache when a directory is given, computes and stores on a miss.
inline BoundReport cached_bound(unsigned p, BoundMethod m, const BoundOptions& opt,
                                const std::optional<std::filesystem::path>& cache_dir) {
    if (cache_dir)
        if (auto hit = load_cached_bound(*cache_dir, p, m, opt.domain)) return *hit;
    auto r = compute_bound(p, m, opt);
    if (cache_dir) store_bound(*cache_dir, r);
    return r;
}

// ---- table ----

struct TableRow {
    unsigned p = 0;
    std::uint64_t q_new = 0;
    std::uint64_t q_zhang = 0;
    BigInt bound_new = 0;
    BigInt gamma = 0;
};

inline std::vector<TableRow> reproduce_table(unsigned p_max, const BoundOptions& opt = {},
                                             const std::optional<std::filesystem::path>& cache_dir = {}) {
    if (p_max > kRoutineBoundLimit && !opt.force)
        throw BudgetExceeded("table limited to p <= " + std::to_string(kRoutineBoundLimit));
    std::vector<TableRow> rows;
    for (auto p : primes_up_to(p_max)) {
        const auto pu = static_cast<unsigned>(p);
        TableRow row;
        row.p = pu;
        row.bound_new = cached_bound(pu, BoundMethod::fresh, opt, cache_dir).value;
        row.gamma = cached_bound(pu, BoundMethod::zhang, opt, cache_dir).value;
        row.q_new = first_admissible_prime(pu, row.bound_new).q;
        row.q_zhang = first_admissible_prime(pu, row.gamma).q;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cheb
