#pragma once

#include "cheb/bounds.hpp"
#include "cheb/cyclo_factor.hpp"
#include "cheb/identities.hpp"
#include "cheb/minors.hpp"
#include "cheb/real_cheb.hpp"
#include "cheb/schur.hpp"
#include "cheb/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace cheb {

namespace cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kBudget = 3 };

struct RunConfig {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::uint64_t pmax = 0;
    std::uint64_t omega = 0;
    std::string method = "new";
    std::string domain = "reduced";
    std::string format = "json";
    std::string a, b;
    std::string cache_dir;
    unsigned threads = 1;
    std::uint64_t seed = kDefaultFieldSeed;
    std::uint64_t random = 0;
    bool exhaustive = false;
    bool char0 = false;
    bool extended = false;
    bool force = false;
};

inline json set_json(const std::optional<IndexSet>& s) {
    if (!s) return nullptr;
    return s->elements();
}

inline json pair_json(const std::optional<std::pair<IndexSet, IndexSet>>& v) {
    if (!v) return nullptr;
    return {{"A", v->first.elements()}, {"B", v->second.elements()}};
}

inline std::vector<std::string> decimal_list(const std::vector<BigInt>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(to_decimal(x));
    return out;
}

inline std::vector<std::uint64_t> fq_coeffs(const DensePoly<Fq>& f) {
    std::vector<std::uint64_t> out;
    for (const auto& c : f.coeffs()) out.push_back(c.value());
    return out;
}

inline json minor_report_json(const MinorReport& r) {
    json j{{"p", r.p},
           {"q", r.q},
           {"verified", r.verified},
           {"first_violation", pair_json(r.first_violation)},
           {"minors_checked", to_decimal(r.minors_checked)},
           {"minors_evaluated", r.minors_evaluated},
           {"orbits_pruned", to_decimal(r.orbits_pruned)},
           {"violations", r.violations},
           {"elapsed_s", r.wall_time}};
    if (!r.modulus.empty()) j["modulus"] = r.modulus;
    if (!r.matrix.empty()) j["matrix"] = r.matrix;
    return j;
}

inline json sweep_json(const IdentitySweep& s) {
    return {{"checked", s.checked}, {"failed", s.failed}, {"first_failure", pair_json(s.first_failure)}};
}

inline IndexSet parse_set(const std::string& text, std::uint64_t p) {
    std::vector<unsigned> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const unsigned long x = std::stoul(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad index '" + item + "'");
        v.push_back(static_cast<unsigned>(x));
    }
    const auto s = IndexSet::from_unsorted(static_cast<unsigned>(p), v);
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == s[i - 1]) throw std::invalid_argument("repeated index in '" + text + "'");
    return s;
}

inline FieldSetup make_field(const RunConfig& c) {
    if (c.omega) {
        if (mult_order(c.q, c.p) != 1) throw std::invalid_argument("--omega needs q = 1 mod p");
        return build_field_with_modulus(c.p, c.q, DensePoly<Fq>{Fq::from_signed(-static_cast<long long>(c.omega % c.q), c.q), Fq(1, c.q)});
    }
    return build_field(c.p, c.q, c.seed);
}

inline std::optional<std::filesystem::path> cache_dir(const RunConfig& c) {
    if (!c.cache_dir.empty()) return std::filesystem::path(c.cache_dir);
    if (const char* env = std::getenv("CHEB_CACHE_DIR"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

inline BoundOptions bound_options(const RunConfig& c) {
    BoundOptions o;
    o.threads = c.threads;
    o.extended = c.extended;
    o.force = c.force;
    o.domain = parse_bound_domain(c.domain);
    return o;
}

inline VerifyOptions verify_options(const RunConfig& c) { return {c.threads, c.extended, c.force}; }

// ---- commands; each returns the exit code and fills `out` ----

inline int cmd_factor(const RunConfig& c, json& out) {
    const auto s = make_field(c);
    json fs = json::array();
    for (const auto& f : cyclotomic_factors(c.p, c.q, c.seed))
        fs.push_back({{"poly", f.to_string()}, {"coeffs", fq_coeffs(f)}});
    out = {{"p", c.p}, {"q", c.q}, {"r", s.r}, {"count", (c.p - 1) / s.r}, {"factors", fs}};
    return kOk;
}

inline int cmd_field(const RunConfig& c, json& out) {
    const auto s = make_field(c);
    const auto t = trace_table(s);
    const auto cosets = coset_table(c.p, c.q);
    std::vector<std::string> row;
    for (std::uint64_t j = 0; j < c.p; ++j) row.push_back(s.omega_pow(j).to_string());
    json cs = json::array();
    for (std::size_t i = 0; i < cosets.reps.size(); ++i)
        cs.push_back({{"rep", cosets.reps[i]}, {"members", cosets.members[i]}});
    out = {{"p", c.p},
           {"q", c.q},
           {"r", s.r},
           {"modulus", s.pbar().to_string()},
           {"modulus_coeffs", fq_coeffs(s.pbar())},
           {"fourier_row", row},
           {"trace", std::vector<std::uint64_t>(t.L.begin() + 1, t.L.end())},
           {"cosets", cs}};
    return kOk;
}

inline int cmd_schur(const RunConfig& c, json& out) {
    const auto a = parse_set(c.a, c.p);
    out = {{"p", c.p},
           {"A", a.elements()},
           {"lambda", partition_of(a).parts},
           {"s_A_ones", to_decimal(schur_eval_ones(a))}};
    if (c.b.empty()) return kOk;
    const auto b = parse_set(c.b, c.p);
    if (a.size() != b.size()) throw std::invalid_argument("|A| must equal |B|");
    const auto s = jacobi_trudi_residues(a, b, static_cast<unsigned>(c.p));
    out["B"] = b.elements();
    out["residues"] = decimal_list(s.c);
    out["m"] = to_decimal(s.m());
    out["vanishes_char0"] = minor_vanishes(s, MinorContext::char0(static_cast<unsigned>(c.p)));
    if (c.q) {
        const auto cc = coset_counts(s, coset_table(c.p, c.q));
        json by = json::object();
        for (const auto& [rep, mass] : cc.by_rep) by[std::to_string(rep)] = to_decimal(mass);
        out["q"] = c.q;
        out["m0"] = to_decimal(cc.m0);
        out["coset_mass"] = by;
        out["vanishes"] = minor_vanishes(s, MinorContext::finite(make_field(c)));
    }
    return kOk;
}

inline BoundReport bound_for(const RunConfig& c, BoundMethod m) {
    return cached_bound(static_cast<unsigned>(c.p), m, bound_options(c), cache_dir(c));
}

inline int cmd_bound(const RunConfig& c, json& out) {
    const auto m = parse_bound_method(c.method);
    const auto o = bound_options(c);
    if (m == BoundMethod::fresh && !c.extended) {
        detail::check_bound_p(static_cast<unsigned>(c.p), o);
        const auto est = bound_new_work_estimate(static_cast<unsigned>(c.p), o.domain);
        if (est > kDefaultBoundBudget)
            throw BudgetExceeded("bound --method new --p " + std::to_string(c.p) + " needs " + std::to_string(est) +
                                 " residue evaluations (budget " + std::to_string(kDefaultBoundBudget) +
                                 "); rerun with --extended");
    }
    auto r = bound_for(c, m);
    out = bound_to_json(r);
    if (m == BoundMethod::zhang) out.erase("domain");
    return kOk;
}

inline int cmd_first_prime(const RunConfig& c, json& out) {
    const auto m = parse_bound_method(c.method);
    const auto r = bound_for(c, m);
    const auto a = first_admissible_prime(static_cast<unsigned>(c.p), r.value);
    out = {{"p", c.p},
           {"method", to_string(m)},
           {"bound", to_decimal(r.value)},
           {"q", a.q},
           {"trivial_case", a.trivial_case},
           {"boundary_prime", a.boundary_prime}};
    if (m == BoundMethod::fresh) out["domain"] = to_string(r.domain);
    return kOk;
}

inline std::string table_text(const std::vector<TableRow>& rows) {
    std::vector<std::string> head{"p"}, qn{"q (new)"}, qz{"q (Zhang)"};
    for (const auto& r : rows) {
        head.push_back(std::to_string(r.p));
        qn.push_back(std::to_string(r.q_new));
        qz.push_back(std::to_string(r.q_zhang));
    }
    std::vector<std::size_t> w(head.size(), 0);
    for (const auto* line : {&head, &qn, &qz})
        for (std::size_t i = 0; i < line->size(); ++i) w[i] = std::max(w[i], (*line)[i].size());
    std::ostringstream os;
    for (const auto* line : {&head, &qn, &qz}) {
        for (std::size_t i = 0; i < line->size(); ++i) {
            if (i == 0)
                os << std::left << std::setw(static_cast<int>(w[i])) << (*line)[i] << " |";
            else
                os << " " << std::right << std::setw(static_cast<int>(w[i])) << (*line)[i];
        }
        os << "\n";
    }
    return os.str();
}

inline int cmd_table(const RunConfig& c, std::ostream& os, json& out, bool& emitted) {
    const auto rows = reproduce_table(static_cast<unsigned>(c.pmax), bound_options(c), cache_dir(c));
    if (c.format == "csv") {
        os << "p,q_new,q_zhang\n";
        for (const auto& r : rows) os << r.p << "," << r.q_new << "," << r.q_zhang << "\n";
        emitted = true;
        return kOk;
    }
    if (c.format == "text") {
        os << table_text(rows);
        emitted = true;
        return kOk;
    }
    json rs = json::array();
    for (const auto& r : rows)
        rs.push_back({{"p", r.p},
                      {"q_new", r.q_new},
                      {"q_zhang", r.q_zhang},
                      {"bound_new", to_decimal(r.bound_new)},
                      {"gamma", to_decimal(r.gamma)}});
    out = {{"pmax", c.pmax}, {"domain", c.domain}, {"rows", rs}};
    return kOk;
}

inline int cmd_verify(const RunConfig& c, bool char0, json& out) {
    const auto p = static_cast<unsigned>(c.p);
    const auto ctx = char0 ? MinorContext::char0(p) : MinorContext::finite(make_field(c));
    const auto r = verify_all_minors(ctx, verify_options(c));
    out = minor_report_json(r);
    if (r.first_violation && ctx.field) {
        const auto& [a, b] = *r.first_violation;
        out["oracle_det_zero"] = det_over_field(submatrix(fourier_matrix(*ctx.field), a, b)).is_zero();
    }
    return r.verified ? kOk : kViolation;
}

inline int cmd_real(const RunConfig& c, bool dct, json& out) {
    const auto r = dct ? verify_dct_minors(c.p, verify_options(c)) : verify_real_minors(c.p, verify_options(c));
    out = minor_report_json(r);
    const auto fs = float_minor_screen(c.p, dct);
    out["float_screen"] = {{"minors", fs.minors}, {"min_abs_det", fs.min_abs_det}, {"all_above", fs.all_above}};
    return r.verified ? kOk : kViolation;
}

inline int cmd_real_identities(const RunConfig& c, json& out) {
    const auto r = real_identities(c.p);
    out = {{"p", r.p},
           {"minpoly", decimal_list(cosine_minpoly(c.p).coeffs())},
           {"minpoly_at_two", r.minpoly_at_two},
           {"chebyshev_identity", r.chebyshev_identity},
           {"phi_fixed_point", r.phi_fixed_point},
           {"phi_composition", r.phi_composition},
           {"all", r.all()}};
    return r.all() ? kOk : kViolation;
}

inline int cmd_identities(const RunConfig& c, json& out) {
    if (c.exhaustive && c.random) throw std::invalid_argument("--exhaustive and --random are exclusive");
    const SweepOptions o{c.random, c.seed, c.threads};
    const auto l13 = sweep_scaling_sum(c.p, o);
    const auto r14 = sweep_ratio_criterion(c.p, o);
    out = {{"p", c.p}, {"mode", c.random ? "random" : "exhaustive"}, {"scaling_sum", sweep_json(l13)}, {"ratio_criterion", sweep_json(r14)}};
    bool ok = l13.passed() && r14.passed();
    if (c.q) {
        const auto l20 = sweep_frobenius_sum(make_field(c), o);
        out["q"] = c.q;
        out["frobenius_sum"] = sweep_json(l20);
        ok = ok && l20.passed();
    }
    if (c.random) out["random"] = c.random;
    return ok ? kOk : kViolation;
}

inline int cmd_uncertainty(const RunConfig& c, json& out) {
    const auto r = uncertainty_min(static_cast<unsigned>(c.p), c.q, c.omega ? std::optional(c.omega) : std::nullopt);
    out = {{"p", r.p},
           {"q", r.q},
           {"omega", r.omega},
           {"min_support", r.min_support},
           {"bound", r.p + 1},
           {"witness", r.witness},
           {"vectors_scanned", r.vectors_scanned}};
    return r.min_support >= r.p + 1 ? kOk : kViolation;
}

inline void validate(const RunConfig& c, const std::string& cmd) {
    if (c.p) require_prime(c.p, "p");
    if (c.q) require_prime(c.q, "q");
    if (c.pmax && c.pmax < 2) throw std::invalid_argument("--pmax must be at least 2");
    if (c.p && c.q && c.p == c.q) throw std::invalid_argument("q must differ from p");
    if (cmd != "table" && c.format != "json") throw std::invalid_argument("only table supports --format " + c.format);
    if (cmd == "verify-minors" && c.char0 && c.q) throw std::invalid_argument("--char0 and --q are exclusive");
    if (cmd == "verify-minors" && !c.char0 && !c.q) throw std::invalid_argument("verify-minors needs --q or --char0");
    for (const char* needs_q : {"factor", "field", "uncertainty"})
        if (cmd == needs_q && !c.q) throw std::invalid_argument(cmd + " needs --q");
    parse_bound_domain(c.domain);
}

}  // namespace cli

/// Runs one command line; JSON, CSV or text goes to `out`, diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using namespace cli;
    RunConfig c;
    CLI::App app{"Exact verification of nonvanishing minors of prime-size Fourier matrices", "cheb"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    const auto common = [&](CLI::App* s) {
        s->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
        s->add_option("--seed", c.seed, "seed for field construction and random sweeps");
        s->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_flag("--extended", c.extended, "allow the long-running size range");
        s->add_flag("--force", c.force, "lift the size guards entirely");
    };
    const auto need_p = [&](CLI::App* s) { s->add_option("--p", c.p, "prime size")->required(); };
    const auto opt_q = [&](CLI::App* s) { s->add_option("--q", c.q, "characteristic"); };
    const auto bound_flags = [&](CLI::App* s) {
        s->add_option("--method", c.method, "new or zhang")->check(CLI::IsMember({"new", "zhang"}));
        s->add_option("--domain", c.domain, "pairs in the new bound: reduced or full");
        s->add_option("--cache-dir", c.cache_dir, "result cache (default $CHEB_CACHE_DIR)");
    };

    struct Cmd {
        const char* name;
        const char* help;
    };
    const std::vector<Cmd> cmds{{"factor", "irreducible factors of the p-th cyclotomic polynomial over F_q"},
                                {"field", "extension field, Fourier row, cosets and trace table"},
                                {"schur", "partition, s_A(1,...,1) and exponent residues for (A,B)"},
                                {"bound", "new or Zhang bound for p"},
                                {"first-prime", "least admissible characteristic above a bound"},
                                {"table", "first admissible primes for all p up to --pmax"},
                                {"verify-minors", "all minors of F_p over F_{q^r} (or char 0)"},
                                {"verify-classic", "all minors of F_p in characteristic 0"},
                                {"real-minors", "minors of the real Vandermonde matrix at 2cos(2 pi j/p)"},
                                {"real-dct", "minors of (2cos(2 pi k j/p))"},
                                {"real-identities", "minimal polynomial and Chebyshev identities"},
                                {"identities", "sum identities over scaled column sets"},
                                {"uncertainty", "min ||g||_0 + ||F g||_0 by exhaustive scan"}};
    std::map<std::string, CLI::App*> sub;
    for (const auto& cm : cmds) {
        auto* s = app.add_subcommand(cm.name, cm.help);
        common(s);
        sub[cm.name] = s;
    }
    for (const char* n : {"factor", "field", "schur", "bound", "first-prime", "verify-minors", "verify-classic",
                          "real-minors", "real-dct", "real-identities", "identities", "uncertainty"})
        need_p(sub[n]);
    for (const char* n : {"factor", "field", "schur", "verify-minors", "identities", "uncertainty"}) opt_q(sub[n]);
    for (const char* n : {"field", "verify-minors", "uncertainty", "schur", "identities"})
        sub[n]->add_option("--omega", c.omega, "root of unity in F_q (requires q = 1 mod p)");
    for (const char* n : {"bound", "first-prime", "table"}) bound_flags(sub[n]);
    sub["schur"]->add_option("--A", c.a, "row set, comma separated")->required();
    sub["schur"]->add_option("--B", c.b, "column set, comma separated");
    sub["table"]->add_option("--pmax", c.pmax, "largest p")->required();
    sub["verify-minors"]->add_flag("--char0", c.char0, "characteristic 0");
    auto* ex = sub["identities"]->add_flag("--exhaustive", c.exhaustive, "every pair (default)");
    sub["identities"]->add_option("--random", c.random, "number of random pairs")->excludes(ex);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    std::string cmd;
    for (const auto& [name, s] : sub)
        if (s->parsed()) cmd = name;

    const auto t0 = std::chrono::steady_clock::now();
    json j;
    bool emitted = false;
    int code = kOk;
    try {
        validate(c, cmd);
        if (cmd == "factor") code = cmd_factor(c, j);
        else if (cmd == "field") code = cmd_field(c, j);
        else if (cmd == "schur") code = cmd_schur(c, j);
        else if (cmd == "bound") code = cmd_bound(c, j);
        else if (cmd == "first-prime") code = cmd_first_prime(c, j);
        else if (cmd == "table") code = cmd_table(c, out, j, emitted);
        else if (cmd == "verify-minors") code = cmd_verify(c, c.char0, j);
        else if (cmd == "verify-classic") code = cmd_verify(c, true, j);
        else if (cmd == "real-minors") code = cmd_real(c, false, j);
        else if (cmd == "real-dct") code = cmd_real(c, true, j);
        else if (cmd == "real-identities") code = cmd_real_identities(c, j);
        else if (cmd == "identities") code = cmd_identities(c, j);
        else if (cmd == "uncertainty") code = cmd_uncertainty(c, j);
    } catch (const BudgetExceeded& e) {
        err << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    if (emitted) return code;
    j["command"] = cmd;
    j["version"] = kVersion;
    j["seed"] = c.seed;
    if (!j.contains("elapsed_s"))
        j["elapsed_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << j.dump(2) << "\n";
    return code;
}

}  // namespace cheb
