#pragma once

/**
 * @file verifier.hpp
 * @brief Registry of the congruence statements and their exact verification.
 *
 * A statement pairs an exact rational left side with a right side of the form
 *
 *     coefficient · ∏ Γ_p(argument_i)^{exponent_i}
 *
 * where the coefficient is an exact rational (it carries powers of p, the
 * numeric constants and the finite right-hand sums) and the Γ_p factors are
 * p-adic units known modulo p^n. With U the integer residue of the Γ_p
 * product, D = LHS - coefficient·U is exact and agrees with the true
 * difference modulo p^{ν(coefficient)+n}, so ν_p(D) is the true valuation
 * whenever it is below that cap.
 */

#include "pcl/exactnum.hpp"
#include "pcl/hyper.hpp"
#include "pcl/pgamma.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace pcl {

enum class StatementId {
    GLS_P4,
    WANG_P5,
    T1_P5,
    VH_P4,
    LR_P6,
    LIU_P5,
    C1I_P5,
    C1I_P6,
    T2_P5,
    C1II_P6,
    L31,
    L32,
    L33,
    L41,
    L42,
    L43,
};

inline constexpr StatementId kAllStatements[] = {
    StatementId::GLS_P4, StatementId::WANG_P5, StatementId::T1_P5, StatementId::VH_P4,   StatementId::LR_P6,
    StatementId::LIU_P5, StatementId::C1I_P5,  StatementId::C1I_P6, StatementId::T2_P5, StatementId::C1II_P6,
    StatementId::L31,    StatementId::L32,     StatementId::L33,    StatementId::L41,   StatementId::L42,
    StatementId::L43,
};

/// Every proven congruence at its stated modulus; the default `verify` set.
inline constexpr StatementId kProvenCongruences[] = {StatementId::GLS_P4, StatementId::WANG_P5, StatementId::T1_P5,
                                                     StatementId::VH_P4,  StatementId::LR_P6,   StatementId::LIU_P5,
                                                     StatementId::C1I_P5, StatementId::T2_P5};

inline constexpr StatementId kLemmas[] = {StatementId::L31, StatementId::L32, StatementId::L33,
                                          StatementId::L41, StatementId::L42, StatementId::L43};

inline std::string statement_name(StatementId id) {
    switch (id) {
        case StatementId::GLS_P4: return "GLS_P4";
        case StatementId::WANG_P5: return "WANG_P5";
        case StatementId::T1_P5: return "T1_P5";
        case StatementId::VH_P4: return "VH_P4";
        case StatementId::LR_P6: return "LR_P6";
        case StatementId::LIU_P5: return "LIU_P5";
        case StatementId::C1I_P5: return "C1I_P5";
        case StatementId::C1I_P6: return "C1I_P6";
        case StatementId::T2_P5: return "T2_P5";
        case StatementId::C1II_P6: return "C1II_P6";
        case StatementId::L31: return "L31";
        case StatementId::L32: return "L32";
        case StatementId::L33: return "L33";
        case StatementId::L41: return "L41";
        case StatementId::L42: return "L42";
        case StatementId::L43: return "L43";
    }
    return "?";
}

inline StatementId parse_statement(const std::string& name) {
    for (auto id : kAllStatements) {
        if (statement_name(id) == name) return id;
    }
    throw InvalidInput("unknown statement '" + name + "'");
}

inline bool is_lemma(StatementId id) { return std::find(std::begin(kLemmas), std::end(kLemmas), id) != std::end(kLemmas); }

struct GammaPower {
    Rational argument;
    long exponent;
};

struct RhsForm {
    Rational coefficient;
    std::vector<GammaPower> gammas;
};

struct StatementDef {
    StatementId id;
    FamilyKind family;
    int target;         // modulus exponent
    bool conjectural;   // verdicts are informational only
    std::optional<long> fixed_r;  // statements that ignore r
    std::function<bool(std::uint64_t p, long r)> admissible;
    std::function<Rational(std::uint64_t p, long r)> lhs;
    std::function<RhsForm(std::uint64_t p, long r)> rhs;
};

using StatementTable = std::vector<StatementDef>;

enum class Verdict { Holds, Fails, Inadmissible };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "HOLDS";
        case Verdict::Fails: return "FAILS";
        case Verdict::Inadmissible: return "INADMISSIBLE";
    }
    return "?";
}

struct CaseReport {
    StatementId statement;
    std::uint64_t p;
    long r;
    int target;
    Valuation valuation;
    bool at_least = false;
    Verdict verdict = Verdict::Inadmissible;
    long elapsed_ms = 0;
};

inline bool operator<(const CaseReport& a, const CaseReport& b) {
    return std::tuple(static_cast<int>(a.statement), a.p, a.r) < std::tuple(static_cast<int>(b.statement), b.p, b.r);
}

// --- the statement table -----------------------------------------------------

namespace detail {

inline long mod_floor(long x, long m) { return ((x % m) + m) % m; }

inline Rational prime(std::uint64_t p) { return Rational(static_cast<long>(p)); }

inline bool quintic_t1(std::uint64_t p, long r) {
    const long pl = static_cast<long>(p);
    return SeriesFamily::admissible(FamilyKind::Quintic, r) && mod_floor(pl - r, 5) == 0 && 2 * pl >= 5 - 3 * r;
}

inline bool quintic_gls(std::uint64_t p, long r) {
    const long pl = static_cast<long>(p);
    return SeriesFamily::admissible(FamilyKind::Quintic, r) && mod_floor(pl - 2 * r, 5) == 0 && 2 * pl >= 5 - r;
}

inline bool sextic_first(std::uint64_t p, long r) {
    const long pl = static_cast<long>(p);
    return SeriesFamily::admissible(FamilyKind::Sextic, r) && pl >= 5 && mod_floor(pl + r, 3) == 0 && pl >= 3 - r;
}

inline bool sextic_second(std::uint64_t p, long r) {
    const long pl = static_cast<long>(p);
    return SeriesFamily::admissible(FamilyKind::Sextic, r) && pl >= 7 && mod_floor(pl - r, 3) == 0 &&
           pl >= 3 - 2 * r;
}

inline Rational quintic_lhs(std::uint64_t p, long r) {
    return weighted_series(SeriesFamily(FamilyKind::Quintic, r), p - 1);
}

inline Rational sextic_lhs(std::uint64_t p, long r) {
    return weighted_series(SeriesFamily(FamilyKind::Sextic, r), p - 1);
}

inline std::vector<GammaPower> quintic_gammas(long r) {
    return {{Rational(r, 5), 4},
            {Rational(2 * r, 5), -2},
            {Rational(1, 2) + Rational(3 * r, 10), -1},
            {Rational(1, 2) - Rational(r, 10), -3}};
}

inline std::vector<GammaPower> sextic_gammas(long r) { return {{Rational(r, 3), 6}, {Rational(2 * r, 3), -3}}; }

inline Rational sign(long e) { return Rational(e % 2 == 0 ? 1 : -1); }

/// Σ_{k≤N} (slope k + r) t_k^power (Σ_{j<k} 1/(r/d+j)^4 - Σ_{j<k} 1/(1+j)^4), t_k = (r/d)_k/k!.
inline Rational weighted_quartic_harmonic(const SeriesFamily& family, unsigned long n) {
    Rational sum, ratio(1), inner;
    const Rational a = family.base();
    for (unsigned long k = 0; k <= n; ++k) {
        const Rational kk(static_cast<long>(k));
        if (k > 0) {
            ratio *= (a + kk - Rational(1)) / kk;
            inner += (a + kk - Rational(1)).pow(-4) - kk.pow(-4);
        }
        sum += Rational(family.slope() * static_cast<long>(k) + family.r()) * ratio.pow(family.power()) * inner;
    }
    return sum;
}

/// Σ_{1≤j≤⟨x⟩_{p²}, p∤j} 1/j².
inline Rational unit_square_sum(const Rational& x, std::uint64_t p) {
    Integer top = residue(x, PadicContext(p, 2)).value;
    return harmonic_power_sum(Rational(1), top.get_ui(), 2, p);
}

}  // namespace detail

inline StatementTable default_statements() {
    using detail::prime;
    using detail::sign;
    StatementTable table;

    auto quintic_rhs = [](Rational scale) {
        return [scale](std::uint64_t, long r) {
            return RhsForm{scale * symmetrized_rhs_sum(SeriesFamily(FamilyKind::Quintic, r)), detail::quintic_gammas(r)};
        };
    };
    auto p_pow = [](std::uint64_t p, long e) { return prime(p).pow(e); };

    table.push_back({StatementId::GLS_P4, FamilyKind::Quintic, 4, false, std::nullopt, detail::quintic_gls,
                     detail::quintic_lhs, [](std::uint64_t, long) { return RhsForm{}; }});
    table.push_back({StatementId::WANG_P5, FamilyKind::Quintic, 5, false, std::nullopt, detail::quintic_gls,
                     detail::quintic_lhs, [=](std::uint64_t p, long r) {
                         return quintic_rhs(Rational(12, 25) * p_pow(p, 4))(p, r);
                     }});
    table.push_back({StatementId::T1_P5, FamilyKind::Quintic, 5, false, std::nullopt, detail::quintic_t1,
                     detail::quintic_lhs,
                     [=](std::uint64_t p, long r) { return quintic_rhs(prime(p))(p, r); }});

    auto p_ge_5 = [](std::uint64_t p, long) { return p >= 5; };
    auto third = [](long k) { return std::vector<GammaPower>{{Rational(k, 3), 9}}; };
    table.push_back({StatementId::VH_P4, FamilyKind::Sextic, 4, false, 1L, p_ge_5, detail::sextic_lhs,
                     [=](std::uint64_t p, long) {
                         if (p % 6 == 1) return RhsForm{-prime(p), third(1)};
                         return RhsForm{};
                     }});
    table.push_back({StatementId::LR_P6, FamilyKind::Sextic, 6, false, 1L, p_ge_5, detail::sextic_lhs,
                     [=](std::uint64_t p, long) {
                         if (p % 6 == 1) return RhsForm{-prime(p), third(1)};
                         return RhsForm{Rational(-10, 27) * p_pow(p, 4), third(1)};
                     }});
    table.push_back({StatementId::LIU_P5, FamilyKind::Sextic, 5, false, -1L, p_ge_5, detail::sextic_lhs,
                     [=](std::uint64_t p, long) {
                         if (p % 6 == 1) return RhsForm{Rational(140) * p_pow(p, 4), third(2)};
                         return RhsForm{Rational(378) * prime(p), third(2)};
                     }});

    auto c1i_rhs = [=](std::uint64_t p, long r) {
        return RhsForm{sign(r) * Rational(10, 27) * p_pow(p, 4) *
                           symmetrized_rhs_sum(SeriesFamily(FamilyKind::Sextic, r)),
                       detail::sextic_gammas(r)};
    };
    auto c1ii_rhs = [=](std::uint64_t p, long r) {
        return RhsForm{sign(r + 1) * prime(p) * symmetrized_rhs_sum(SeriesFamily(FamilyKind::Sextic, r)),
                       detail::sextic_gammas(r)};
    };
    table.push_back({StatementId::C1I_P5, FamilyKind::Sextic, 5, false, std::nullopt, detail::sextic_first,
                     detail::sextic_lhs, c1i_rhs});
    table.push_back({StatementId::C1I_P6, FamilyKind::Sextic, 6, true, std::nullopt, detail::sextic_first,
                     detail::sextic_lhs, c1i_rhs});
    table.push_back({StatementId::T2_P5, FamilyKind::Sextic, 5, false, std::nullopt, detail::sextic_second,
                     detail::sextic_lhs, c1ii_rhs});
    table.push_back({StatementId::C1II_P6, FamilyKind::Sextic, 6, true, std::nullopt, detail::sextic_second,
                     detail::sextic_lhs, c1ii_rhs});

    auto zero_rhs = [](std::uint64_t, long) { return RhsForm{}; };

    // Quintic lemmas, under the hypotheses of the p ≡ r (mod 5) theorem.
    table.push_back({StatementId::L31, FamilyKind::Quintic, 1, false, std::nullopt, detail::quintic_t1,
                     [](std::uint64_t p, long r) {
                         return weighted_series(SeriesFamily(FamilyKind::Quintic, r),
                                                static_cast<unsigned long>((static_cast<long>(p) - r) / 5));
                     },
                     zero_rhs});
    table.push_back({StatementId::L32, FamilyKind::Quintic, 1, false, std::nullopt, detail::quintic_t1,
                     [](std::uint64_t p, long r) {
                         return detail::weighted_quartic_harmonic(
                             SeriesFamily(FamilyKind::Quintic, r),
                             static_cast<unsigned long>((static_cast<long>(p) - r) / 5));
                     },
                     zero_rhs});
    table.push_back({StatementId::L33, FamilyKind::Quintic, 2, false, std::nullopt, detail::quintic_t1,
                     [](std::uint64_t p, long r) {
                         auto len = static_cast<std::uint64_t>((static_cast<long>(p) - r) / 5);
                         return harmonic_power_sum(Rational(2 * r, 5), len, 2) -
                                harmonic_power_sum(Rational(1), len, 2) +
                                Rational(2) * detail::unit_square_sum(Rational(-r, 5), p) -
                                detail::unit_square_sum(Rational(r, 10) - Rational(1, 2), p);
                     },
                     [](std::uint64_t, long r) {
                         auto len = static_cast<std::uint64_t>((1 - r) / 2);
                         return RhsForm{harmonic_power_sum(Rational(1, 2) + Rational(r, 10), len, 2), {}};
                     }});

    // Sextic lemmas, under the hypotheses of the p ≡ r (mod 3) statement.
    table.push_back({StatementId::L41, FamilyKind::Sextic, 1, false, std::nullopt, detail::sextic_second,
                     [](std::uint64_t p, long r) {
                         return weighted_series(SeriesFamily(FamilyKind::Sextic, r),
                                                static_cast<unsigned long>((static_cast<long>(p) - r) / 3));
                     },
                     zero_rhs});
    table.push_back({StatementId::L42, FamilyKind::Sextic, 1, false, std::nullopt, detail::sextic_second,
                     [](std::uint64_t p, long r) {
                         return detail::weighted_quartic_harmonic(
                             SeriesFamily(FamilyKind::Sextic, r),
                             static_cast<unsigned long>((static_cast<long>(p) - r) / 3));
                     },
                     zero_rhs});
    table.push_back({StatementId::L43, FamilyKind::Sextic, 2, false, std::nullopt, detail::sextic_second,
                     [](std::uint64_t p, long r) {
                         auto len = static_cast<std::uint64_t>((static_cast<long>(p) - r) / 3);
                         return harmonic_power_sum(Rational(2 * r, 3), len, 2) -
                                harmonic_power_sum(Rational(1), len, 2) +
                                Rational(3) * detail::unit_square_sum(Rational(-r, 3), p);
                     },
                     [](std::uint64_t, long r) {
                         auto len = static_cast<std::uint64_t>(1 - r);
                         return RhsForm{harmonic_power_sum(Rational(r, 3), len, 2), {}};
                     }});
    return table;
}

inline const StatementTable& builtin_statements() {
    static const StatementTable table = default_statements();
    return table;
}

inline const StatementDef& find_statement(const StatementTable& table, StatementId id) {
    for (const auto& def : table) {
        if (def.id == id) return def;
    }
    throw InvalidInput("statement " + statement_name(id) + " missing from table");
}

// --- enumeration -------------------------------------------------------------

struct CaseRange {
    std::uint64_t p_min = 3;
    std::uint64_t p_max = 31;
    long r_min = -9;
    long r_max = 1;
};

/// Admissible (p, r) pairs in the range, sorted by (p, r). Statements with a
/// fixed r ignore the r bounds.
inline std::vector<std::pair<std::uint64_t, long>> enumerate_cases(const StatementDef& def, const CaseRange& range) {
    std::vector<std::pair<std::uint64_t, long>> out;
    for (std::uint64_t p = std::max<std::uint64_t>(range.p_min, 3); p <= range.p_max; ++p) {
        if (!is_prime(p)) continue;
        if (def.fixed_r) {
            if (def.admissible(p, *def.fixed_r)) out.emplace_back(p, *def.fixed_r);
            continue;
        }
        for (long r = range.r_min; r <= std::min(range.r_max, 1L); ++r) {
            if (def.admissible(p, r)) out.emplace_back(p, r);
        }
    }
    return out;
}

inline std::vector<std::pair<std::uint64_t, long>> enumerate_cases(StatementId id, std::uint64_t p_max, long r_min) {
    return enumerate_cases(find_statement(builtin_statements(), id), CaseRange{3, p_max, r_min, 1});
}

// --- valuation of LHS - RHS ---------------------------------------------------

/// Largest precision the word-sized Γ_p tables support for p, capped at 12.
inline int max_gamma_precision(std::uint64_t p) {
    int n = 0;
    Integer mod(1);
    while (n < 12) {
        mod *= static_cast<unsigned long>(p);
        if (mod >= Integer(static_cast<unsigned long>(detail::kMaxWordModulus))) break;
        ++n;
    }
    return n;
}

struct DifferenceProbe {
    Valuation valuation;
    bool at_least = false;  // the true valuation may be larger
};

class CaseEvaluator {
public:
    CaseEvaluator(const StatementDef& def, std::uint64_t p, long r, const GammaProvider& provider)
        : p_(p), provider_(provider), lhs_(def.lhs(p, r)), rhs_(def.rhs(p, r)) {
        coefficient_valuation_ = padic_valuation(rhs_.coefficient, p);
    }

    bool exact() const { return rhs_.gammas.empty() || rhs_.coefficient.is_zero(); }

    /// Γ_p precision that pins the difference down to at least p^target.
    int base_precision(int target) const {
        if (exact()) return 0;
        return std::max(1L, target + std::max(0L, -coefficient_valuation_.value()));
    }

    /// ν_p(D) with the Γ_p residues taken modulo p^precision.
    DifferenceProbe at_precision(int precision) const {
        if (exact()) return {padic_valuation(lhs_ - rhs_.coefficient, p_), false};
        PadicContext ctx(p_, precision);
        const Integer& mod = ctx.modulus();
        Integer unit(1);
        for (const auto& g : rhs_.gammas) {
            Integer v = gamma_p(g.argument, ctx, provider_).value;
            if (g.exponent < 0) v = inverse_mod(v, mod);
            Integer powered;
            mpz_powm_ui(powered.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(std::labs(g.exponent)),
                        mod.get_mpz_t());
            unit = reduce_mod(unit * powered, mod);
        }
        Valuation d = padic_valuation(lhs_ - rhs_.coefficient * Rational(unit), p_);
        Valuation cap = coefficient_valuation_ + Valuation(precision);
        if (d >= cap) return {cap, true};
        return {d, false};
    }

private:
    std::uint64_t p_;
    const GammaProvider& provider_;
    Rational lhs_;
    RhsForm rhs_;
    Valuation coefficient_valuation_;
};

namespace detail {

inline long elapsed_since(std::chrono::steady_clock::time_point start) {
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
}

}  // namespace detail

/// Verdict at the statement's modulus. The reported valuation is
/// min(target, ν_p(LHS-RHS)), flagged at_least when it reaches the target.
inline CaseReport verify_case(const StatementDef& def, std::uint64_t p, long r,
                              const GammaProvider& provider = GammaProvider::shared()) {
    auto start = std::chrono::steady_clock::now();
    CaseReport report{def.id, p, r, def.target, Valuation(0)};
    if (!is_prime(p) || p < 3 || !def.admissible(p, r) || (def.fixed_r && *def.fixed_r != r)) return report;
    CaseEvaluator eval(def, p, r, provider);
    DifferenceProbe d = eval.at_precision(eval.base_precision(def.target));
    if (d.valuation >= static_cast<long>(def.target)) {
        report.valuation = Valuation(def.target);
        report.at_least = true;
        report.verdict = Verdict::Holds;
    } else {
        report.valuation = d.valuation;
        report.verdict = Verdict::Fails;
    }
    report.elapsed_ms = detail::elapsed_since(start);
    return report;
}

inline CaseReport verify_case(StatementId id, std::uint64_t p, long r) {
    return verify_case(find_statement(builtin_statements(), id), p, r);
}

inline CaseReport verify_lemma(StatementId id, std::uint64_t p, long r) {
    if (!is_lemma(id)) throw InvalidInput(statement_name(id) + " is not a lemma");
    return verify_case(id, p, r);
}

/// Exact ν_p(LHS - RHS), escalating the Γ_p precision until the difference is
/// resolved or the precision cap is reached (then at_least is set).
inline DifferenceProbe probe_valuation(const StatementDef& def, std::uint64_t p, long r,
                                       const GammaProvider& provider = GammaProvider::shared()) {
    if (!def.admissible(p, r)) throw InvalidInput("(p, r) is not admissible for " + statement_name(def.id));
    CaseEvaluator eval(def, p, r, provider);
    if (eval.exact()) return eval.at_precision(0);
    const int limit = max_gamma_precision(p);
    DifferenceProbe d;
    for (int n = std::min(eval.base_precision(def.target), limit); n <= limit; ++n) {
        d = eval.at_precision(n);
        if (!d.at_least) break;
    }
    return d;
}

inline DifferenceProbe probe_valuation(StatementId id, std::uint64_t p, long r) {
    return probe_valuation(find_statement(builtin_statements(), id), p, r);
}

// --- batch runs ----------------------------------------------------------------

struct RunOptions {
    CaseRange range;
    bool probe = false;
    unsigned jobs = 1;
};

/// Verifies every admissible case of the given statements on `jobs` workers.
/// The result is sorted by (statement, p, r) regardless of scheduling.
inline std::vector<CaseReport> run_statements(const StatementTable& table, const std::vector<StatementId>& ids,
                                              const RunOptions& options,
                                              const GammaProvider& provider = GammaProvider::shared()) {
    struct Task {
        const StatementDef* def;
        std::uint64_t p;
        long r;
    };
    std::vector<Task> tasks;
    for (auto id : ids) {
        const auto& def = find_statement(table, id);
        for (auto [p, r] : enumerate_cases(def, options.range)) tasks.push_back({&def, p, r});
    }

    std::vector<CaseReport> reports(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
            try {
                const auto& t = tasks[i];
                auto start = std::chrono::steady_clock::now();
                CaseReport rep = verify_case(*t.def, t.p, t.r, provider);
                if (options.probe) {
                    DifferenceProbe d = probe_valuation(*t.def, t.p, t.r, provider);
                    rep.valuation = d.valuation;
                    rep.at_least = d.at_least;
                    rep.verdict = d.valuation >= static_cast<long>(t.def->target) ? Verdict::Holds : Verdict::Fails;
                }
                rep.elapsed_ms = detail::elapsed_since(start);
                reports[i] = rep;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::sort(reports.begin(), reports.end());
    return reports;
}

inline std::vector<CaseReport> run_statement(StatementId id, std::uint64_t p_max, long r_min, bool probe,
                                             unsigned jobs = 1) {
    return run_statements(builtin_statements(), {id}, RunOptions{CaseRange{3, p_max, r_min, 1}, probe, jobs});
}

inline bool is_conjectural(const StatementTable& table, StatementId id) { return find_statement(table, id).conjectural; }

}  // namespace pcl
